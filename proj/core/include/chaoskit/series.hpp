#pragma once

#include <string>
#include <vector>

namespace chaoskit::embedding {

/// Scalar time series, one observation per sample.
struct Series {
    std::vector<double> values;
    std::string label;

    std::size_t size() const { return values.size(); }
};

/// CSV with one value per row and an optional single-field header line. A
/// non-numeric first line becomes the series label; any other unparsable row is
/// a param_error naming the line. Series shorter than 2 values are rejected.
Series load_series_csv(const std::string& path);

/// Writes the label (or "value") as header, then one value per row, 17 significant
/// digits. load_series_csv(save_series_csv(s)) reproduces values exactly.
void save_series_csv(const Series& s, const std::string& path);

}  // namespace chaoskit::embedding
