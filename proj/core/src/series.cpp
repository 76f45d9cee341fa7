#include "chaoskit/series.hpp"

#include <cstdlib>
#include <fstream>

#include "chaoskit/common.hpp"

namespace chaoskit::embedding {

Series load_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw param_error("cannot open: " + path);
    Series s;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const char* cs = line.c_str();
        char* end = nullptr;
        double v = std::strtod(cs, &end);
        if (end == cs || *end != '\0') {
            if (line_no == 1) {
                s.label = line;
                continue;
            }
            throw param_error(path + ": line " + std::to_string(line_no) +
                              ": cannot parse value '" + line + "'");
        }
        s.values.push_back(v);
    }
    if (s.values.size() < 2)
        throw param_error(path + ": series must contain at least 2 values");
    return s;
}

void save_series_csv(const Series& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw param_error("cannot open for writing: " + path);
    out << (s.label.empty() ? "value" : s.label) << "\n";
    for (double v : s.values) out << fmt17(v) << "\n";
    if (!out) throw param_error("write failed: " + path);
}

}  // namespace chaoskit::embedding
