#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mkv/certify.hpp"

namespace mkv {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
std::string format_bool(bool b);

/// Columnar time series; the first CSV column is `axis` (usually "t").
struct Series {
    std::string axis = "t";
    std::vector<double> axis_values;
    std::vector<std::pair<std::string, std::vector<double>>> columns;

    std::vector<double>& column(const std::string& name);
    const std::vector<double>& column(const std::string& name) const;
};

struct FitEntry {
    std::string metric;
    double rate = 0.0;  // -slope for decay fits, slope for power laws
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    int points = 0;
};

struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
};

struct RunRecord {
    std::string kind;
    std::string picture;  // "forward-autonomous", "forward-periodic", ...
    std::uint64_t scenario_hash = 0;
    std::uint64_t seed = 0;
    std::optional<Certificate> certificate;
    std::vector<FitEntry> fits;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<Check> checks;
    Series series;
    double wall_clock_s = 0.0;

    void add_summary(std::string key, double value) { summary.emplace_back(std::move(key), value); }
    void add_check(std::string name, bool passed, double value, double threshold) {
        checks.push_back({std::move(name), passed, value, threshold});
    }

    double scalar(const std::string& key) const;
    const FitEntry& fit(const std::string& metric) const;
    const Check& check(const std::string& name) const;
    bool all_checks_passed() const;
};

/// One `event=... key=value ...` line per event. Timing is the last line and optional.
std::string render_record_lines(const RunRecord& rec, bool include_timing = true);
/// CSV with header `axis,col1,col2,...`.
std::string render_csv(const Series& s);

/// Appends the record lines to `path` and writes the series next to it with a .csv extension.
void write_records(const RunRecord& rec, const std::string& path);

}  // namespace mkv
