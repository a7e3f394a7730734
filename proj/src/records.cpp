#include "mkv/records.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mkv {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

std::vector<double>& Series::column(const std::string& name) {
    for (auto& [key, values] : columns)
        if (key == name) return values;
    columns.emplace_back(name, std::vector<double>{});
    return columns.back().second;
}

const std::vector<double>& Series::column(const std::string& name) const {
    for (const auto& [key, values] : columns)
        if (key == name) return values;
    throw std::out_of_range("series has no column " + name);
}

double RunRecord::scalar(const std::string& key) const {
    for (const auto& [k, v] : summary)
        if (k == key) return v;
    throw std::out_of_range("record has no summary value " + key);
}

const FitEntry& RunRecord::fit(const std::string& metric) const {
    for (const auto& f : fits)
        if (f.metric == metric) return f;
    throw std::out_of_range("record has no fit for " + metric);
}

const Check& RunRecord::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::out_of_range("record has no check " + name);
}

bool RunRecord::all_checks_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string render_record_lines(const RunRecord& rec, bool include_timing) {
    std::ostringstream out;
    out << "event=run kind=" << rec.kind << " picture=" << rec.picture << " scenario_hash=" << std::hex
        << rec.scenario_hash << std::dec << " seed=" << rec.seed << '\n';
    if (rec.certificate) {
        out << "event=certificate";
        for (const auto& [k, v] : rec.certificate->fields()) out << ' ' << k << '=' << v;
        out << '\n';
    }
    for (const auto& f : rec.fits)
        out << "event=fit metric=" << f.metric << " rate=" << format_double(f.rate)
            << " slope=" << format_double(f.slope) << " intercept=" << format_double(f.intercept)
            << " residual=" << format_double(f.residual) << " points=" << f.points << '\n';
    if (!rec.summary.empty()) {
        out << "event=summary";
        for (const auto& [k, v] : rec.summary) out << ' ' << k << '=' << format_double(v);
        out << '\n';
    }
    for (const auto& c : rec.checks)
        out << "event=check name=" << c.name << " passed=" << format_bool(c.passed)
            << " value=" << format_double(c.value) << " threshold=" << format_double(c.threshold) << '\n';
    if (include_timing) out << "event=timing wall_clock_s=" << format_double(rec.wall_clock_s) << '\n';
    return out.str();
}

std::string render_csv(const Series& s) {
    std::ostringstream out;
    out << s.axis;
    for (const auto& [name, values] : s.columns) {
        if (values.size() != s.axis_values.size())
            throw std::logic_error("series column " + name + " length differs from axis");
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t j = 0; j < s.axis_values.size(); ++j) {
        out << format_double(s.axis_values[j]);
        for (const auto& col : s.columns) out << ',' << format_double(col.second[j]);
        out << '\n';
    }
    return out.str();
}

void write_records(const RunRecord& rec, const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    {
        std::ofstream f(p, std::ios::app);
        if (!f) throw std::runtime_error("cannot open record file " + path);
        f << render_record_lines(rec);
    }
    std::filesystem::path csv = p;
    csv.replace_extension(".csv");
    if (csv == p) csv += ".csv";
    std::ofstream f(csv, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open series file " + csv.string());
    f << render_csv(rec.series);
}

}  // namespace mkv
