#include "mkv/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "mkv/records.hpp"

namespace mkv {

ScenarioError::ScenarioError(int line_, const std::string& key_, const std::string& message)
    : std::runtime_error(line_ > 0 ? "scenario line " + std::to_string(line_) + ", key '" + key_ + "': " + message
                                   : "scenario key '" + key_ + "': " + message),
      line(line_), key(key_) {}

std::string to_string(InitialCondition::Kind kind) {
    switch (kind) {
    case InitialCondition::Kind::zero: return "zero";
    case InitialCondition::Kind::constant: return "constant";
    case InitialCondition::Kind::gaussian: return "gaussian";
    case InitialCondition::Kind::deterministic: return "deterministic";
    }
    return "?";
}

InitialCondition InitialBlock::condition() const {
    InitialCondition ic;
    ic.kind = kind;
    ic.scale = scale;
    ic.radius = radius;
    ic.stream = stream;
    return ic;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
bool parse_number(const std::string& text, T& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

struct Field {
    std::string section;
    std::string key;
    std::function<std::string()> get;
    std::function<bool(const std::string&)> set;
};

Field real(std::string section, std::string key, double& ref) {
    return {std::move(section), std::move(key), [&ref] { return format_double(ref); },
            [&ref](const std::string& v) { return parse_number(v, ref); }};
}

Field integer(std::string section, std::string key, int& ref) {
    return {std::move(section), std::move(key), [&ref] { return std::to_string(ref); },
            [&ref](const std::string& v) { return parse_number(v, ref); }};
}

Field unsigned64(std::string section, std::string key, std::uint64_t& ref) {
    return {std::move(section), std::move(key), [&ref] { return std::to_string(ref); },
            [&ref](const std::string& v) { return parse_number(v, ref); }};
}

Field unsigned32(std::string section, std::string key, std::uint32_t& ref) {
    return {std::move(section), std::move(key), [&ref] { return std::to_string(ref); },
            [&ref](const std::string& v) { return parse_number(v, ref); }};
}

Field boolean(std::string section, std::string key, bool& ref) {
    return {std::move(section), std::move(key), [&ref] { return format_bool(ref); },
            [&ref](const std::string& v) {
                if (v == "true" || v == "1") return ref = true, true;
                if (v == "false" || v == "0") return ref = false, true;
                return false;
            }};
}

Field text(std::string section, std::string key, std::string& ref) {
    return {std::move(section), std::move(key), [&ref] { return ref; }, [&ref](const std::string& v) {
                if (v.find_first_of(" \t") != std::string::npos) return false;
                ref = v;
                return true;
            }};
}

template <class T>
Field list(std::string section, std::string key, std::vector<T>& ref) {
    return {std::move(section), std::move(key),
            [&ref] {
                std::string out;
                for (std::size_t j = 0; j < ref.size(); ++j) {
                    if (j) out += ',';
                    if constexpr (std::is_floating_point_v<T>)
                        out += format_double(ref[j]);
                    else
                        out += std::to_string(ref[j]);
                }
                return out;
            },
            [&ref](const std::string& v) {
                std::vector<T> parsed;
                std::stringstream ss(v);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    T x{};
                    if (!parse_number(trim(item), x)) return false;
                    parsed.push_back(x);
                }
                ref = std::move(parsed);
                return true;
            }};
}

Field ic_kind(std::string section, InitialCondition::Kind& ref) {
    return {std::move(section), "kind", [&ref] { return to_string(ref); }, [&ref](const std::string& v) {
                for (auto k : {InitialCondition::Kind::zero, InitialCondition::Kind::constant,
                               InitialCondition::Kind::gaussian})
                    if (v == to_string(k)) return ref = k, true;
                return false;
            }};
}

std::vector<Field> fields_of(ScenarioConfig& sc) {
    auto& s = sc.solver.solver;
    auto& b = sc.benchmark;
    auto& e = sc.experiment;
    std::vector<Field> f{
        real("solver", "dt", s.dt),
        integer("solver", "half_width", s.half_width),
        integer("solver", "particles", s.particles),
        real("solver", "delay", s.delay),
        real("solver", "t_start", s.t_start),
        real("solver", "horizon", sc.solver.horizon),
        unsigned64("solver", "seed", s.seed),
        real("model", "nu", sc.model.nu),
        real("model", "lambda", sc.model.lambda),
        real("model", "c1", sc.model.c1),
        real("benchmark", "alpha", b.alpha),
        real("benchmark", "beta", b.beta),
        real("benchmark", "p", b.p),
        real("benchmark", "psi_bar", b.psi_bar),
        real("benchmark", "chi_bar", b.chi_bar),
        real("benchmark", "kappa_bar", b.kappa_bar),
        integer("benchmark", "kappa_radius", b.kappa_radius),
        real("benchmark", "g_bar", b.g_bar),
        integer("benchmark", "g_radius", b.g_radius),
        real("benchmark", "q", b.q),
        boolean("benchmark", "periodic_forcing", b.periodic_forcing),
        boolean("benchmark", "mean_field", b.mean_field),
        real("perturbation", "rho_bar", sc.perturbation.rho_bar),
        real("perturbation", "tau_bar", sc.perturbation.tau_bar),
    };
    for (auto* ic : {&sc.initial_a, &sc.initial_b}) {
        const std::string sec = ic == &sc.initial_a ? "initial_a" : "initial_b";
        f.push_back(ic_kind(sec, ic->kind));
        f.push_back(real(sec, "scale", ic->scale));
        f.push_back(integer(sec, "radius", ic->radius));
        f.push_back(unsigned32(sec, "stream", ic->stream));
    }
    f.push_back(text("experiment", "kind", e.kind));
    f.push_back(integer("experiment", "record_every", e.record_every));
    f.push_back(real("experiment", "fit_start", e.fit_start));
    f.push_back(real("experiment", "fit_end", e.fit_end));
    f.push_back(list("experiment", "eps_list", e.eps_list));
    f.push_back(list("experiment", "tail_indices", e.tail_indices));
    f.push_back(real("experiment", "agreement_tol", e.agreement_tol));
    f.push_back(real("experiment", "agreement_abs_tol", e.agreement_abs_tol));
    f.push_back(integer("experiment", "picard_iterations", e.picard_iterations));
    f.push_back(text("output", "path", sc.output_path));
    return f;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& input) {
    ScenarioConfig sc;
    auto fields = fields_of(sc);
    std::istringstream in(input);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ScenarioError(line_no, line, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (const auto& fd : fields) known = known || fd.section == section;
            if (!known) throw ScenarioError(line_no, section, "unknown section");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ScenarioError(line_no, line, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ScenarioError(line_no, key, "key outside any section");
        Field* match = nullptr;
        for (auto& fd : fields)
            if (fd.section == section && fd.key == key) match = &fd;
        if (!match) throw ScenarioError(line_no, section + "." + key, "unknown key");
        if (!match->set(value)) throw ScenarioError(line_no, section + "." + key, "malformed value '" + value + "'");
    }
    sc.validate();
    return sc;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read scenario " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

std::string render_scenario(const ScenarioConfig& sc_in) {
    ScenarioConfig sc = sc_in;
    std::string out;
    std::string section;
    for (const auto& fd : fields_of(sc)) {
        if (fd.section != section) {
            if (!section.empty()) out += '\n';
            section = fd.section;
            out += '[' + section + "]\n";
        }
        out += fd.key + " = " + fd.get() + '\n';
    }
    return out;
}

std::uint64_t scenario_hash(const ScenarioConfig& sc) {
    ScenarioConfig copy = sc;
    copy.output_path.clear();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : render_scenario(copy)) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

void ScenarioConfig::validate() const {
    try {
        solver.solver.validate();
        benchmark.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(0, "solver/benchmark", e.what());
    }
    if (!(solver.horizon >= solver.solver.t_start)) throw ScenarioError(0, "solver.horizon", "must be >= t_start");
    if (!(model.lambda > 0.0)) throw ScenarioError(0, "model.lambda", "must be > 0");
    if (!(model.nu >= 0.0)) throw ScenarioError(0, "model.nu", "must be >= 0");
    if (!(model.c1 >= 0.0)) throw ScenarioError(0, "model.c1", "must be >= 0");
    if (experiment.record_every < 1) throw ScenarioError(0, "experiment.record_every", "must be >= 1");
    if (!(experiment.fit_end > experiment.fit_start)) throw ScenarioError(0, "experiment.fit_end", "must exceed fit_start");
    for (double eps : experiment.eps_list)
        if (!(eps >= 0.0 && eps < 1.0)) throw ScenarioError(0, "experiment.eps_list", "entries must lie in [0, 1)");
    // tail indices only bind the lattice when a tails run will use them
    for (int n : experiment.tail_indices)
        if (n < 0 || (experiment.kind == "tails" && n > solver.solver.half_width + 1))
            throw ScenarioError(0, "experiment.tail_indices", "entries must lie in [0, I+1]");
    if (!(experiment.agreement_tol > 0.0)) throw ScenarioError(0, "experiment.agreement_tol", "must be > 0");
    if (!(experiment.agreement_abs_tol >= 0.0)) throw ScenarioError(0, "experiment.agreement_abs_tol", "must be >= 0");
    if (experiment.picard_iterations < 0) throw ScenarioError(0, "experiment.picard_iterations", "must be >= 0");
    if (!(perturbation.rho_bar >= 0.0 && perturbation.tau_bar >= 0.0))
        throw ScenarioError(0, "perturbation", "weights must be >= 0");
}

}  // namespace mkv
