#include "mhd1d/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace mhd1d {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

class KvConfig {
public:
    KvConfig(const std::string& text, std::string name) : name_(std::move(name)) {
        std::istringstream in(text);
        std::string line;
        std::string section;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#' || t[0] == ';') continue;
            if (t.front() == '[') {
                if (t.back() != ']') fail(line_no, "unterminated section header");
                section = trim(t.substr(1, t.size() - 2));
                if (section.empty()) fail(line_no, "empty section name");
                sections_[section];
                continue;
            }
            const std::size_t eq = t.find('=');
            if (eq == std::string::npos) fail(line_no, "expected key = value");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (key.empty()) fail(line_no, "empty key");
            if (section.empty()) fail(line_no, "key outside any section");
            if (sections_[section].count(key)) fail(line_no, "duplicate key '" + key + "'");
            sections_[section][key] = Entry{value, line_no};
        }
    }

    [[noreturn]] void fail(int line, const std::string& msg) const {
        throw UsageError(name_ + ":" + std::to_string(line) + ": " + msg);
    }

    bool has_section(const std::string& sec) const { return sections_.count(sec) > 0; }

    bool has(const std::string& sec, const std::string& key) const {
        auto it = sections_.find(sec);
        return it != sections_.end() && it->second.count(key) > 0;
    }

    const Entry* find(const std::string& sec, const std::string& key) const {
        auto it = sections_.find(sec);
        if (it == sections_.end()) return nullptr;
        auto jt = it->second.find(key);
        if (jt == it->second.end()) return nullptr;
        jt->second.used = true;
        return &jt->second;
    }

    std::string get_string(const std::string& sec, const std::string& key,
                           const std::string& fallback) const {
        const Entry* e = find(sec, key);
        return e ? e->value : fallback;
    }

    std::string require_string(const std::string& sec, const std::string& key) const {
        const Entry* e = find(sec, key);
        if (!e) throw UsageError(name_ + ": missing required key [" + sec + "] " + key);
        return e->value;
    }

    double parse_double(const Entry& e) const {
        try {
            std::size_t pos = 0;
            const double v = std::stod(e.value, &pos);
            if (trim(e.value.substr(pos)).empty()) return v;
        } catch (const std::exception&) {
        }
        fail(e.line, "expected a number, got '" + e.value + "'");
    }

    double get_double(const std::string& sec, const std::string& key, double fallback) const {
        const Entry* e = find(sec, key);
        return e ? parse_double(*e) : fallback;
    }

    double require_double(const std::string& sec, const std::string& key) const {
        const Entry* e = find(sec, key);
        if (!e) throw UsageError(name_ + ": missing required key [" + sec + "] " + key);
        return parse_double(*e);
    }

    int get_int(const std::string& sec, const std::string& key, int fallback) const {
        const Entry* e = find(sec, key);
        if (!e) return fallback;
        const double v = parse_double(*e);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) fail(e->line, "expected an integer");
        return i;
    }

    int require_int(const std::string& sec, const std::string& key) const {
        const Entry* e = find(sec, key);
        if (!e) throw UsageError(name_ + ": missing required key [" + sec + "] " + key);
        const double v = parse_double(*e);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) fail(e->line, "expected an integer");
        return i;
    }

    bool get_bool(const std::string& sec, const std::string& key, bool fallback) const {
        const Entry* e = find(sec, key);
        if (!e) return fallback;
        std::string v = e->value;
        std::transform(v.begin(), v.end(), v.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (v == "true" || v == "on" || v == "1") return true;
        if (v == "false" || v == "off" || v == "0") return false;
        fail(e->line, "expected a boolean");
    }

    std::vector<double> get_list(const std::string& sec, const std::string& key) const {
        const Entry* e = find(sec, key);
        if (!e) return {};
        std::vector<double> out;
        std::istringstream in(e->value);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (item.empty()) fail(e->line, "empty list element");
            try {
                std::size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (!trim(item.substr(pos)).empty()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                fail(e->line, "expected a number in list, got '" + item + "'");
            }
        }
        return out;
    }

    void check_unused(bool strict) const {
        if (!strict) return;
        for (const auto& [sec, entries] : sections_) {
            for (const auto& [key, entry] : entries) {
                if (!entry.used)
                    throw UsageError(name_ + ":" + std::to_string(entry.line) +
                                     ": unknown key '" + key + "' in section [" + sec + "]");
            }
        }
    }

    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

InitialData parse_initial(const KvConfig& kv) {
    const std::string kind = kv.get_string("initial", "kind", "constant");
    if (kind == "constant") {
        return InitialData::constant(kv.get_double("initial", "rho", 1.0));
    }
    if (kind == "smooth") {
        const std::string shape = kv.get_string("initial", "b_shape", "sin_pi");
        InitialData::BShape bs;
        if (shape == "sin_pi") bs = InitialData::BShape::sin_pi;
        else if (shape == "sin_2pi") bs = InitialData::BShape::sin_2pi;
        else if (shape == "cos_pi") bs = InitialData::BShape::cos_pi;
        else throw UsageError(kv.name() + ": [initial] b_shape must be sin_pi, sin_2pi or cos_pi");
        return InitialData::smooth(kv.get_double("initial", "rho_base", 1.0),
                                   kv.get_double("initial", "rho_amp", 0.0),
                                   kv.get_double("initial", "u_amp", 0.0),
                                   kv.get_double("initial", "b_amp", 0.0), bs);
    }
    throw UsageError(kv.name() + ": [initial] kind must be constant or smooth");
}

BoundaryMagnetic parse_boundary(const KvConfig& kv) {
    const std::string kind = kv.get_string("boundary", "kind", "none");
    if (kind == "none") return BoundaryMagnetic::none();
    if (kind == "constant")
        return BoundaryMagnetic::constant(kv.require_double("boundary", "c1"),
                                          kv.require_double("boundary", "c2"));
    if (kind == "ramp")
        return BoundaryMagnetic::ramp(kv.require_double("boundary", "c1"),
                                      kv.require_double("boundary", "c2"),
                                      kv.require_double("boundary", "t_rise"));
    if (kind == "sinusoid")
        return BoundaryMagnetic::sinusoid(
            kv.require_double("boundary", "a1"), kv.require_double("boundary", "omega1"),
            kv.require_double("boundary", "a2"), kv.require_double("boundary", "omega2"));
    throw UsageError(kv.name() + ": [boundary] kind must be none, constant, sinusoid or ramp");
}

ScenarioConfig parse_scenario(const KvConfig& kv, bool allow_nu) {
    ScenarioConfig cfg;
    cfg.params = FluidParams(kv.get_double("fluid", "A", 1.0),
                             kv.get_double("fluid", "gamma", 1.4),
                             kv.get_double("fluid", "lambda", 1.0));
    if (allow_nu) {
        cfg.nu = kv.get_double("fluid", "nu", 0.0);
    } else if (kv.has("fluid", "nu")) {
        throw UsageError(kv.name() +
                         ": [fluid] nu must not be set for a ladder study (set nu_ladder)");
    }
    cfg.grid_n = kv.require_int("grid", "n");
    cfg.t_final = kv.require_double("time", "T");
    cfg.cfl = kv.get_double("time", "cfl", 0.8);
    cfg.initial = parse_initial(kv);
    cfg.boundary_b = parse_boundary(kv);

    cfg.snapshot_times = kv.get_list("time", "snapshot_times");
    const int count = kv.get_int("time", "snapshot_count", 0);
    if (count > 0) {
        if (!cfg.snapshot_times.empty())
            throw UsageError(kv.name() + ": give snapshot_times or snapshot_count, not both");
        for (int i = 1; i <= count; ++i)
            cfg.snapshot_times.push_back(cfg.t_final * i / count);
        cfg.snapshot_times.back() = cfg.t_final;
    }
    return cfg;
}

std::string describe(const ParsedConfig& parsed) {
    std::ostringstream os;
    switch (parsed.kind) {
        case ParsedConfig::Kind::solve: {
            const ScenarioConfig& c = parsed.scenario;
            os << (c.nu > 0.0 ? "resistive" : "non-resistive") << " run, nu=" << c.nu
               << ", n=" << c.grid_n << ", T=" << c.t_final;
            break;
        }
        case ParsedConfig::Kind::sweep: {
            os << "vanishing-resistivity sweep, " << parsed.sweep.nu_ladder.size()
               << " ladder entries, n=" << parsed.sweep.base.grid_n
               << ", T=" << parsed.sweep.base.t_final;
            break;
        }
        case ParsedConfig::Kind::layer: {
            os << "boundary-layer study, " << parsed.layer.nu_ladder.size()
               << " ladder entries, n=" << parsed.layer.grid_n
               << ", T=" << parsed.layer.t_final << ", delta=nu^" << parsed.layer.delta_p;
            break;
        }
    }
    return os.str();
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text, bool strict, const std::string& name) {
    const KvConfig kv(text, name);
    ParsedConfig parsed;

    const std::string kind = kv.get_string("study", "kind", "solve");
    if (kind == "solve") {
        parsed.kind = ParsedConfig::Kind::solve;
        parsed.scenario = parse_scenario(kv, /*allow_nu=*/true);
        parsed.scenario.validate();
    } else if (kind == "sweep") {
        parsed.kind = ParsedConfig::Kind::sweep;
        ScenarioConfig base = parse_scenario(kv, /*allow_nu=*/false);
        std::vector<double> ladder = kv.get_list("study", "nu_ladder");
        if (ladder.empty())
            throw UsageError(kv.name() + ": [study] nu_ladder is required for a sweep");
        parsed.sweep = SweepSpec::from_base(std::move(base), std::move(ladder));
        const int cc = kv.get_int("study", "comparison_count", parsed.sweep.comparison_count);
        if (cc != parsed.sweep.comparison_count) {
            if (cc < 1) throw UsageError(kv.name() + ": comparison_count must be >= 1");
            parsed.sweep.comparison_count = cc;
            parsed.sweep.comparison_times.clear();
            for (int i = 1; i <= cc; ++i)
                parsed.sweep.comparison_times.push_back(parsed.sweep.base.t_final * i / cc);
            parsed.sweep.comparison_times.back() = parsed.sweep.base.t_final;
        }
        parsed.sweep.estimate_floor = kv.get_bool("study", "estimate_floor", true);
        parsed.sweep.validate();
    } else if (kind == "layer") {
        parsed.kind = ParsedConfig::Kind::layer;
        ScenarioConfig base = parse_scenario(kv, /*allow_nu=*/false);
        if (base.initial.kind != InitialData::Kind::constant)
            throw UsageError(kv.name() + ": layer studies start from (rho_bar, 0, 0); "
                                         "[initial] kind must be constant");
        LayerScenario& scn = parsed.layer;
        scn.params = base.params;
        scn.rho_bar = base.initial.rho_base;
        scn.boundary_b = base.boundary_b;
        scn.grid_n = base.grid_n;
        scn.t_final = base.t_final;
        scn.cfl = base.cfl;
        scn.nu_ladder = kv.get_list("study", "nu_ladder");
        std::sort(scn.nu_ladder.begin(), scn.nu_ladder.end(), std::greater<>());
        scn.delta_p = kv.get_double("study", "delta_p", 0.4);
        scn.epsilon_thickness = kv.get_double("study", "epsilon", 0.01);
        if (scn.nu_ladder.empty())
            throw UsageError(kv.name() + ": [study] nu_ladder is required for a layer study");
        parsed.layer.validate();
    } else {
        throw UsageError(kv.name() + ": [study] kind must be solve, sweep or layer");
    }

    kv.check_unused(strict);
    parsed.description = describe(parsed);
    return parsed;
}

ParsedConfig parse_config(const std::string& path, bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("config file not found: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), strict, path);
}

}  // namespace mhd1d
