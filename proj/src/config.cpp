#include "qhmhd/config.hpp"

#include <fstream>
#include <sstream>

namespace qhmhd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& src, int line, const std::string& what) {
    throw ConfigError(src + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& src, int line, const std::string& key,
                    const std::string& value) {
    if (value == "inf" || value == "infinity") return kInf;
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(src, line, "key '" + key + "': cannot parse number from '" + value + "'");
    }
}

long long parse_int(const std::string& src, int line, const std::string& key,
                    const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(src, line, "key '" + key + "': cannot parse integer from '" + value + "'");
    }
}

CoefFunction::Family parse_coef_family(const std::string& src, int line, const std::string& key,
                                       const std::string& v) {
    if (v == "constant") return CoefFunction::Family::constant;
    if (v == "affine") return CoefFunction::Family::affine;
    if (v == "holder") return CoefFunction::Family::holder;
    fail(src, line, "key '" + key + "': unknown coefficient family '" + v +
                        "' (constant|affine|holder)");
}

}  // namespace

const char* to_string(ExperimentConfig::SystemTag tag) {
    switch (tag) {
        case ExperimentConfig::SystemTag::primitive: return "primitive";
        case ExperimentConfig::SystemTag::viscous_limit: return "viscous-limit";
        case ExperimentConfig::SystemTag::ideal_limit: return "ideal-limit";
        case ExperimentConfig::SystemTag::elsasser: return "elsasser";
    }
    return "unknown";
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& src) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find_first_of("#;");
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') fail(src, line, "malformed section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "experiment" && section != "params" && section != "initial" &&
                section != "sweep" && section != "besov" && section != "output")
                fail(src, line, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(src, line, "expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty()) fail(src, line, "empty key or value");
        if (section.empty()) fail(src, line, "key '" + key + "' appears before any section");

        if (section == "experiment") {
            if (key == "system") {
                if (value == "primitive") cfg.system = ExperimentConfig::SystemTag::primitive;
                else if (value == "viscous-limit") cfg.system = ExperimentConfig::SystemTag::viscous_limit;
                else if (value == "ideal-limit") cfg.system = ExperimentConfig::SystemTag::ideal_limit;
                else if (value == "elsasser") cfg.system = ExperimentConfig::SystemTag::elsasser;
                else fail(src, line, "unknown system '" + value + "'");
            } else if (key == "n") cfg.n = static_cast<int>(parse_int(src, line, key, value));
            else if (key == "dt") cfg.dt = parse_double(src, line, key, value);
            else if (key == "cfl") cfg.cfl = parse_double(src, line, key, value);
            else if (key == "t_end") cfg.t_end = parse_double(src, line, key, value);
            else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(parse_int(src, line, key, value));
                cfg.seed_set = true;
            } else fail(src, line, "unknown key '" + key + "' in section [experiment]");
        } else if (section == "params") {
            if (key == "eps") cfg.params.eps = parse_double(src, line, key, value);
            else if (key == "h_family") {
                if (value == "constant") cfg.params.h_family = PhysParams::HFamily::constant_one;
                else if (value == "power") cfg.params.h_family = PhysParams::HFamily::power;
                else if (value == "zero") cfg.params.h_family = PhysParams::HFamily::zero;
                else fail(src, line, "unknown h family '" + value + "' (constant|power|zero)");
            } else if (key == "h_exponent") cfg.params.h_exponent = parse_double(src, line, key, value);
            else if (key == "nu_family") cfg.params.nu.family = parse_coef_family(src, line, key, value);
            else if (key == "nu_floor") cfg.params.nu.floor_value = parse_double(src, line, key, value);
            else if (key == "nu_slope") cfg.params.nu.slope = parse_double(src, line, key, value);
            else if (key == "nu_gamma") cfg.params.nu.gamma = parse_double(src, line, key, value);
            else if (key == "mu_family") cfg.params.mu.family = parse_coef_family(src, line, key, value);
            else if (key == "mu_floor") cfg.params.mu.floor_value = parse_double(src, line, key, value);
            else if (key == "mu_slope") cfg.params.mu.slope = parse_double(src, line, key, value);
            else if (key == "mu_gamma") cfg.params.mu.gamma = parse_double(src, line, key, value);
            else fail(src, line, "unknown key '" + key + "' in section [params]");
        } else if (section == "initial") {
            if (key == "kind") {
                if (value == "zero") cfg.initial.kind = InitialSpec::Kind::zero;
                else if (value == "random") cfg.initial.kind = InitialSpec::Kind::random;
                else if (value == "taylor-green") cfg.initial.kind = InitialSpec::Kind::taylor_green;
                else if (value == "shear") cfg.initial.kind = InitialSpec::Kind::shear;
                else fail(src, line, "unknown initial kind '" + value + "'");
            } else if (key == "band_lo") cfg.initial.band_lo = static_cast<int>(parse_int(src, line, key, value));
            else if (key == "band_hi") cfg.initial.band_hi = static_cast<int>(parse_int(src, line, key, value));
            else if (key == "amp_r") cfg.initial.amp_r = parse_double(src, line, key, value);
            else if (key == "amp_u") cfg.initial.amp_u = parse_double(src, line, key, value);
            else if (key == "amp_b") cfg.initial.amp_b = parse_double(src, line, key, value);
            else fail(src, line, "unknown key '" + key + "' in section [initial]");
        } else if (section == "sweep") {
            if (key == "scenario") {
                if (value == "viscous") cfg.scenario = Scenario::viscous;
                else if (value == "ideal") cfg.scenario = Scenario::ideal;
                else fail(src, line, "unknown scenario '" + value + "' (viscous|ideal)");
                cfg.has_sweep = true;
            } else if (key == "eps_list") {
                cfg.eps_list.clear();
                std::istringstream ls(value);
                std::string item;
                while (std::getline(ls, item, ','))
                    cfg.eps_list.push_back(parse_double(src, line, key, trim(item)));
                cfg.has_sweep = true;
            } else fail(src, line, "unknown key '" + key + "' in section [sweep]");
        } else if (section == "besov") {
            if (key == "s") cfg.besov.s = parse_double(src, line, key, value);
            else if (key == "p") cfg.besov.p = parse_double(src, line, key, value);
            else if (key == "r") cfg.besov.r = parse_double(src, line, key, value);
            else fail(src, line, "unknown key '" + key + "' in section [besov]");
        } else if (section == "output") {
            if (key == "dir") cfg.out_dir = value;
            else fail(src, line, "unknown key '" + key + "' in section [output]");
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void ExperimentConfig::validate() const {
    if (n < 8 || n % 2 != 0) throw ConfigError("n must be even and >= 8");
    if (dt <= 0.0) throw ConfigError("dt must be positive");
    if (cfl <= 0.0 || cfl > 1.0) throw ConfigError("cfl must lie in (0,1]");
    if (t_end < 0.0) throw ConfigError("t_end must be nonnegative");
    if (initial.kind == InitialSpec::Kind::random && !seed_set)
        throw ConfigError("seed is mandatory when random initial data is requested");
    try {
        params.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    if (has_sweep) {
        if (eps_list.size() < 2) throw ConfigError("sweep needs at least two eps values");
        for (std::size_t i = 1; i < eps_list.size(); ++i)
            if (!(eps_list[i] < eps_list[i - 1]))
                throw ConfigError("sweep eps_list must be strictly decreasing");
    }
}

}  // namespace qhmhd
