#include "ladderlab/config.hpp"

#include <fstream>
#include <sstream>

#include "ladderlab/errors.hpp"

namespace ladderlab {

void EngineConfig::validate() const {
    // collect every problem so a bad config is rejected with one message
    std::string issues;
    auto flag = [&](bool bad, const char* what) {
        if (bad) {
            if (!issues.empty()) issues += "; ";
            issues += what;
        }
    };
    flag(t_min < kHardTMin, "t_min below the hard floor 10");
    flag(rs_terms < 1 || rs_terms > 5, "rs_terms must be in [1,5]");
    flag(k_max < 0 || k_max > 32, "k_max must be in [0,32]");
    flag(newton_tol <= 0.0, "newton_tol must be positive");
    flag(rel_tol <= 0.0 || abs_tol <= 0.0, "quadrature tolerances must be positive");
    flag(min_panels_per_oscillation < 4, "min_panels_per_oscillation must be >= 4");
    flag(max_depth < 4, "max_depth must be >= 4");
    flag(stride <= 0.0 || substride <= 0.0 || substride > stride,
         "stride/substride layout invalid");
    flag(samples_per_decade < 1, "samples_per_decade must be >= 1");
    flag(kappa <= 0.0, "kappa must be positive");
    flag(degenerate_floor <= 0.0, "degenerate_floor must be positive");
    flag(u_default <= 0.0, "u_default must be positive");
    if (!issues.empty()) throw DomainError("invalid config: " + issues);
}

namespace {

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw DomainError("config key '" + key + "': cannot parse '" + v + "'");
    }
    if (pos != v.size())
        throw DomainError("config key '" + key + "': trailing junk in '" + v + "'");
    return x;
}

long long parse_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw DomainError("config key '" + key + "': cannot parse '" + v + "'");
    }
    if (pos != v.size())
        throw DomainError("config key '" + key + "': trailing junk in '" + v + "'");
    return x;
}

}  // namespace

void apply_config_key(EngineConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "t_min") cfg.t_min = parse_double(key, value);
    else if (key == "rs_terms") cfg.rs_terms = static_cast<int>(parse_int(key, value));
    else if (key == "c0") cfg.c0 = parse_double(key, value);
    else if (key == "k_max") cfg.k_max = static_cast<int>(parse_int(key, value));
    else if (key == "newton_tol") cfg.newton_tol = parse_double(key, value);
    else if (key == "u_default") cfg.u_default = parse_double(key, value);
    else if (key == "rel_tol") cfg.rel_tol = parse_double(key, value);
    else if (key == "abs_tol") cfg.abs_tol = parse_double(key, value);
    else if (key == "min_panels_per_oscillation")
        cfg.min_panels_per_oscillation = static_cast<int>(parse_int(key, value));
    else if (key == "max_depth") cfg.max_depth = static_cast<int>(parse_int(key, value));
    else if (key == "stride") cfg.stride = parse_double(key, value);
    else if (key == "substride") cfg.substride = parse_double(key, value);
    else if (key == "samples_per_decade")
        cfg.samples_per_decade = static_cast<int>(parse_int(key, value));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "kappa") cfg.kappa = parse_double(key, value);
    else if (key == "degenerate_floor") cfg.degenerate_floor = parse_double(key, value);
    else throw DomainError("unknown config key '" + key + "'");
}

EngineConfig load_config_file(const std::filesystem::path& path, EngineConfig base) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError(path.string() + ":" + std::to_string(lineno) +
                              ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            auto lb = s.find_first_not_of(" \t");
            auto le = s.find_last_not_of(" \t");
            s = (lb == std::string::npos) ? std::string() : s.substr(lb, le - lb + 1);
        };
        trim(key);
        trim(val);
        apply_config_key(base, key, val);
    }
    base.validate();
    return base;
}

}  // namespace ladderlab
