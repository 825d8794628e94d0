#include "ladderlab/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ladderlab/errors.hpp"
#include "ladderlab/hl_store.hpp"

namespace ladderlab {

namespace {

std::string levels_tag(const std::vector<int>& ks) {
    std::string s;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (i) s += '|';
        s += std::to_string(ks[i]);
    }
    return s;
}

}  // namespace

std::string factorization_csv(const std::vector<FactorizationReport>& reports) {
    std::string out = "f_id,k,L,U,alpha0,residual_exact,deviation_zeta,min_zeta_beta\n";
    for (const auto& r : reports) {
        out += r.f_id;
        out += ',' + std::to_string(r.k);
        out += ',' + format_g15(r.T / kPi);
        out += ',' + format_g15(r.U);
        out += ',' + format_g15(r.alpha0);
        out += ',' + format_g15(r.residual_exact);
        out += ',' + format_g15(r.deviation_zeta);
        out += ',' + format_g15(r.min_zeta_beta);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const ConvergenceSweep& sw) {
    std::string out = "formula,variant,U,levels,L,lhs,rhs,ratio\n";
    const std::string tag = levels_tag(sw.levels);
    for (const auto& pt : sw.points) {
        if (pt.failed) continue;
        out += sweep_formula_name(sw.formula);
        out += ',';
        out += variant_name(sw.variant);
        out += ',' + format_g15(sw.U);
        out += ',' + tag;
        out += ',' + format_g15(pt.L);
        out += ',' + format_g15(pt.report.lhs);
        out += ',' + format_g15(pt.report.rhs);
        out += ',' + format_g15(pt.report.ratio);
        out += '\n';
    }
    return out;
}

std::string sweep_json(const ConvergenceSweep& sw) {
    nlohmann::ordered_json j;
    j["formula"] = sweep_formula_name(sw.formula);
    j["variant"] = variant_name(sw.variant);
    j["U"] = sw.U;
    j["levels"] = sw.levels;
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& pt : sw.points) {
        nlohmann::ordered_json p;
        p["L"] = pt.L;
        if (pt.failed) {
            p["failed"] = true;
            p["error"] = pt.error;
        } else {
            p["lhs"] = pt.report.lhs;
            p["rhs"] = pt.report.rhs;
            p["ratio"] = pt.report.ratio;
        }
        j["points"].push_back(std::move(p));
    }
    j["decade_medians"] = nlohmann::ordered_json::object();
    for (const auto& [dec, med] : sw.decade_medians)
        j["decade_medians"][std::to_string(dec)] = med;
    j["verdict"] = sw.verdict;
    return j.dump(2) + "\n";
}

std::vector<SweepCsvRow> parse_sweep_csv(const std::string& text) {
    std::vector<SweepCsvRow> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        SweepCsvRow r;
        auto next = [&](std::string& dst) {
            if (!std::getline(ls, field, ',')) throw IoError("sweep csv: short row");
            dst = field;
        };
        std::string num;
        next(r.formula);
        next(r.variant);
        next(num); r.U = std::strtod(num.c_str(), nullptr);
        next(r.levels);
        next(num); r.L = std::strtod(num.c_str(), nullptr);
        next(num); r.lhs = std::strtod(num.c_str(), nullptr);
        next(num); r.rhs = std::strtod(num.c_str(), nullptr);
        next(num); r.ratio = std::strtod(num.c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (!path.parent_path().empty())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out.good()) throw IoError("short write to " + path.string());
}

void write_sidecar(const std::filesystem::path& dir, const std::string& command_line) {
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                          now.time_since_epoch()).count();
    nlohmann::ordered_json j;
    j["unix_time"] = secs;
    j["command"] = command_line;
    write_text(dir / "run_meta.json", j.dump(2) + "\n");
}

}  // namespace ladderlab
