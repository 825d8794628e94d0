#include "ladderlab/hl_store.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ladderlab/errors.hpp"
#include "ladderlab/oracle.hpp"
#include "ladderlab/quadrature.hpp"
#include "ladderlab/zeta.hpp"

namespace ladderlab {

namespace {

// 16-point Gauss-Legendre rule on [-1,1], generated once by Newton iteration
// on P_16 (no copied tables to get wrong).
struct GaussRule {
    std::array<double, 16> x{};
    std::array<double, 16> w{};
};

GaussRule make_gauss16() {
    constexpr int n = 16;
    GaussRule r;
    for (int i = 0; i < n; ++i) {
        double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            // P_n(xi) and P_{n-1}(xi) by recurrence
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double step = p1 / dp;
            xi -= step;
            if (std::fabs(step) < 1e-15) break;
        }
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        r.x[i] = xi;
        r.w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
    return r;
}

const GaussRule& gauss16() {
    static const GaussRule r = make_gauss16();
    return r;
}

// FNV-1a 64-bit over the canonical constants string.
std::string fnv_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

std::string format_g15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

double quantize_g15(double x) { return std::strtod(format_g15(x).c_str(), nullptr); }

std::string HlStore::compute_fingerprint(const EngineConfig& cfg) {
    std::ostringstream os;
    os << "v1;t_min=" << format_g15(cfg.t_min) << ";rs_terms=" << cfg.rs_terms
       << ";stride=" << format_g15(cfg.stride) << ";substride=" << format_g15(cfg.substride)
       << ";rel=" << format_g15(cfg.rel_tol) << ";abs=" << format_g15(cfg.abs_tol)
       << ";mppo=" << cfg.min_panels_per_oscillation;
    return fnv_hex(os.str());
}

HlStore::HlStore(const EngineConfig& cfg, std::filesystem::path path)
    : cfg_(cfg), path_(std::move(path)) {
    cfg_.validate();
    subs_per_stride_ = static_cast<int>(std::lround(cfg_.stride / cfg_.substride));
    if (subs_per_stride_ < 1 || std::fabs(subs_per_stride_ * cfg_.substride - cfg_.stride) > 1e-9)
        throw DomainError("stride must be an integer multiple of substride");
    table_.fingerprint = compute_fingerprint(cfg_);

    // [0, t_min] head segment through the oracle (engine invalid below t_min)
    {
        QuadratureSpec qs;
        qs.rel_tol = 1e-11;
        qs.abs_tol = 1e-13;
        auto g = [](double t) {
            const std::complex<double> z = zeta_half_em(t);
            return std::norm(z);
        };
        const IntegralResult head = integrate(g, 0.0, cfg_.t_min, qs, 1.0);
        head_ = quantize_g15(head.value);
        if (!head.converged)
            warnings_.push_back("non-converged panel in the [0, t_min] oracle segment; "
                                "err_est " + format_g15(head.err_est));
    }

    bool loaded = false;
    if (!path_.empty()) {
        if (std::filesystem::exists(path_)) {
            try {
                table_ = load_table(path_, table_.fingerprint);
                loaded = true;
            } catch (const FingerprintMismatch&) {
                warnings_.push_back("checkpoint file ignored: fingerprint mismatch, rebuilding");
            } catch (const Error& e) {
                warnings_.push_back(std::string("checkpoint file ignored: ") + e.what());
            }
        }
        // probe writability
        std::error_code ec;
        auto parent = path_.parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent, ec);
        std::FILE* f = std::fopen((path_.string() + ".probe").c_str(), "wb");
        if (f) {
            std::fclose(f);
            std::filesystem::remove(path_.string() + ".probe", ec);
            persistent_ = true;
        } else {
            warnings_.push_back("store unavailable at '" + path_.string() +
                                "', falling back to in-memory cache");
        }
    }
    if (!loaded) {
        table_.rows.clear();
        table_.rows.push_back({cfg_.t_min, head_});
    }
}

std::vector<std::string> HlStore::warnings() const {
    std::lock_guard lk(mu_);
    return warnings_;
}

double HlStore::integrate_subpanel(double lo, double hi) const {
    const auto& r = gauss16();
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) acc += r.w[i] * zeta_sq(c + h * r.x[i], cfg_.rs_terms);
    return acc * h;
}

void HlStore::extend_locked(double T) {
    while (table_.rows.back().t < T) {
        const std::size_t idx = table_.rows.size() - 1;
        const auto& pref = stride_prefix_locked(idx);
        const double t0 = table_.rows.back().t;
        const double next_t = cfg_.t_min + cfg_.stride * (idx + 1);
        const double next_i = quantize_g15(table_.rows.back().i + pref.back());
        if (next_i < table_.rows.back().i)
            throw ConvergenceFailure("I(T) monotonicity violated at T=" + format_g15(t0));
        table_.rows.push_back({next_t, next_i});
        if (persistent_ && table_.rows.size() % 64 == 0) save_table(table_, path_);
    }
}

const std::vector<double>& HlStore::stride_prefix_locked(std::size_t row_idx) {
    auto it = fine_.find(row_idx);
    if (it != fine_.end()) return it->second;
    const double t0 = cfg_.t_min + cfg_.stride * row_idx;
    std::vector<double> pref(static_cast<std::size_t>(subs_per_stride_) + 1, 0.0);
    double acc = 0.0, comp = 0.0;  // Kahan
    for (int j = 0; j < subs_per_stride_; ++j) {
        const double lo = t0 + cfg_.substride * j;
        const double hi = t0 + cfg_.substride * (j + 1);
        const double v = integrate_subpanel(lo, hi);
        const double y = v - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        pref[static_cast<std::size_t>(j) + 1] = acc;
    }
    return fine_.emplace(row_idx, std::move(pref)).first->second;
}

double HlStore::hl_integral(double T) {
    if (!(T >= cfg_.t_min))
        throw HeightTooSmall("hl_integral: T below t_min");
    std::lock_guard lk(mu_);
    extend_locked(T);
    const auto row_of = static_cast<std::size_t>((T - cfg_.t_min) / cfg_.stride);
    const std::size_t idx = std::min(row_of, table_.rows.size() - 1);
    const double t0 = table_.rows[idx].t;
    double acc = table_.rows[idx].i;
    if (T == t0) return acc;
    const auto& pref = stride_prefix_locked(idx);
    const int j = std::min(subs_per_stride_ - 1,
                           static_cast<int>((T - t0) / cfg_.substride));
    acc += pref[static_cast<std::size_t>(j)];
    const double lo = t0 + cfg_.substride * j;
    if (T > lo) acc += integrate_subpanel(lo, T);
    return acc;
}

void HlStore::ensure(double T) {
    if (!(T >= cfg_.t_min)) throw HeightTooSmall("ensure: T below t_min");
    std::lock_guard lk(mu_);
    extend_locked(T);
}

void HlStore::save() {
    if (!persistent_) return;
    std::lock_guard lk(mu_);
    save_table(table_, path_);
}

void HlStore::save_table(const IntegralCheckpointTable& t, const std::filesystem::path& p) {
    const std::filesystem::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot write checkpoint file: " + tmp.string());
        out << "# ladderlab-hl v" << t.version << " fingerprint=" << t.fingerprint << "\n";
        double prev = -1.0;
        for (const auto& row : t.rows) {
            if (row.i < prev)
                throw ConvergenceFailure("refusing to save non-monotone table");
            prev = row.i;
            out << format_g15(row.t) << ',' << format_g15(row.i) << "\n";
        }
        if (!out.good()) throw IoError("short write: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, p, ec);
    if (ec) throw IoError("rename failed for " + p.string() + ": " + ec.message());
}

IntegralCheckpointTable HlStore::load_table(const std::filesystem::path& p,
                                            const std::string& expected_fingerprint) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open checkpoint file: " + p.string());
    std::string header;
    std::getline(in, header);
    while (!header.empty() && (header.back() == '\r' || header.back() == ' '))
        header.pop_back();
    IntegralCheckpointTable t;
    const std::string prefix = "# ladderlab-hl v";
    const auto fpos = header.find(" fingerprint=");
    if (header.rfind(prefix, 0) != 0 || fpos == std::string::npos)
        throw FingerprintMismatch("malformed checkpoint header in " + p.string());
    t.version = std::atoi(header.c_str() + prefix.size());
    t.fingerprint = header.substr(fpos + 13);
    if (t.version != 1)
        throw FingerprintMismatch("unsupported checkpoint version in " + p.string());
    if (!expected_fingerprint.empty() && t.fingerprint != expected_fingerprint)
        throw FingerprintMismatch("checkpoint fingerprint " + t.fingerprint +
                                  " does not match engine " + expected_fingerprint);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw FingerprintMismatch("malformed checkpoint row: " + line);
        const double tt = std::strtod(line.substr(0, comma).c_str(), nullptr);
        const double ii = std::strtod(line.c_str() + comma + 1, nullptr);
        if (!t.rows.empty() && (tt <= t.rows.back().t || ii < t.rows.back().i))
            throw FingerprintMismatch("checkpoint rows not monotone in " + p.string());
        t.rows.push_back({tt, ii});
    }
    return t;
}

}  // namespace ladderlab
