#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "ladderlab/config.hpp"

namespace ladderlab {

struct CheckpointRow {
    double t;
    double i;  // I(t) = integral of Z^2 over [0, t]
};

struct IntegralCheckpointTable {
    int version = 1;
    std::string fingerprint;  // hex of the engine constants
    std::vector<CheckpointRow> rows;
};

// Persistent checkpoint store for the Hardy-Littlewood integral
//   I(T) = integral_0^T Z(t)^2 dt.
//
// Layout: persisted rows every `stride` (default 50) starting at t_min; the
// [0, t_min] head segment is a constant computed once from the oracle (the
// Riemann-Siegel engine is not valid there).  Queries between rows integrate
// forward from the row through fixed `substride` sub-panels (Gauss-Legendre,
// order picked so the panel error sits ~10 orders below the store tolerance;
// the §-style adaptive Simpson path stays in integrate(), which serves the
// short intervals).  Sub-panel values are memoized per stride; every quantity
// is a pure function of (config, T), so results never depend on query order,
// thread count, or whether the run started warm or cold.
//
// Rows are quantized to 15 significant digits when created, which makes the
// CSV round trip bit-exact by construction.
//
// File format:
//   # ladderlab-hl v1 fingerprint=<hex>
//   <T>,<I>                (15 significant digits, one row per stride)
class HlStore {
public:
    // Empty path = in-memory only.  A non-empty path that cannot be written
    // leaves the store functional in memory with a warning recorded
    // (StoreUnavailable is reported through warnings(), not thrown, so long
    // computations are never lost to a bad mount).
    explicit HlStore(const EngineConfig& cfg, std::filesystem::path path = {});

    // I(T); extends and persists checkpoints as needed. T >= t_min.
    double hl_integral(double T);

    // Extends the persisted rows to cover T (same work hl_integral does).
    void ensure(double T);

    double integral_floor() const { return head_; }  // I(t_min), oracle path

    const IntegralCheckpointTable& table() const { return table_; }
    const std::string& fingerprint() const { return table_.fingerprint; }
    bool persistent() const { return persistent_; }
    std::vector<std::string> warnings() const;

    void save();  // atomic write-new-then-rename; no-op when in-memory

    const EngineConfig& config() const { return cfg_; }

    // --- plain table io (exposed for tests and the cache CLI) -------------
    static void save_table(const IntegralCheckpointTable& t, const std::filesystem::path& p);
    static IntegralCheckpointTable load_table(const std::filesystem::path& p,
                                              const std::string& expected_fingerprint);
    static std::string compute_fingerprint(const EngineConfig& cfg);

private:
    void extend_locked(double T);
    const std::vector<double>& stride_prefix_locked(std::size_t row_idx);
    double integrate_subpanel(double lo, double hi) const;  // GL panel of Z^2

    EngineConfig cfg_;
    std::filesystem::path path_;
    bool persistent_ = false;
    double head_ = 0.0;  // I(t_min)
    IntegralCheckpointTable table_;
    std::map<std::size_t, std::vector<double>> fine_;  // row idx -> sub prefix
    mutable std::mutex mu_;
    std::vector<std::string> warnings_;
    int subs_per_stride_ = 0;
};

// Helpers shared with the report writer: shortest 15-significant-digit
// decimal form and its parse-back (used to quantize rows on insert).
std::string format_g15(double x);
double quantize_g15(double x);

}  // namespace ladderlab
