#pragma once

#include "bdp/ahm.hpp"
#include "bdp/config.hpp"
#include "bdp/csv.hpp"
#include "bdp/inequalities.hpp"
#include "bdp/scaling.hpp"

namespace bdp {

struct VerifyLine {
    std::string name;
    double measured = 0.0;  // residual or worst violation, scale stated in the name
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<VerifyLine> lines;
    bool pass = false;

    std::string render() const;
};

/// One-shot verification suite over every identity, invariant and inequality
/// family, on random instances plus both models at small size. Deterministic
/// for a fixed seed.
VerifyReport run_verify(const SweepConfig& config);

struct SweepResult {
    std::vector<CsvRow> rows;
    std::vector<ScalingSeries> series;
    std::vector<std::string> failed_sizes;

    std::string summary() const;
};

/// Size sweep of |<J>|, F_{2n}, F_{2n+1}, Delta_n and all inequality slacks,
/// with log-log exponent fits. Per-size failures are recorded and skipped;
/// the sweep throws only if more than half the sizes fail.
SweepResult run_sweep(const SweepConfig& config);

struct GapSweepResult {
    std::vector<CsvRow> rows;
    std::vector<std::pair<int, VariationalResult>> results;
    ScalingSeries gap_series;
    SusceptibilityCheck susceptibility;

    std::string summary() const;
};

/// Variational gap across the size grid plus the susceptibility relation at
/// the smallest size.
GapSweepResult run_gap_sweep(const SweepConfig& config);

struct DickeSuiteResult {
    std::vector<std::pair<int, DickeSuiteReport>> per_size;
    std::vector<std::pair<int, CheckLine>> schwarz;
    bool pass = false;

    std::string render() const;
};

DickeSuiteResult run_dicke_suite(const SweepConfig& config);

DickeSpec dicke_spec_from(const SweepConfig& config, int n_spins);
HeisenbergSpec heisenberg_spec_from(const SweepConfig& config, int n_spins);

}  // namespace bdp
