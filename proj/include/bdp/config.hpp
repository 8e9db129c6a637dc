#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bdp {

/// Flat key = value configuration ('#' comments, CLI flags override file
/// values). The key set is exhaustive; unknown keys are configuration errors.
struct SweepConfig {
    std::string model = "random";  // heisenberg | dicke | random
    int n_spins_min = 4;
    int n_spins_max = 12;
    int n_spins_step = 2;
    double g_x = 0.35;
    double g_y = 0.2;
    double h_x = 0.3;
    double h_y = 0.0;
    double h_z = 0.4;
    double beta = 1.0;  // ignored for heisenberg, where beta is folded into couplings
    double epsilon = 1.0;
    double omega = 1.0;
    double lambda = 0.4;
    double volume_override = 0.0;  // 0 keeps V = n_spins
    int fock_cutoff = 128;         // cutoff budget for the convergence ladder
    int n_max = 2;
    int k_max = 3;
    std::string representation = "blocked";  // full | blocked
    std::uint64_t seed = 0;
};

SweepConfig parse_config_text(const std::string& text);
SweepConfig load_config_file(const std::string& path);

/// Strictly ascending, nonempty size grid; throws ConfigError otherwise.
std::vector<int> size_grid(const SweepConfig& config);

void validate_config(const SweepConfig& config);

}  // namespace bdp
