#include "bdp/config.hpp"

#include "bdp/types.hpp"

#include <fstream>
#include <sstream>

namespace bdp {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + value + "' for key " + key);
    }
}

long parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value '" + value + "' for key " + key);
    }
}

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
    SweepConfig config;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "model") config.model = value;
        else if (key == "n_spins_min") config.n_spins_min = int(parse_int(key, value));
        else if (key == "n_spins_max") config.n_spins_max = int(parse_int(key, value));
        else if (key == "n_spins_step") config.n_spins_step = int(parse_int(key, value));
        else if (key == "g_x") config.g_x = parse_double(key, value);
        else if (key == "g_y") config.g_y = parse_double(key, value);
        else if (key == "h_x") config.h_x = parse_double(key, value);
        else if (key == "h_y") config.h_y = parse_double(key, value);
        else if (key == "h_z") config.h_z = parse_double(key, value);
        else if (key == "beta") config.beta = parse_double(key, value);
        else if (key == "epsilon") config.epsilon = parse_double(key, value);
        else if (key == "omega") config.omega = parse_double(key, value);
        else if (key == "lambda") config.lambda = parse_double(key, value);
        else if (key == "volume_override") config.volume_override = parse_double(key, value);
        else if (key == "fock_cutoff") config.fock_cutoff = int(parse_int(key, value));
        else if (key == "n_max") config.n_max = int(parse_int(key, value));
        else if (key == "k_max") config.k_max = int(parse_int(key, value));
        else if (key == "representation") config.representation = value;
        else if (key == "seed") config.seed = std::uint64_t(parse_int(key, value));
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    validate_config(config);
    return config;
}

SweepConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<int> size_grid(const SweepConfig& config) {
    if (config.n_spins_step < 1) throw ConfigError("config: n_spins_step must be >= 1");
    std::vector<int> grid;
    for (int n = config.n_spins_min; n <= config.n_spins_max; n += config.n_spins_step)
        grid.push_back(n);
    if (grid.empty()) throw ConfigError("config: empty size grid");
    return grid;
}

void validate_config(const SweepConfig& config) {
    if (config.model != "heisenberg" && config.model != "dicke" && config.model != "random")
        throw ConfigError("config: model must be heisenberg, dicke or random");
    if (config.representation != "full" && config.representation != "blocked")
        throw ConfigError("config: representation must be full or blocked");
    if (!(config.beta > 0.0)) throw ConfigError("config: beta must be positive");
    if (config.n_spins_min < 1) throw ConfigError("config: n_spins_min must be >= 1");
    if (config.fock_cutoff < 2) throw ConfigError("config: fock_cutoff must be >= 2");
    if (config.n_max < 0 || config.n_max > 3)
        throw ConfigError("config: n_max must be in [0, 3]");
    if (config.k_max < 1 || config.k_max > 3)
        throw ConfigError("config: k_max must be in [1, 3]");
}

}  // namespace bdp
