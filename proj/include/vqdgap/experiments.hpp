#pragma once

#include "vqdgap/vqd.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqdgap {

/// Raised for malformed config files, unknown keys or invalid values; the
/// CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One experiment description. Flat key = value config file fields; every key
/// can also be set from a command-line flag of the same name.
struct ExperimentConfig {
    std::vector<double> epsilons{3.0, 3.0};
    std::vector<double> v_grid{1.0};
    std::vector<int> depth_grid{3};
    std::string topology = "line";  // line | full
    std::string backend = "ideal";  // ideal | noisy
    double t1 = 50e-6;
    double t2 = 70e-6;
    double tg_1q = 50e-9;
    double tg_2q = 300e-9;
    double temperature = 0.0;
    double frequency = 5.0e9;
    std::string optimizer = "cobyla";  // cobyla | spsa
    std::uint64_t shots = 10000;       // 0 = exact expectations
    int runs = 10;
    int gap_index = 1;
    std::string overlap = "transition";  // swap | dswap | transition
    double offset = 0.0;  // added to reported noisy energies; gaps unaffected
    std::uint64_t seed = 1234;
    int threads = 0;  // 0 = hardware concurrency

    double cobyla_rho_init = 1.0;
    double cobyla_rho_end = 1e-5;
    int cobyla_max_iter = 500;
    double spsa_c = 0.7;
    std::string spsa_a = "auto";  // "auto" or a number
    double spsa_alpha = 0.602;
    double spsa_gamma = 0.101;
    int spsa_max_iter = 300;
    int spsa_avg_tail = 25;
};

/// Parses a `key = value` file with # comments.
ExperimentConfig load_config(const std::string& path);

/// Sets one field by its config-file key.
void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

/// Checks cross-field constraints (nonempty grids, runs >= 1, ...).
void validate_config(const ExperimentConfig& config);

/// FNV-1a hash of the canonical serialization, as 16 hex digits. Identical
/// configs share hashes.
std::string config_hash(const ExperimentConfig& config);

/// Library-level views of the CLI subcommands; each writes one CSV document
/// (a `# config_hash=` comment line, a fixed header, data rows).
void cmd_exact(const ExperimentConfig& config, std::ostream& out);
void cmd_depth_scan(const ExperimentConfig& config, std::ostream& out);
void cmd_v_sweep(const ExperimentConfig& config, std::ostream& out);
void cmd_spectrum(const ExperimentConfig& config, std::ostream& out);

} // namespace vqdgap
