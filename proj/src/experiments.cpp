#include "vqdgap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace vqdgap {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument("");
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': " + value);
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int parsed = std::stoi(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument("");
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for '" + key + "': " + value);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long parsed = std::stoull(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument("");
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for '" + key + "': " + value);
    }
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(parse_double(key, item));
        }
    }
    if (out.empty()) {
        throw ConfigError("empty list for '" + key + "'");
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(parse_int(key, item));
        }
    }
    if (out.empty()) {
        throw ConfigError("empty list for '" + key + "'");
    }
    return out;
}

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

CouplingGraph ansatz_graph(const ExperimentConfig& config) {
    const std::size_t n = config.epsilons.size();
    if (config.topology == "line") {
        return CouplingGraph::line(n);
    }
    if (config.topology == "full") {
        CouplingGraph g(n);
        for (std::uint32_t a = 0; a < n; ++a) {
            for (std::uint32_t b = a + 1; b < n; ++b) {
                g.add_edge(a, b);
            }
        }
        return g;
    }
    throw ConfigError("unknown topology '" + config.topology +
                      "' (expected line or full)");
}

Backend make_backend(const ExperimentConfig& config) {
    if (config.backend == "ideal") {
        return Backend::ideal();
    }
    if (config.backend == "noisy") {
        return Backend::noisy(NoiseModel(config.t1, config.t2, config.tg_1q,
                                         config.tg_2q, config.temperature,
                                         config.frequency));
    }
    throw ConfigError("unknown backend '" + config.backend +
                      "' (expected ideal or noisy)");
}

VqdOptions make_options(const ExperimentConfig& config) {
    VqdOptions options;
    if (config.optimizer == "cobyla") {
        CobylaConfig cfg;
        cfg.rho_init = config.cobyla_rho_init;
        cfg.rho_end = config.cobyla_rho_end;
        cfg.max_iter = config.cobyla_max_iter;
        options.optimizer = cfg;
    } else if (config.optimizer == "spsa") {
        SpsaConfig cfg;
        cfg.c = config.spsa_c;
        if (config.spsa_a != "auto") {
            cfg.a = parse_double("spsa_a", config.spsa_a);
        }
        cfg.alpha = config.spsa_alpha;
        cfg.gamma = config.spsa_gamma;
        cfg.max_iter = config.spsa_max_iter;
        cfg.avg_tail = config.spsa_avg_tail;
        options.optimizer = cfg;
    } else {
        throw ConfigError("unknown optimizer '" + config.optimizer +
                          "' (expected cobyla or spsa)");
    }
    options.shots = config.shots;
    options.backend = make_backend(config);
    options.overlap_method = overlap_method_from_name(config.overlap);
    options.rng_seed = config.seed;
    return options;
}

double exact_gap(const ExperimentConfig& config, double v) {
    const PauliSum h =
        build_qubit_hamiltonian({config.epsilons, v});
    const auto spectrum = eigenspectrum(h);
    return gap_from_spectrum(spectrum,
                             {static_cast<std::size_t>(config.gap_index)});
}

double reported_offset(const ExperimentConfig& config) {
    return config.backend == "noisy" ? config.offset : 0.0;
}

void write_preamble(const ExperimentConfig& config, std::ostream& out) {
    out << "# config_hash=" << config_hash(config) << "\n";
}

} // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    ExperimentConfig config;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_number) +
                              " is not 'key = value': " + line);
        }
        apply_override(config, trim(line.substr(0, eq)),
                       trim(line.substr(eq + 1)));
    }
    return config;
}

void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value) {
    if (key == "epsilons") {
        config.epsilons = parse_double_list(key, value);
    } else if (key == "v") {
        config.v_grid = {parse_double(key, value)};
    } else if (key == "v_grid") {
        config.v_grid = parse_double_list(key, value);
    } else if (key == "depth") {
        config.depth_grid = {parse_int(key, value)};
    } else if (key == "depth_grid") {
        config.depth_grid = parse_int_list(key, value);
    } else if (key == "topology") {
        config.topology = value;
    } else if (key == "backend") {
        config.backend = value;
    } else if (key == "t1") {
        config.t1 = parse_double(key, value);
    } else if (key == "t2") {
        config.t2 = parse_double(key, value);
    } else if (key == "tg_1q") {
        config.tg_1q = parse_double(key, value);
    } else if (key == "tg_2q") {
        config.tg_2q = parse_double(key, value);
    } else if (key == "temperature") {
        config.temperature = parse_double(key, value);
    } else if (key == "frequency") {
        config.frequency = parse_double(key, value);
    } else if (key == "optimizer") {
        config.optimizer = value;
    } else if (key == "shots") {
        config.shots = parse_u64(key, value);
    } else if (key == "runs") {
        config.runs = parse_int(key, value);
    } else if (key == "gap_index") {
        config.gap_index = parse_int(key, value);
    } else if (key == "overlap") {
        config.overlap = value;
    } else if (key == "offset") {
        config.offset = parse_double(key, value);
    } else if (key == "seed") {
        config.seed = parse_u64(key, value);
    } else if (key == "threads") {
        config.threads = parse_int(key, value);
    } else if (key == "cobyla_rho_init") {
        config.cobyla_rho_init = parse_double(key, value);
    } else if (key == "cobyla_rho_end") {
        config.cobyla_rho_end = parse_double(key, value);
    } else if (key == "cobyla_max_iter") {
        config.cobyla_max_iter = parse_int(key, value);
    } else if (key == "spsa_c") {
        config.spsa_c = parse_double(key, value);
    } else if (key == "spsa_a") {
        config.spsa_a = value;
    } else if (key == "spsa_alpha") {
        config.spsa_alpha = parse_double(key, value);
    } else if (key == "spsa_gamma") {
        config.spsa_gamma = parse_double(key, value);
    } else if (key == "spsa_max_iter") {
        config.spsa_max_iter = parse_int(key, value);
    } else if (key == "spsa_avg_tail") {
        config.spsa_avg_tail = parse_int(key, value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void validate_config(const ExperimentConfig& config) {
    if (config.epsilons.empty()) {
        throw ConfigError("epsilons must not be empty");
    }
    if (config.backend != "ideal" && config.backend != "noisy") {
        throw ConfigError("unknown backend '" + config.backend +
                          "' (expected ideal or noisy)");
    }
    if (config.optimizer != "cobyla" && config.optimizer != "spsa") {
        throw ConfigError("unknown optimizer '" + config.optimizer +
                          "' (expected cobyla or spsa)");
    }
    if (config.topology != "line" && config.topology != "full") {
        throw ConfigError("unknown topology '" + config.topology +
                          "' (expected line or full)");
    }
    if (config.overlap != "swap" && config.overlap != "dswap" &&
        config.overlap != "transition") {
        throw ConfigError("unknown overlap method '" + config.overlap +
                          "' (expected swap, dswap or transition)");
    }
    if (config.v_grid.empty() || config.depth_grid.empty()) {
        throw ConfigError("grids must not be empty");
    }
    for (int depth : config.depth_grid) {
        if (depth < 1) {
            throw ConfigError("depths must be >= 1");
        }
    }
    if (config.runs < 1) {
        throw ConfigError("runs must be >= 1");
    }
    if (config.gap_index < 0) {
        throw ConfigError("gap_index must be >= 0");
    }
    const std::size_t levels =
        static_cast<std::size_t>(config.gap_index) + 2;
    if (config.epsilons.size() <= kMaxDenseQubits &&
        levels > (std::size_t(1) << config.epsilons.size())) {
        throw ConfigError("gap_index needs more levels than the system has");
    }
    if (config.spsa_a != "auto") {
        parse_double("spsa_a", config.spsa_a);  // reject early
    }
}

std::string config_hash(const ExperimentConfig& config) {
    std::string canon;
    canon += "epsilons=";
    for (double e : config.epsilons) {
        canon += fmt(e) + ",";
    }
    canon += ";v_grid=";
    for (double v : config.v_grid) {
        canon += fmt(v) + ",";
    }
    canon += ";depth_grid=";
    for (int d : config.depth_grid) {
        canon += std::to_string(d) + ",";
    }
    canon += ";topology=" + config.topology;
    canon += ";backend=" + config.backend;
    canon += ";t1=" + fmt(config.t1) + ";t2=" + fmt(config.t2);
    canon += ";tg_1q=" + fmt(config.tg_1q) + ";tg_2q=" + fmt(config.tg_2q);
    canon += ";temperature=" + fmt(config.temperature);
    canon += ";frequency=" + fmt(config.frequency);
    canon += ";optimizer=" + config.optimizer;
    canon += ";shots=" + std::to_string(config.shots);
    canon += ";runs=" + std::to_string(config.runs);
    canon += ";gap_index=" + std::to_string(config.gap_index);
    canon += ";overlap=" + config.overlap;
    canon += ";offset=" + fmt(config.offset);
    canon += ";seed=" + std::to_string(config.seed);
    canon += ";cobyla=" + fmt(config.cobyla_rho_init) + "," +
             fmt(config.cobyla_rho_end) + "," +
             std::to_string(config.cobyla_max_iter);
    canon += ";spsa=" + fmt(config.spsa_c) + "," + config.spsa_a + "," +
             fmt(config.spsa_alpha) + "," + fmt(config.spsa_gamma) + "," +
             std::to_string(config.spsa_max_iter) + "," +
             std::to_string(config.spsa_avg_tail);

    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : canon) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash));
    return buf;
}

void cmd_exact(const ExperimentConfig& config, std::ostream& out) {
    validate_config(config);
    if (config.epsilons.size() > kMaxDenseQubits) {
        throw std::domain_error("exact diagonalization limited to " +
                                std::to_string(kMaxDenseQubits) + " levels");
    }
    write_preamble(config, out);
    out << "v,level0,level1,level2,level3,level4,level5,gap\n";
    for (double v : config.v_grid) {
        const PauliSum h = build_qubit_hamiltonian({config.epsilons, v});
        const auto spectrum = eigenspectrum(h);
        const double gap = gap_from_spectrum(
            spectrum, {static_cast<std::size_t>(config.gap_index)});
        out << fmt(v);
        for (std::size_t level = 0; level < 6; ++level) {
            out << ',';
            if (level < spectrum.size()) {
                out << fmt(spectrum[level]);
            }
        }
        out << ',' << fmt(gap) << "\n";
    }
}

void cmd_depth_scan(const ExperimentConfig& config, std::ostream& out) {
    validate_config(config);
    if (config.v_grid.size() != 1) {
        throw ConfigError("depth-scan expects a single coupling value");
    }
    if (config.runs < 2) {
        throw ConfigError("depth-scan needs runs >= 2 for statistics");
    }
    const double v = config.v_grid.front();
    const PauliSum h = build_qubit_hamiltonian({config.epsilons, v});
    const double reference = exact_gap(config, v);
    const VqdOptions options = make_options(config);
    const GapSpec gap{static_cast<std::size_t>(config.gap_index)};

    write_preamble(config, out);
    out << "depth,optimizer,gap_mean,gap_std,runs,gap_exact\n";
    for (int depth : config.depth_grid) {
        const Circuit ansatz = build_hardware_efficient_ansatz(
            config.epsilons.size(), depth, ansatz_graph(config));
        const GapEstimate estimate = estimate_gap(
            h, ansatz, gap, config.runs, options, config.threads);
        out << depth << ',' << config.optimizer << ',' << fmt(estimate.mean)
            << ',' << fmt(estimate.stddev) << ','
            << estimate.records.size() << ',' << fmt(reference) << "\n";
    }
}

void cmd_v_sweep(const ExperimentConfig& config, std::ostream& out) {
    validate_config(config);
    if (config.depth_grid.size() != 1) {
        throw ConfigError("v-sweep expects a single depth");
    }
    if (config.runs < 2) {
        throw ConfigError("v-sweep needs runs >= 2 for statistics");
    }
    const Circuit ansatz = build_hardware_efficient_ansatz(
        config.epsilons.size(), config.depth_grid.front(),
        ansatz_graph(config));
    const VqdOptions options = make_options(config);
    const GapSpec gap{static_cast<std::size_t>(config.gap_index)};

    write_preamble(config, out);
    out << "v,optimizer,gap_mean,gap_std,gap_exact,z_score\n";
    for (double v : config.v_grid) {
        const PauliSum h = build_qubit_hamiltonian({config.epsilons, v});
        const GapEstimate estimate = estimate_gap(
            h, ansatz, gap, config.runs, options, config.threads);
        const double reference = exact_gap(config, v);
        const double deviation = std::abs(estimate.mean - reference);
        double z = 0.0;
        if (estimate.stddev > 0.0) {
            z = deviation / estimate.stddev;
        } else if (deviation > 0.0) {
            z = std::numeric_limits<double>::infinity();
        }
        out << fmt(v) << ',' << config.optimizer << ',' << fmt(estimate.mean)
            << ',' << fmt(estimate.stddev) << ',' << fmt(reference) << ','
            << fmt(z) << "\n";
    }
}

void cmd_spectrum(const ExperimentConfig& config, std::ostream& out) {
    validate_config(config);
    if (config.v_grid.size() != 1 || config.depth_grid.size() != 1) {
        throw ConfigError("spectrum expects a single coupling and depth");
    }
    const double v = config.v_grid.front();
    const PauliSum h = build_qubit_hamiltonian({config.epsilons, v});
    const Circuit ansatz = build_hardware_efficient_ansatz(
        config.epsilons.size(), config.depth_grid.front(),
        ansatz_graph(config));
    const VqdOptions options = make_options(config);
    const std::size_t k_states =
        static_cast<std::size_t>(config.gap_index) + 2;
    const auto results = solve_spectrum_runs(h, ansatz, k_states, options,
                                             config.runs, config.threads);
    const double offset = reported_offset(config);

    write_preamble(config, out);
    out << "seed,level,energy,evals\n";
    for (const auto& result : results) {
        std::vector<std::size_t> order(result.energies.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) {
                      return result.energies[a] < result.energies[b];
                  });
        for (std::size_t level = 0; level < order.size(); ++level) {
            out << result.seed << ',' << level << ','
                << fmt(result.energies[order[level]] + offset) << ','
                << result.evaluations[order[level]] << "\n";
        }
    }
}

} // namespace vqdgap
