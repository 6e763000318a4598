#include "vqdgap/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Every config-file key doubles as a flag; values are kept as text and fed
// through the same apply_override path as the file loader.
struct FlagStore {
    std::vector<std::pair<std::string, std::string>> values;
    std::vector<CLI::Option*> options;

    // CLI11 keeps pointers into `values`; it must never reallocate.
    FlagStore() { values.reserve(40); }

    void add(CLI::App* app, const std::string& key,
             const std::string& description,
             const std::string& alias = "") {
        if (values.size() == values.capacity()) {
            throw std::logic_error("flag storage capacity exceeded");
        }
        values.emplace_back(key, "");
        std::string names = "--" + key;
        if (!alias.empty()) {
            names += ",--" + alias;
        }
        options.push_back(
            app->add_option(names, values.back().second, description));
    }

    void apply(vqdgap::ExperimentConfig& config) const {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (options[i]->count() > 0) {
                vqdgap::apply_override(config, values[i].first,
                                       values[i].second);
            }
        }
    }
};

void add_flags(CLI::App* app, FlagStore& flags) {
    flags.add(app, "epsilons", "comma-separated onsite energies (one per qubit)");
    flags.add(app, "v", "single coupling value");
    flags.add(app, "v_grid", "comma-separated coupling values", "v-grid");
    flags.add(app, "depth", "single ansatz depth");
    flags.add(app, "depth_grid", "comma-separated ansatz depths", "depth-grid");
    flags.add(app, "topology", "ansatz coupling graph: line | full");
    flags.add(app, "backend", "ideal | noisy");
    flags.add(app, "t1", "relaxation time (seconds)");
    flags.add(app, "t2", "dephasing time (seconds)");
    flags.add(app, "tg_1q", "single-qubit gate duration (seconds)", "tg-1q");
    flags.add(app, "tg_2q", "multi-qubit gate duration (seconds)", "tg-2q");
    flags.add(app, "temperature", "device temperature (kelvin)");
    flags.add(app, "frequency", "qubit frequency (hertz)");
    flags.add(app, "optimizer", "cobyla | spsa");
    flags.add(app, "shots", "shots per cost evaluation; 0 = exact expectations");
    flags.add(app, "runs", "independent randomly-initialized runs");
    flags.add(app, "gap_index", "gap index n: reports E_{n+1} - E_n", "gap-index");
    flags.add(app, "overlap", "overlap method: swap | dswap | transition");
    flags.add(app, "offset", "constant added to reported noisy energies");
    flags.add(app, "seed", "top-level RNG seed; run r uses seed + r");
    flags.add(app, "threads", "worker threads for independent runs (0 = auto)");
    flags.add(app, "cobyla_rho_init", "initial trust-region radius");
    flags.add(app, "cobyla_rho_end", "final trust-region radius");
    flags.add(app, "cobyla_max_iter", "trust-region iteration cap");
    flags.add(app, "spsa_c", "perturbation scale");
    flags.add(app, "spsa_a", "learning-rate scale or 'auto'");
    flags.add(app, "spsa_alpha", "learning-rate decay exponent");
    flags.add(app, "spsa_gamma", "perturbation decay exponent");
    flags.add(app, "spsa_max_iter", "iteration count");
    flags.add(app, "spsa_avg_tail", "trailing iterates averaged into the result");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BCS pairing gaps from variational quantum deflation on a "
                 "simulated quantum computer"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    app.add_option("--config", config_path, "key = value config file")
        ->expected(1);
    app.add_option("--out", out_path, "write CSV here instead of stdout")
        ->expected(1);

    using Command =
        std::function<void(const vqdgap::ExperimentConfig&, std::ostream&)>;
    struct Sub {
        CLI::App* app;
        FlagStore flags;
        Command command;
    };
    std::vector<Sub> subs;
    const auto add_command = [&](const std::string& name,
                                 const std::string& description,
                                 Command command) {
        Sub sub;
        sub.app = app.add_subcommand(name, description);
        sub.app->add_option("--config", config_path,
                            "key = value config file");
        sub.app->add_option("--out", out_path,
                            "write CSV here instead of stdout");
        add_flags(sub.app, sub.flags);
        sub.command = std::move(command);
        subs.push_back(std::move(sub));
    };

    add_command("exact", "exact spectrum and gap per coupling value",
                vqdgap::cmd_exact);
    add_command("depth-scan", "gap statistics across ansatz depths",
                vqdgap::cmd_depth_scan);
    add_command("v-sweep", "gap statistics across coupling values",
                vqdgap::cmd_v_sweep);
    add_command("spectrum", "per-run, per-level energies",
                vqdgap::cmd_spectrum);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    for (const auto& sub : subs) {
        if (!sub.app->parsed()) {
            continue;
        }
        vqdgap::ExperimentConfig config;
        try {
            if (!config_path.empty()) {
                config = vqdgap::load_config(config_path);
            }
            sub.flags.apply(config);
            vqdgap::validate_config(config);
        } catch (const vqdgap::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 1;
        }
        try {
            std::ostringstream buffer;
            sub.command(config, buffer);
            if (out_path.empty()) {
                std::cout << buffer.str();
            } else {
                std::ofstream out(out_path);
                if (!out) {
                    throw std::runtime_error("cannot open output file '" +
                                             out_path + "'");
                }
                out << buffer.str();
            }
        } catch (const vqdgap::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 0;
}
