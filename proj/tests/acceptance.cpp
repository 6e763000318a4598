// Acceptance suite: one line per criterion, nonzero exit on any failure.
// VQDGAP_ACCEPT_FULL=1 switches the reduced statistical runs to their
// full-size counterparts.

#include "vqdgap/experiments.hpp"
#include "vqdgap/noise.hpp"
#include "vqdgap/optimize.hpp"
#include "vqdgap/overlap.hpp"
#include "vqdgap/vqd.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace vqdgap;

namespace {

int failures = 0;

class Criterion {
  public:
    Criterion(int number, std::string description)
        : number_(number), description_(std::move(description)),
          start_(std::chrono::steady_clock::now()) {}

    void report(bool pass, const std::string& detail) const {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start_)
                .count();
        std::ostringstream line;
        line << (pass ? "PASS" : "FAIL") << " criterion " << number_ << ": "
             << description_ << " [" << detail << "] ("
             << static_cast<int>(seconds * 1000) << " ms)";
        std::cout << line.str() << std::endl;
        if (!pass) {
            ++failures;
        }
    }

  private:
    int number_;
    std::string description_;
    std::chrono::steady_clock::time_point start_;
};

bool full_mode() {
    const char* env = std::getenv("VQDGAP_ACCEPT_FULL");
    return env != nullptr && std::string(env) == "1";
}

double uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Circuit random_bound_ansatz(std::size_t n, std::mt19937_64& rng) {
    const Circuit ansatz = build_hardware_efficient_ansatz(n, 2);
    std::vector<double> theta(ansatz.num_unbound());
    for (double& t : theta) {
        t = 2.0 * std::numbers::pi * uniform(rng);
    }
    return ansatz.bound_with(theta);
}

void criterion_1_exact_oracle() {
    const Criterion criterion(1, "exact-spectrum oracle reproduces (-3,-V,V,3)");
    bool pass = true;
    double worst = 0.0;
    for (int step = 1; step <= 15; ++step) {
        const double v = 0.1 * step;
        const auto spectrum =
            eigenspectrum(build_qubit_hamiltonian({{3.0, 3.0}, v}));
        const double expected[] = {-3.0, -v, v, 3.0};
        for (int i = 0; i < 4; ++i) {
            const double err =
                std::abs(spectrum[static_cast<std::size_t>(i)] - expected[i]);
            worst = std::max(worst, err);
            if (err > 1e-9) {
                pass = false;
            }
        }
    }
    std::ostringstream detail;
    detail << "max |error| = " << worst;
    criterion.report(pass, detail.str());
}

void criterion_2_ideal_v_sweep() {
    const Criterion criterion(2, "ideal N=2 v-sweep gap within 1 std of 2V");
    const Circuit ansatz = build_hardware_efficient_ansatz(2, 3);
    VqdOptions options;
    options.shots = 10000;
    options.rng_seed = 20240;
    bool pass = true;
    std::ostringstream detail;
    for (const double v : {0.2, 0.6, 1.0, 1.4}) {
        const PauliSum h = build_qubit_hamiltonian({{3.0, 3.0}, v});
        const GapEstimate estimate = estimate_gap(h, ansatz, {1}, 10, options);
        const double deviation = std::abs(estimate.mean - 2.0 * v);
        if (deviation > estimate.stddev) {
            pass = false;
        }
        detail << "V=" << v << ": " << estimate.mean << "+-"
               << estimate.stddev << "; ";
    }
    criterion.report(pass, detail.str());
}

void criterion_3_depth_scan() {
    // Known red on the depth-1 clause: depth-1 runs fail by wrong-level
    // outliers at a 25-30% rate, and a sub-50% outlier fraction cannot move
    // a mean outside one sample std. The clause is kept as stated.
    const bool full = full_mode();
    const Criterion criterion(
        3, std::string("ideal N=2 depth scan: depth>=3 within 1 std, depth 1 "
                       "outside (") +
               (full ? "50" : "10") + " runs)");
    const int runs = full ? 50 : 10;
    const double v = 1.0;
    const PauliSum h = build_qubit_hamiltonian({{3.0, 3.0}, v});
    VqdOptions options;
    options.shots = 10000;
    options.rng_seed = 777;

    bool pass = true;
    std::ostringstream detail;
    for (const int depth : {1, 2, 3, 4}) {
        const Circuit ansatz = build_hardware_efficient_ansatz(2, depth);
        const GapEstimate estimate = estimate_gap(h, ansatz, {1}, runs, options);
        const double deviation = std::abs(estimate.mean - 2.0 * v);
        const bool within = deviation <= estimate.stddev;
        if (depth >= 3 && !within) {
            pass = false;
        }
        if (depth == 1 && within) {
            pass = false;
        }
        detail << "d" << depth << ": " << estimate.mean << "+-"
               << estimate.stddev << (within ? " (in)" : " (out)") << "; ";
    }
    criterion.report(pass, detail.str());
}

void criterion_4_five_level_gap() {
    const bool full = full_mode();
    const Criterion criterion(
        4, std::string("ideal N=5 n=0 gap against the oracle (") +
               (full ? "20 runs, 10000 shots, 1 std"
                     : "5 runs, 2000 shots, 2 std") +
               ")");
    const int runs = full ? 20 : 5;
    const std::uint64_t shots = full ? 10000 : 2000;
    const double sigma_factor = full ? 1.0 : 2.0;
    const std::vector<double> epsilons{3, 3, 3, 4, 3};
    const Circuit ansatz = build_hardware_efficient_ansatz(5, 3);
    VqdOptions options;
    options.shots = shots;
    options.rng_seed = 31337;

    bool pass = true;
    std::ostringstream detail;
    for (const double v : {0.2, 0.5}) {
        const PauliSum h = build_qubit_hamiltonian({epsilons, v});
        const double exact = gap_from_spectrum(eigenspectrum(h), {0});
        const GapEstimate estimate = estimate_gap(h, ansatz, {0}, runs, options);
        const double deviation = std::abs(estimate.mean - exact);
        if (deviation > sigma_factor * estimate.stddev) {
            pass = false;
        }
        detail << "V=" << v << ": " << estimate.mean << "+-"
               << estimate.stddev << " vs " << exact << "; ";
    }
    criterion.report(pass, detail.str());
}

void criterion_5_noise_suite() {
    const Criterion criterion(5, "thermal-relaxation channel suite");
    bool pass = true;
    std::ostringstream detail;
    std::mt19937_64 rng(5150);
    double worst_completeness = 0.0;
    double worst_decay = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        RelaxationParams p;
        p.t1 = 1e-6 + 100e-6 * uniform(rng);
        p.t2 = (trial % 2 == 0) ? p.t1 * (1.0 + 0.999 * uniform(rng))
                                : p.t1 * (0.05 + 0.95 * uniform(rng));
        p.gate_time = 1e-9 + 1e-6 * uniform(rng);
        const auto channel = thermal_relaxation_channel(p);
        worst_completeness = std::max(worst_completeness, validate_cptp(channel));

        const double eps_t1 = std::exp(-p.gate_time / p.t1);
        const double eps_t2 = std::exp(-p.gate_time / p.t2);
        Eigen::Matrix2cd plus;
        plus << 0.5, 0.5, 0.5, 0.5;
        Eigen::Matrix2cd excited = Eigen::Matrix2cd::Zero();
        excited(1, 1) = 1.0;
        worst_decay = std::max(
            worst_decay, std::abs(std::abs(channel.apply(plus)(0, 1)) -
                                  0.5 * eps_t2));
        worst_decay = std::max(
            worst_decay,
            std::abs(channel.apply(excited)(1, 1).real() - eps_t1));
    }
    if (worst_completeness > 1e-9 || worst_decay > 1e-9) {
        pass = false;
    }

    // Choi <-> Kraus round trip on the T2 > T1 form.
    const RelaxationParams p{1.0, 1.5, 0.1, 0.0, 5e9};
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    const double eps_t2 = std::exp(-p.gate_time / p.t2);
    const double p_reset = 1.0 - std::exp(-p.gate_time / p.t1);
    m(0, 0) = 1.0;
    m(0, 3) = m(3, 0) = eps_t2;
    m(2, 2) = p_reset;
    m(3, 3) = 1.0 - p_reset;
    const double round_trip =
        (kraus_to_choi(choi_to_kraus(ChoiMatrix(m))).elements() - m)
            .cwiseAbs()
            .maxCoeff();
    if (round_trip > 1e-9) {
        pass = false;
    }

    // CP rejection triggers exactly when T2 > 2 T1.
    bool rejection_ok = true;
    try {
        thermal_relaxation_channel({1.0, 2.0 + 1e-9, 0.1});
        rejection_ok = false;
    } catch (const std::domain_error&) {
    }
    try {
        thermal_relaxation_channel({1.0, 2.0, 0.1});
    } catch (const std::exception&) {
        rejection_ok = false;
    }
    if (!rejection_ok) {
        pass = false;
    }

    detail << "completeness<=" << worst_completeness << ", decay<="
           << worst_decay << ", round-trip=" << round_trip
           << ", CP boundary " << (rejection_ok ? "exact" : "wrong");
    criterion.report(pass, detail.str());
}

void criterion_6_overlap_equivalence() {
    const Criterion criterion(6, "three overlap methods agree with the "
                                 "statevector inner product");
    bool pass = true;
    std::mt19937_64 rng(608);
    double worst_exact = 0.0;
    int sampled_misses = 0;
    const OverlapMethod methods[] = {OverlapMethod::swap_test,
                                     OverlapMethod::destructive_swap,
                                     OverlapMethod::transition_amplitude};
    for (int pair = 0; pair < 50; ++pair) {
        const Circuit a = random_bound_ansatz(2, rng);
        const Circuit b = random_bound_ansatz(2, rng);
        const auto va = run_statevector(a).amplitudes();
        const auto vb = run_statevector(b).amplitudes();
        const double truth = std::norm(va.dot(vb));
        for (const auto method : methods) {
            const auto exact =
                estimate_overlap(method, a, b, 0, Backend::ideal(), 0);
            worst_exact = std::max(worst_exact, std::abs(exact.value - truth));
            const auto sampled = estimate_overlap(
                method, a, b, 10000, Backend::ideal(),
                static_cast<std::uint64_t>(1000 + pair));
            double variance = 0.0;
            switch (method) {
            case OverlapMethod::swap_test:
                // value = 2 P(0) - 1 with P(0) = (1 + truth) / 2.
                variance = (1.0 - truth * truth) / 10000.0;
                break;
            case OverlapMethod::destructive_swap:
                variance = (1.0 - truth * truth) / 10000.0;
                break;
            case OverlapMethod::transition_amplitude:
                variance = truth * (1.0 - truth) / 10000.0;
                break;
            }
            const double sigma = std::sqrt(std::max(variance, 0.0));
            if (std::abs(sampled.value - truth) > 3.0 * sigma + 1e-9) {
                ++sampled_misses;
            }
        }
    }
    if (worst_exact > 1e-9 || sampled_misses > 0) {
        pass = false;
    }

    // Spot values of the swap-test formula.
    const auto spot = [](std::uint64_t zeros, std::uint64_t ones) {
        ShotHistogram h;
        h.shots = zeros + ones;
        if (zeros) {
            h.counts["0"] = zeros;
        }
        if (ones) {
            h.counts["1"] = ones;
        }
        return swap_post_process(h).value;
    };
    if (spot(4, 0) != 1.0 || spot(2, 2) != 0.0 || spot(3, 1) != 0.5) {
        pass = false;
    }

    std::ostringstream detail;
    detail << "exact misses<=" << worst_exact << ", sampled 3-sigma misses "
           << sampled_misses << "/150, spot values exact";
    criterion.report(pass, detail.str());
}

void criterion_7_optimizer_suite() {
    const Criterion criterion(7, "optimizer suite on the 2-D quadratic");
    bool pass = true;
    const Objective quadratic = [](std::span<const double> x) {
        return x[0] * x[0] + x[1] * x[1];
    };

    int clean_hits = 0;
    int noisy_hits = 0;
    const int seeds = 100;
    for (int seed = 0; seed < seeds; ++seed) {
        SpsaConfig config;
        config.max_iter = 500;
        config.rng_seed = static_cast<std::uint64_t>(seed);
        const auto clean = spsa_minimize(quadratic, {1.0, 1.0}, config);
        const double clean_norm =
            std::hypot(clean.best_params[0], clean.best_params[1]);
        if (clean_norm <= 0.1) {
            ++clean_hits;
        }

        std::mt19937_64 noise_rng(40000 + seed);
        const Objective noisy = [&](std::span<const double> x) {
            const double u1 = std::max(uniform(noise_rng), 1e-16);
            const double u2 = uniform(noise_rng);
            return quadratic(x) + 0.05 * std::sqrt(-2.0 * std::log(u1)) *
                                      std::cos(2.0 * std::numbers::pi * u2);
        };
        const auto perturbed = spsa_minimize(noisy, {1.0, 1.0}, config);
        const double noisy_norm =
            std::hypot(perturbed.best_params[0], perturbed.best_params[1]);
        if (noisy_norm <= 0.2) {
            ++noisy_hits;
        }
    }
    if (clean_hits < 90 || noisy_hits < 80) {
        pass = false;
    }

    CobylaConfig cobyla;
    cobyla.rho_end = 1e-6;
    const Objective shifted = [](std::span<const double> x) {
        return (x[0] - 2.0) * (x[0] - 2.0) + x[1] * x[1];
    };
    const auto trust = cobyla_minimize(shifted, {0.0, 0.0}, cobyla);
    const double trust_error =
        std::hypot(trust.best_params[0] - 2.0, trust.best_params[1]);
    if (trust_error > 1e-3) {
        pass = false;
    }

    // Decay-sequence law to 1e-12.
    SpsaConfig trace_config;
    trace_config.max_iter = 200;
    trace_config.rng_seed = 9;
    const auto traced = spsa_minimize(quadratic, {1.0, 1.0}, trace_config);
    const double a = traced.trace[0].step_scale;
    double trace_error = 0.0;
    for (int i = 1; i <= trace_config.max_iter; ++i) {
        const auto& record = traced.trace[static_cast<std::size_t>(i - 1)];
        trace_error = std::max(
            trace_error,
            std::abs(record.step_scale - a / std::pow(i, 0.602)));
        trace_error = std::max(
            trace_error, std::abs(record.perturb_scale -
                                  trace_config.c / std::pow(i, 0.101)));
    }
    if (trace_error > 1e-12) {
        pass = false;
    }

    std::ostringstream detail;
    detail << "spsa clean " << clean_hits << "/100, noisy " << noisy_hits
           << "/100, trust-region error " << trust_error
           << ", sequence-law error " << trace_error;
    criterion.report(pass, detail.str());
}

void criterion_8_noisy_trend() {
    const Criterion criterion(8, "noisy N=2 gap-vs-V slope within 25% of 2 "
                                 "(COBYLA)");
    const Circuit ansatz = build_hardware_efficient_ansatz(2, 3);
    VqdOptions options;
    options.shots = 10000;
    options.rng_seed = 888;
    options.backend =
        Backend::noisy(NoiseModel(50e-6, 70e-6, 50e-9, 300e-9));

    const std::vector<double> vs{0.2, 0.6, 1.0, 1.4};
    std::vector<double> means;
    std::ostringstream detail;
    for (const double v : vs) {
        const PauliSum h = build_qubit_hamiltonian({{3.0, 3.0}, v});
        const GapEstimate estimate = estimate_gap(h, ansatz, {1}, 10, options);
        means.push_back(estimate.mean);
        detail << "V=" << v << ": " << estimate.mean << "; ";
    }
    double v_mean = 0.0;
    double g_mean = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        v_mean += vs[i];
        g_mean += means[i];
    }
    v_mean /= static_cast<double>(vs.size());
    g_mean /= static_cast<double>(vs.size());
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        numerator += (vs[i] - v_mean) * (means[i] - g_mean);
        denominator += (vs[i] - v_mean) * (vs[i] - v_mean);
    }
    const double slope = numerator / denominator;
    const bool pass = std::abs(slope - 2.0) <= 0.5;
    detail << "slope = " << slope;
    criterion.report(pass, detail.str());
}

void criterion_9_topology() {
    const Criterion criterion(9, "overlap circuits respect the device "
                                 "topologies");
    const Circuit trivial(3);
    const bool destructive_fits =
        check_topology(destructive_swap_test_circuit(trivial, trivial),
                       CouplingGraph::ladder(3))
            .empty();
    const bool swap_fits =
        check_topology(swap_test_circuit(trivial, trivial),
                       CouplingGraph::ladder_with_hub(3))
            .empty();
    CouplingGraph no_hub(7);
    for (const auto& [a, b] : CouplingGraph::ladder(3).edges) {
        no_hub.add_edge(a + 1, b + 1);
    }
    const auto violations =
        check_topology(swap_test_circuit(trivial, trivial), no_hub);
    const bool pass = destructive_fits && swap_fits && !violations.empty();
    std::ostringstream detail;
    detail << "ladder " << (destructive_fits ? "ok" : "violated")
           << ", hub " << (swap_fits ? "ok" : "violated")
           << ", hubless violations " << violations.size();
    criterion.report(pass, detail.str());
}

} // namespace

int main(int argc, char** argv) {
    void (*criteria[])() = {
        criterion_1_exact_oracle, criterion_2_ideal_v_sweep,
        criterion_3_depth_scan,   criterion_4_five_level_gap,
        criterion_5_noise_suite,  criterion_6_overlap_equivalence,
        criterion_7_optimizer_suite, criterion_8_noisy_trend,
        criterion_9_topology};

    if (argc > 1) {
        const int selected = std::atoi(argv[1]);
        if (selected < 1 || selected > 9) {
            std::cerr << "usage: acceptance [criterion 1-9]" << std::endl;
            return 2;
        }
        criteria[selected - 1]();
        return failures == 0 ? 0 : 1;
    }

    std::cout << "acceptance suite ("
              << (full_mode() ? "full" : "reduced") << " statistics)"
              << std::endl;
    for (const auto& criterion : criteria) {
        criterion();
    }
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) +
                                      " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
