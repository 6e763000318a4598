#include "vqdgap/vqd.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <thread>

namespace vqdgap {

namespace {

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int worker_count(int threads, int runs) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
    }
    return std::max(1, std::min(threads, runs));
}

} // namespace

double vqe_cost(std::span<const double> theta, const PauliSum& hamiltonian,
                const Circuit& ansatz, std::uint64_t shots,
                const Backend& backend, std::uint64_t rng_seed) {
    return expectation_sampled(ansatz.bound_with(theta), hamiltonian, shots,
                               backend, rng_seed);
}

double vqd_cost(std::span<const double> theta, const PauliSum& hamiltonian,
                const Circuit& ansatz, const DeflationState& deflation,
                OverlapMethod method, std::uint64_t shots,
                const Backend& backend, std::uint64_t rng_seed) {
    if (deflation.params.size() != deflation.betas.size()) {
        throw std::invalid_argument("deflation state is inconsistent");
    }
    // One sub-seed per stochastic piece keeps the evaluation reproducible.
    std::mt19937_64 seeds(rng_seed);
    double cost =
        vqe_cost(theta, hamiltonian, ansatz, shots, backend, seeds());
    if (deflation.level() == 0) {
        return cost;
    }
    const Circuit candidate = ansatz.bound_with(theta);
    for (std::size_t i = 0; i < deflation.level(); ++i) {
        const Circuit found = ansatz.bound_with(deflation.params[i]);
        const OverlapEstimate overlap = estimate_overlap(
            method, candidate, found, shots, backend, seeds());
        cost += deflation.betas[i] * overlap.clamped();
    }
    return cost;
}

SpectrumResult solve_spectrum(const PauliSum& hamiltonian,
                              const Circuit& ansatz, std::size_t k_states,
                              const VqdOptions& options) {
    const std::uint64_t dim = std::uint64_t(1) << hamiltonian.num_qubits();
    if (k_states == 0 || k_states > dim) {
        throw std::invalid_argument("k_states must lie in [1, 2^n]");
    }
    if (ansatz.num_qubits() != hamiltonian.num_qubits()) {
        throw std::invalid_argument("ansatz and Hamiltonian widths differ");
    }
    const std::size_t num_params = ansatz.num_unbound();
    if (num_params == 0) {
        throw std::invalid_argument("ansatz has no free parameters");
    }

    std::mt19937_64 rng(options.rng_seed);
    // The coefficient bound can be exactly tight (a single Pauli term, or a
    // diagonal sum), which makes the deflated landscape flat between the
    // ground state and the top of the spectrum. The penalty rule needs a
    // strict inequality, so pad the bound.
    const double beta = 1.25 * beta_bound(hamiltonian);

    DeflationState deflation;
    SpectrumResult result;
    result.seed = options.rng_seed;

    for (std::size_t k = 0; k < k_states; ++k) {
        std::vector<double> theta0(num_params);
        for (double& t : theta0) {
            t = 2.0 * std::numbers::pi * uniform_unit(rng);
        }
        const Objective objective = [&](std::span<const double> theta) {
            return vqd_cost(theta, hamiltonian, ansatz, deflation,
                            options.overlap_method, options.shots,
                            options.backend, rng());
        };
        OptResult opt;
        try {
            if (std::holds_alternative<CobylaConfig>(options.optimizer)) {
                opt = cobyla_minimize(objective, theta0,
                                      std::get<CobylaConfig>(options.optimizer));
            } else {
                SpsaConfig cfg = std::get<SpsaConfig>(options.optimizer);
                cfg.rng_seed = rng();
                opt = spsa_minimize(objective, theta0, cfg);
            }
        } catch (const std::exception& e) {
            throw SolveError("optimizer failed at deflation level " +
                                 std::to_string(k) + ": " + e.what(),
                             result);
        }
        // Reported energy excludes the overlap penalty.
        const double energy = vqe_cost(opt.best_params, hamiltonian, ansatz,
                                       options.shots, options.backend, rng());
        deflation.params.push_back(opt.best_params);
        deflation.energies.push_back(energy);
        deflation.betas.push_back(beta);
        result.energies.push_back(energy);
        result.params.push_back(std::move(opt.best_params));
        result.evaluations.push_back(opt.evaluations);
    }
    return result;
}

std::vector<SpectrumResult> solve_spectrum_runs(const PauliSum& hamiltonian,
                                                const Circuit& ansatz,
                                                std::size_t k_states,
                                                const VqdOptions& base,
                                                int runs, int threads) {
    if (runs < 1) {
        throw std::invalid_argument("need at least one run");
    }
    std::vector<SpectrumResult> results(static_cast<std::size_t>(runs));
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;

    const auto worker = [&]() {
        while (true) {
            const int r = next.fetch_add(1);
            if (r >= runs || failed.load()) {
                return;
            }
            VqdOptions options = base;
            // Documented derivation: run r uses seed + r.
            options.rng_seed = base.rng_seed + static_cast<std::uint64_t>(r);
            try {
                results[static_cast<std::size_t>(r)] =
                    solve_spectrum(hamiltonian, ansatz, k_states, options);
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) {
                    first_error = e.what();
                }
                return;
            }
        }
    };

    const int workers = worker_count(threads, runs);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failed.load()) {
        throw std::runtime_error("solver run failed: " + first_error);
    }
    return results;
}

GapEstimate estimate_gap(const PauliSum& hamiltonian, const Circuit& ansatz,
                         GapSpec gap, int runs, const VqdOptions& base,
                         int threads) {
    if (runs < 2) {
        throw std::invalid_argument("gap statistics need at least two runs");
    }
    const std::size_t k_states = gap.n + 2;

    std::vector<std::optional<GapRunRecord>> slots(
        static_cast<std::size_t>(runs));
    std::atomic<int> next{0};

    const auto worker = [&]() {
        while (true) {
            const int r = next.fetch_add(1);
            if (r >= runs) {
                return;
            }
            VqdOptions options = base;
            options.rng_seed = base.rng_seed + static_cast<std::uint64_t>(r);
            const auto start = std::chrono::steady_clock::now();
            try {
                const SpectrumResult result =
                    solve_spectrum(hamiltonian, ansatz, k_states, options);
                std::vector<double> sorted = result.energies;
                std::sort(sorted.begin(), sorted.end());
                GapRunRecord record;
                record.seed = options.rng_seed;
                record.energies = result.energies;
                record.gap = sorted[gap.n + 1] - sorted[gap.n];
                record.evaluations = 0;
                for (long evals : result.evaluations) {
                    record.evaluations += evals;
                }
                record.wall_seconds =
                    std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
                slots[static_cast<std::size_t>(r)] = std::move(record);
            } catch (const std::exception&) {
                // Failed runs are dropped; statistics use the survivors.
            }
        }
    };

    const int workers = worker_count(threads, runs);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    GapEstimate estimate;
    for (auto& slot : slots) {
        if (slot.has_value()) {
            estimate.records.push_back(std::move(*slot));
        }
    }
    const auto successes = static_cast<int>(estimate.records.size());
    if (successes < 2) {
        throw std::runtime_error(
            "gap estimation needs at least two successful runs, got " +
            std::to_string(successes));
    }

    double mean = 0.0;
    for (const auto& record : estimate.records) {
        mean += record.gap;
    }
    mean /= successes;
    double variance = 0.0;
    for (const auto& record : estimate.records) {
        variance += (record.gap - mean) * (record.gap - mean);
    }
    variance /= (successes - 1);
    estimate.mean = mean;
    estimate.stddev = std::sqrt(variance);
    return estimate;
}

} // namespace vqdgap
