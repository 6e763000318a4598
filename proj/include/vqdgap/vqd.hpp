#pragma once

#include "vqdgap/bcs.hpp"
#include "vqdgap/circuit.hpp"
#include "vqdgap/optimize.hpp"
#include "vqdgap/overlap.hpp"
#include "vqdgap/pauli.hpp"
#include "vqdgap/simulator.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace vqdgap {

/// Previously found levels: parameters, penalty-free energies and the
/// overlap-penalty weights used against them.
struct DeflationState {
    std::vector<std::vector<double>> params;
    std::vector<double> energies;
    std::vector<double> betas;

    std::size_t level() const { return params.size(); }
};

using OptimizerConfig = std::variant<CobylaConfig, SpsaConfig>;

struct VqdOptions {
    OptimizerConfig optimizer = CobylaConfig{};
    std::uint64_t shots = 10000;  // 0 = exact expectations
    Backend backend = Backend::ideal();
    OverlapMethod overlap_method = OverlapMethod::transition_amplitude;
    std::uint64_t rng_seed = 0;
};

/// One deflation sweep's outcome, in discovery order.
struct SpectrumResult {
    std::vector<double> energies;
    std::vector<std::vector<double>> params;
    std::vector<long> evaluations;
    std::uint64_t seed = 0;
};

/// Thrown when an optimizer aborts mid-sweep; carries the levels that did
/// complete.
class SolveError : public std::runtime_error {
  public:
    SolveError(const std::string& what, SpectrumResult partial)
        : std::runtime_error(what), partial_result(std::move(partial)) {}

    SpectrumResult partial_result;
};

/// <H> on the ansatz bound with theta.
double vqe_cost(std::span<const double> theta, const PauliSum& hamiltonian,
                const Circuit& ansatz, std::uint64_t shots,
                const Backend& backend, std::uint64_t rng_seed);

/// vqe_cost plus the beta-weighted clamped overlaps against all found levels.
double vqd_cost(std::span<const double> theta, const PauliSum& hamiltonian,
                const Circuit& ansatz, const DeflationState& deflation,
                OverlapMethod method, std::uint64_t shots,
                const Backend& backend, std::uint64_t rng_seed);

/// Sequential deflation: k_states levels, each minimized from a fresh
/// uniform [0, 2pi) start, energies recorded penalty-free. Deterministic for
/// a fixed options seed.
SpectrumResult solve_spectrum(const PauliSum& hamiltonian,
                              const Circuit& ansatz, std::size_t k_states,
                              const VqdOptions& options);

/// Independent sweeps with per-run seeds base_seed + run_index; runs execute
/// in parallel on up to `threads` workers (0 = hardware concurrency).
std::vector<SpectrumResult> solve_spectrum_runs(const PauliSum& hamiltonian,
                                                const Circuit& ansatz,
                                                std::size_t k_states,
                                                const VqdOptions& base,
                                                int runs, int threads = 0);

struct GapRunRecord {
    std::uint64_t seed = 0;
    std::vector<double> energies;  // discovery order
    double gap = 0.0;              // from the ascending-sorted energies
    long evaluations = 0;
    double wall_seconds = 0.0;
};

struct GapEstimate {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation, n-1 denominator
    std::vector<GapRunRecord> records;
};

/// Gap statistics over independent runs: each run solves gap.n + 2 levels,
/// sorts its energies and takes E_{n+1} - E_n.
GapEstimate estimate_gap(const PauliSum& hamiltonian, const Circuit& ansatz,
                         GapSpec gap, int runs, const VqdOptions& base,
                         int threads = 0);

} // namespace vqdgap
