#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace vqdgap {

using Objective = std::function<double(std::span<const double>)>;

/// Hyperparameters of the simultaneous-perturbation optimizer. `a` empty
/// means calibrate the learning-rate scale from finite differences at the
/// start point.
struct SpsaConfig {
    double c = 0.7;
    std::optional<double> a{};
    double alpha = 0.602;
    double gamma = 0.101;
    int max_iter = 300;
    int avg_tail = 25;
    int calibration_samples = 25;
    std::uint64_t rng_seed = 0;
};

/// Linear-interpolation trust-region optimizer settings. The radius starts at
/// rho_init and halves on non-improving steps until it drops below rho_end.
struct CobylaConfig {
    double rho_init = 1.0;
    double rho_end = 1e-5;
    int max_iter = 500;
};

struct IterationRecord {
    double value = 0.0;
    double step_scale = 0.0;     // a_i for SPSA, rho for the trust region
    double perturb_scale = 0.0;  // c_i for SPSA, 0 otherwise
};

struct OptResult {
    std::vector<double> best_params;
    double best_value = 0.0;
    int iterations = 0;
    long evaluations = 0;
    bool converged = false;
    std::vector<IterationRecord> trace;
};

/// Learning-rate calibration: a = (2pi/5) * c / mean_k |f(x + c D_k) - f(x - c D_k)|
/// over `n_samples` random sign vectors D_k; falls back to 2pi/10 when the
/// mean difference underflows.
double spsa_calibrate_a(const Objective& f, std::span<const double> theta0,
                        double c, int n_samples, std::uint64_t rng_seed);

/// Stochastic-approximation descent with two evaluations per iteration and
/// decaying sequences c_i = c/i^gamma, a_i = a/i^alpha. Returns the mean of
/// the trailing avg_tail iterates as best_params.
OptResult spsa_minimize(const Objective& f, std::vector<double> theta0,
                        const SpsaConfig& config);

/// Derivative-free minimization through linear interpolation on a simplex
/// with trust-region steps. Deterministic given theta0.
OptResult cobyla_minimize(const Objective& f, std::vector<double> theta0,
                          const CobylaConfig& config);

} // namespace vqdgap
