#include "vqdgap/optimize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vqdgap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double checked_eval(const Objective& f, std::span<const double> x,
                    long& evaluations, double& running_min) {
    const double value = f(x);
    ++evaluations;
    if (!std::isfinite(value)) {
        throw std::runtime_error("objective returned a non-finite value after " +
                                 std::to_string(evaluations) + " evaluations");
    }
    running_min = std::min(running_min, value);
    return value;
}

std::vector<double> rademacher(std::size_t dim, std::mt19937_64& rng) {
    std::vector<double> delta(dim);
    for (double& d : delta) {
        d = (rng() & 1) ? 1.0 : -1.0;
    }
    return delta;
}

} // namespace

double spsa_calibrate_a(const Objective& f, std::span<const double> theta0,
                        double c, int n_samples, std::uint64_t rng_seed) {
    if (c <= 0.0) {
        throw std::invalid_argument("perturbation scale c must be positive");
    }
    if (n_samples < 1) {
        throw std::invalid_argument("calibration needs at least one sample");
    }
    std::mt19937_64 rng(rng_seed);
    long evaluations = 0;
    double running_min = std::numeric_limits<double>::infinity();
    std::vector<double> plus(theta0.begin(), theta0.end());
    std::vector<double> minus(theta0.begin(), theta0.end());
    double mean_diff = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const auto delta = rademacher(theta0.size(), rng);
        for (std::size_t j = 0; j < theta0.size(); ++j) {
            plus[j] = theta0[j] + c * delta[j];
            minus[j] = theta0[j] - c * delta[j];
        }
        mean_diff += std::abs(checked_eval(f, plus, evaluations, running_min) -
                              checked_eval(f, minus, evaluations, running_min));
    }
    mean_diff /= n_samples;
    if (mean_diff < 1e-300) {
        return kTwoPi / 10.0;
    }
    return (kTwoPi / 5.0) * c / mean_diff;
}

OptResult spsa_minimize(const Objective& f, std::vector<double> theta0,
                        const SpsaConfig& config) {
    const std::size_t dim = theta0.size();
    if (dim == 0) {
        throw std::invalid_argument("need at least one parameter");
    }
    if (config.c <= 0.0) {
        throw std::invalid_argument("perturbation scale c must be positive");
    }
    if (config.alpha <= 0.0 || config.alpha > 1.0 || config.gamma <= 0.0 ||
        config.gamma > 1.0) {
        throw std::invalid_argument("decay exponents must lie in (0, 1]");
    }
    if (config.avg_tail < 1 || config.avg_tail > config.max_iter) {
        throw std::invalid_argument("avg_tail must lie in [1, max_iter]");
    }

    OptResult result;
    double running_min = std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(config.rng_seed);
    double a = 0.0;
    if (config.a.has_value()) {
        a = *config.a;
    } else {
        // Calibration shares the seed stream's first value so the whole run
        // stays reproducible from one seed.
        a = spsa_calibrate_a(f, theta0, config.c, config.calibration_samples,
                             rng());
        result.evaluations += 2L * config.calibration_samples;
    }

    std::vector<double> theta = std::move(theta0);
    std::vector<double> plus(dim);
    std::vector<double> minus(dim);
    std::vector<double> tail_sum(dim, 0.0);
    std::vector<std::vector<double>> tail;
    tail.reserve(static_cast<std::size_t>(config.avg_tail));

    for (int i = 1; i <= config.max_iter; ++i) {
        const double c_i = config.c / std::pow(i, config.gamma);
        const double a_i = a / std::pow(i, config.alpha);
        const auto delta = rademacher(dim, rng);
        for (std::size_t j = 0; j < dim; ++j) {
            plus[j] = theta[j] + c_i * delta[j];
            minus[j] = theta[j] - c_i * delta[j];
        }
        const double f_plus = checked_eval(f, plus, result.evaluations, running_min);
        const double f_minus = checked_eval(f, minus, result.evaluations, running_min);
        const double diff = (f_plus - f_minus) / (2.0 * c_i);
        for (std::size_t j = 0; j < dim; ++j) {
            // delta entries are +-1, so dividing by delta[j] is multiplying.
            theta[j] -= a_i * diff * delta[j];
        }
        result.trace.push_back({0.5 * (f_plus + f_minus), a_i, c_i});
        ++result.iterations;
        if (i > config.max_iter - config.avg_tail) {
            tail.push_back(theta);
        }
    }

    for (const auto& iterate : tail) {
        for (std::size_t j = 0; j < dim; ++j) {
            tail_sum[j] += iterate[j];
        }
    }
    std::vector<double> averaged(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        averaged[j] = tail_sum[j] / static_cast<double>(tail.size());
    }
    checked_eval(f, averaged, result.evaluations, running_min);

    result.best_params = std::move(averaged);
    result.best_value = running_min;
    result.converged = true;
    return result;
}

OptResult cobyla_minimize(const Objective& f, std::vector<double> theta0,
                          const CobylaConfig& config) {
    const std::size_t dim = theta0.size();
    if (dim == 0) {
        throw std::invalid_argument("need at least one parameter");
    }
    if (!(config.rho_init > config.rho_end) || !(config.rho_end > 0.0)) {
        throw std::invalid_argument("need rho_init > rho_end > 0");
    }

    OptResult result;
    double running_min = std::numeric_limits<double>::infinity();

    // Simplex of dim+1 points; vertex 0 starts at theta0.
    std::vector<std::vector<double>> vertices;
    std::vector<double> values;
    vertices.reserve(dim + 1);
    values.reserve(dim + 1);

    double rho = config.rho_init;

    const auto rebuild_simplex = [&](const std::vector<double>& center,
                                     double center_value) {
        vertices.clear();
        values.clear();
        vertices.push_back(center);
        values.push_back(center_value);
        for (std::size_t j = 0; j < dim; ++j) {
            std::vector<double> v = center;
            v[j] += rho;
            values.push_back(checked_eval(f, v, result.evaluations, running_min));
            vertices.push_back(std::move(v));
        }
    };

    rebuild_simplex(theta0, checked_eval(f, theta0, result.evaluations, running_min));

    const auto best_index = [&]() {
        return static_cast<std::size_t>(
            std::min_element(values.begin(), values.end()) - values.begin());
    };
    const auto worst_index = [&]() {
        return static_cast<std::size_t>(
            std::max_element(values.begin(), values.end()) - values.begin());
    };

    while (result.iterations < config.max_iter && rho >= config.rho_end) {
        const std::size_t best = best_index();

        // Exact linear interpolant of f on the simplex, written around the
        // best vertex: f(best + d) ~ f(best) + g.d.
        Eigen::MatrixXd offsets(dim, dim);
        Eigen::VectorXd rises(dim);
        std::vector<std::size_t> vertex_of_column(dim);
        std::size_t col = 0;
        double max_offset = 0.0;
        std::size_t stale_vertex = 0;
        for (std::size_t v = 0; v <= dim; ++v) {
            if (v == best) {
                continue;
            }
            double norm2 = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                const double d = vertices[v][j] - vertices[best][j];
                offsets(static_cast<Eigen::Index>(j),
                        static_cast<Eigen::Index>(col)) = d;
                norm2 += d * d;
            }
            if (std::sqrt(norm2) > max_offset) {
                max_offset = std::sqrt(norm2);
                stale_vertex = v;
            }
            vertex_of_column[col] = v;
            rises(static_cast<Eigen::Index>(col)) = values[v] - values[best];
            ++col;
        }

        Eigen::FullPivLU<Eigen::MatrixXd> lu(offsets.transpose());
        const bool degenerate = !lu.isInvertible();
        if (degenerate || max_offset > 3.0 * rho) {
            // Geometry step: move the farthest vertex onto the direction
            // orthogonal to the remaining offsets, at the current scale.
            Eigen::VectorXd direction(dim);
            if (dim == 1) {
                direction(0) = 1.0;
            } else {
                Eigen::MatrixXd others(dim, dim - 1);
                std::size_t keep = 0;
                for (std::size_t c = 0; c < dim; ++c) {
                    if (vertex_of_column[c] == stale_vertex) {
                        continue;
                    }
                    others.col(static_cast<Eigen::Index>(keep++)) =
                        offsets.col(static_cast<Eigen::Index>(c));
                }
                const Eigen::HouseholderQR<Eigen::MatrixXd> qr(others);
                const Eigen::MatrixXd q = qr.householderQ();
                direction = q.col(static_cast<Eigen::Index>(dim - 1));
            }
            std::vector<double> refreshed = vertices[best];
            for (std::size_t j = 0; j < dim; ++j) {
                refreshed[j] += rho * direction(static_cast<Eigen::Index>(j));
            }
            values[stale_vertex] =
                checked_eval(f, refreshed, result.evaluations, running_min);
            vertices[stale_vertex] = std::move(refreshed);
            ++result.iterations;
            result.trace.push_back({values[stale_vertex], rho, 0.0});
            continue;
        }
        const Eigen::VectorXd gradient = lu.solve(rises);
        const double gradient_norm = gradient.norm();

        if (gradient_norm < 1e-14) {
            rho *= 0.5;
            ++result.iterations;
            result.trace.push_back({values[best], rho, 0.0});
            continue;
        }

        std::vector<double> candidate(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            candidate[j] = vertices[best][j] -
                           rho * gradient(static_cast<Eigen::Index>(j)) /
                               gradient_norm;
        }
        const double candidate_value =
            checked_eval(f, candidate, result.evaluations, running_min);

        bool improved = candidate_value < values[best];
        if (!improved) {
            // A stale low sample on the best vertex blocks progress when
            // evaluations are stochastic; confirm the failure against a
            // fresh sample before shrinking the trust region. Deterministic
            // objectives return the same value and halve exactly as before.
            values[best] =
                checked_eval(f, vertices[best], result.evaluations, running_min);
            improved = candidate_value < values[best];
        }
        const std::size_t worst = worst_index();
        if (candidate_value < values[worst]) {
            vertices[worst] = std::move(candidate);
            values[worst] = candidate_value;
        }
        if (!improved) {
            rho *= 0.5;
        }
        ++result.iterations;
        result.trace.push_back({candidate_value, rho, 0.0});
    }

    const std::size_t best = best_index();
    result.best_params = vertices[best];
    result.best_value = running_min;
    result.converged = rho < config.rho_end;
    return result;
}

} // namespace vqdgap
