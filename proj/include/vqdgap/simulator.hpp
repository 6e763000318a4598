#pragma once

#include "vqdgap/circuit.hpp"
#include "vqdgap/noise.hpp"
#include "vqdgap/pauli.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vqdgap {

/// All state indexing is little-endian: qubit 0 is the least significant bit
/// of the basis index, and character 0 of an outcome string.
inline constexpr std::size_t kMaxStatevectorQubits = 14;
inline constexpr std::size_t kMaxDensityQubits = 7;

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t num_qubits);
    StateVector(std::size_t num_qubits, Eigen::VectorXcd amplitudes);

    std::size_t num_qubits() const { return num_qubits_; }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }
    std::vector<double> probabilities() const;

  private:
    std::size_t num_qubits_;
    Eigen::VectorXcd amplitudes_;
};

class DensityMatrix {
  public:
    /// |0...0><0...0| on n qubits.
    explicit DensityMatrix(std::size_t num_qubits);
    /// Validates Hermiticity, unit trace and positivity.
    DensityMatrix(std::size_t num_qubits, Eigen::MatrixXcd elements);
    static DensityMatrix from_pure(const StateVector& state);

    std::size_t num_qubits() const { return num_qubits_; }
    const Eigen::MatrixXcd& elements() const { return elements_; }
    double trace_real() const { return elements_.trace().real(); }
    std::vector<double> probabilities() const;

  private:
    std::size_t num_qubits_;
    Eigen::MatrixXcd elements_;
};

/// Measurement record: outcome string (qubit 0 first) -> count.
struct ShotHistogram {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;

    /// Histogram over the given qubits only, in the given order.
    ShotHistogram marginal(std::span<const std::size_t> qubits) const;
};

std::string outcome_label(std::uint64_t index, std::size_t num_qubits);
std::uint64_t outcome_index(const std::string& label);

/// Execution target: exact statevector or density matrix with thermal
/// relaxation attached to every gate's operand qubits.
class Backend {
  public:
    static Backend ideal() { return Backend{}; }
    static Backend noisy(NoiseModel model) {
        Backend b;
        b.noise_ = std::move(model);
        return b;
    }

    bool is_noisy() const { return noise_.has_value(); }
    const NoiseModel* noise() const {
        return noise_ ? &*noise_ : nullptr;
    }

  private:
    std::optional<NoiseModel> noise_;
};

/// Applies the bound circuit to |0...0>.
StateVector run_statevector(const Circuit& circuit);

/// Density-matrix execution; when `noise` is set, each gate is followed by
/// the model's relaxation channel on every operand qubit.
DensityMatrix run_density(const Circuit& circuit, const NoiseModel* noise);

/// Computational-basis probabilities after executing on the backend.
std::vector<double> circuit_probabilities(const Circuit& circuit,
                                          const Backend& backend);

ShotHistogram sample_counts(const StateVector& state, std::uint64_t shots,
                            std::uint64_t rng_seed);
ShotHistogram sample_counts(const DensityMatrix& state, std::uint64_t shots,
                            std::uint64_t rng_seed);
ShotHistogram sample_circuit(const Circuit& circuit, const Backend& backend,
                             std::uint64_t shots, std::uint64_t rng_seed);

double expectation_exact(const StateVector& state, const PauliSum& sum);
double expectation_exact(const DensityMatrix& state, const PauliSum& sum);

/// Shot-based estimate of <H>: one basis-rotated execution per qubit-wise
/// commuting group, `shots` samples each. shots == 0 is infinite-shot mode
/// and returns the exact expectation on the backend's state.
double expectation_sampled(const Circuit& circuit, const PauliSum& sum,
                           std::uint64_t shots, const Backend& backend,
                           std::uint64_t rng_seed);

} // namespace vqdgap
