#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vqdgap {

/// Dense-matrix feasibility guard shared by to_matrix and eigenspectrum.
inline constexpr std::size_t kMaxDenseQubits = 12;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// The 2x2 matrix of a single Pauli operator.
Eigen::Matrix2cd pauli_matrix(Pauli p);

/// A tensor product of single-qubit Pauli operators. Position in the label is
/// the qubit index (qubit 0 first); carries no phase or coefficient.
class PauliString {
  public:
    explicit PauliString(std::vector<Pauli> ops);
    static PauliString from_label(std::string_view label);

    std::size_t num_qubits() const { return ops_.size(); }
    Pauli op(std::size_t qubit) const { return ops_.at(qubit); }
    const std::vector<Pauli>& ops() const { return ops_; }
    bool is_identity() const;
    std::string label() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;
    friend auto operator<=>(const PauliString&, const PauliString&) = default;

  private:
    std::vector<Pauli> ops_;
};

struct PauliTerm {
    double coefficient = 0.0;
    PauliString string;
};

/// Real-weighted sum of Pauli strings over a fixed qubit count. Terms are kept
/// in canonical form: sorted lexicographically by label, duplicates merged,
/// exact-zero coefficients dropped. Real weights make the operator Hermitian.
class PauliSum {
  public:
    PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms);
    static PauliSum from_labels(
        std::size_t num_qubits,
        const std::vector<std::pair<double, std::string>>& weighted_labels);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    PauliSum scaled(double factor) const;

    friend bool operator==(const PauliSum&, const PauliSum&) = default;

  private:
    std::size_t num_qubits_;
    std::vector<PauliTerm> terms_;
};

/// One simultaneously-measurable set of terms: every member string is diagonal
/// once each qubit is rotated into `basis` (member ops are I or the basis
/// label at every qubit). Qubits unconstrained by all members default to Z.
struct MeasurementGroup {
    std::vector<Pauli> basis;
    std::vector<std::size_t> members;
};

/// Dense 2^n x 2^n matrix of the sum, little-endian qubit ordering
/// (qubit 0 = least significant index bit). Hermitian for real weights.
Eigen::MatrixXcd to_matrix(const PauliSum& sum);

/// Full real spectrum, ascending. The exact-diagonalization oracle.
std::vector<double> eigenspectrum(const PauliSum& sum);

/// Greedy first-fit partition of the terms into qubit-wise commuting groups.
std::vector<MeasurementGroup> group_qubitwise_commuting(const PauliSum& sum);

/// 2 * sum |c_i|, an upper bound on the spectral spread E_max - E_min.
double beta_bound(const PauliSum& sum);

} // namespace vqdgap
