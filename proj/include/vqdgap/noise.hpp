#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace vqdgap {

/// Thermal-relaxation inputs. Times share one unit; temperature is kelvin and
/// qubit_frequency hertz. Physicality requires t2 <= 2*t1.
struct RelaxationParams {
    double t1 = 50e-6;
    double t2 = 70e-6;
    double gate_time = 50e-9;
    double temperature = 0.0;
    double qubit_frequency = 5.0e9;
};

/// Equilibrium excited-state population (1 + exp(2hf/kT))^-1; exactly 0 at
/// T = 0.
double excited_population(double temperature, double qubit_frequency);

/// Single-qubit channel as a list of 2x2 Kraus operators. Construction does
/// not enforce completeness; use validate_cptp for that.
class KrausChannel {
  public:
    explicit KrausChannel(std::vector<Eigen::Matrix2cd> operators);

    const std::vector<Eigen::Matrix2cd>& operators() const { return ops_; }
    std::size_t size() const { return ops_.size(); }

    /// Channel action sum_k K rho K^dagger on a single-qubit density matrix.
    Eigen::Matrix2cd apply(const Eigen::Matrix2cd& rho) const;

  private:
    std::vector<Eigen::Matrix2cd> ops_;
};

/// 4x4 Choi matrix with index convention C[(2i+k),(2j+l)] = <k|N(|i><j|)|l>
/// (input index slow, output index fast).
class ChoiMatrix {
  public:
    explicit ChoiMatrix(Eigen::Matrix4cd elements);

    const Eigen::Matrix4cd& elements() const { return m_; }

    static ChoiMatrix identity_channel();

  private:
    Eigen::Matrix4cd m_;
};

/// Thermal-relaxation channel. T2 <= T1 uses the probabilistic mixture of
/// identity, dephasing and reset-to-|0>; T2 > T1 goes through the Choi form.
/// Rejects t2 > 2*t1 (not completely positive).
KrausChannel thermal_relaxation_channel(const RelaxationParams& params);

/// Kraus operators from the Choi eigendecomposition; eigenvalues in
/// [-1e-9, 0] are clipped to zero, anything lower is a CP violation.
KrausChannel choi_to_kraus(const ChoiMatrix& choi);

/// Choi matrix of a Kraus channel (round-trip companion of choi_to_kraus).
ChoiMatrix kraus_to_choi(const KrausChannel& channel);

/// Max-norm completeness residual ||sum K^dagger K - I||_max.
double validate_cptp(const KrausChannel& channel);

/// Per-gate-class relaxation channels. Single-qubit gates relax operands for
/// tg_1q, multi-qubit gates (CNOT/SWAP/CSWAP) for tg_2q.
class NoiseModel {
  public:
    NoiseModel(double t1, double t2, double tg_1q, double tg_2q,
               double temperature = 0.0, double qubit_frequency = 5.0e9);

    const KrausChannel& channel_for_arity(int arity) const;
    const RelaxationParams& single_qubit_params() const { return params_1q_; }
    const RelaxationParams& multi_qubit_params() const { return params_2q_; }

  private:
    RelaxationParams params_1q_;
    RelaxationParams params_2q_;
    KrausChannel channel_1q_;
    KrausChannel channel_2q_;
};

} // namespace vqdgap
