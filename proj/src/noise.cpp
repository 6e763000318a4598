#include "vqdgap/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace vqdgap {

namespace {

// 2019 SI exact values.
constexpr double kPlanck = 6.62607015e-34;
constexpr double kBoltzmann = 1.380649e-23;

constexpr double kKrausDropTolerance = 1e-12;
constexpr double kChoiNegativeTolerance = 1e-9;

void check_relaxation_params(const RelaxationParams& p) {
    if (!(p.t1 > 0.0) || !(p.t2 > 0.0)) {
        throw std::invalid_argument("relaxation times must be positive");
    }
    if (p.gate_time < 0.0) {
        throw std::invalid_argument("gate time must be nonnegative");
    }
    if (p.t2 > 2.0 * p.t1) {
        throw std::domain_error("t2 > 2*t1 violates complete positivity");
    }
}

} // namespace

double excited_population(double temperature, double qubit_frequency) {
    if (temperature < 0.0) {
        throw std::invalid_argument("temperature must be nonnegative");
    }
    if (!(qubit_frequency > 0.0)) {
        throw std::invalid_argument("qubit frequency must be positive");
    }
    if (temperature == 0.0) {
        return 0.0;
    }
    const double exponent =
        2.0 * kPlanck * qubit_frequency / (kBoltzmann * temperature);
    if (exponent > 700.0) {
        return 0.0;
    }
    return 1.0 / (1.0 + std::exp(exponent));
}

KrausChannel::KrausChannel(std::vector<Eigen::Matrix2cd> operators)
    : ops_(std::move(operators)) {
    if (ops_.empty()) {
        throw std::invalid_argument("Kraus channel needs at least one operator");
    }
    for (const auto& op : ops_) {
        if (!op.allFinite()) {
            throw std::invalid_argument("Kraus operator entries must be finite");
        }
    }
}

Eigen::Matrix2cd KrausChannel::apply(const Eigen::Matrix2cd& rho) const {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (const auto& op : ops_) {
        out += op * rho * op.adjoint();
    }
    return out;
}

ChoiMatrix::ChoiMatrix(Eigen::Matrix4cd elements) : m_(std::move(elements)) {
    if (!m_.allFinite()) {
        throw std::invalid_argument("Choi matrix entries must be finite");
    }
}

ChoiMatrix ChoiMatrix::identity_channel() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 1.0;
    return ChoiMatrix(m);
}

KrausChannel thermal_relaxation_channel(const RelaxationParams& params) {
    check_relaxation_params(params);
    const double eps_t1 = std::exp(-params.gate_time / params.t1);
    const double eps_t2 = std::exp(-params.gate_time / params.t2);
    const double p_reset = 1.0 - eps_t1;

    if (params.t2 <= params.t1) {
        const double p_z = 0.5 * (1.0 - p_reset) * (1.0 - eps_t2 / eps_t1);
        const double p_i = 1.0 - p_z - p_reset;
        std::vector<Eigen::Matrix2cd> ops;
        if (p_i > kKrausDropTolerance) {
            ops.push_back(std::sqrt(p_i) * Eigen::Matrix2cd::Identity());
        }
        if (p_z > kKrausDropTolerance) {
            Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
            z(0, 0) = 1.0;
            z(1, 1) = -1.0;
            ops.push_back(std::sqrt(p_z) * z);
        }
        if (p_reset > kKrausDropTolerance) {
            // Reset-to-|0> as the trace-preserving projector pair
            // {|0><0|, |0><1|}, each weighted sqrt(p_reset).
            Eigen::Matrix2cd k00 = Eigen::Matrix2cd::Zero();
            k00(0, 0) = 1.0;
            Eigen::Matrix2cd k01 = Eigen::Matrix2cd::Zero();
            k01(0, 1) = 1.0;
            ops.push_back(std::sqrt(p_reset) * k00);
            ops.push_back(std::sqrt(p_reset) * k01);
        }
        if (ops.empty()) {
            ops.push_back(Eigen::Matrix2cd::Identity());
        }
        return KrausChannel(std::move(ops));
    }

    Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
    choi(0, 0) = 1.0;
    choi(0, 3) = eps_t2;
    choi(3, 0) = eps_t2;
    choi(2, 2) = p_reset;
    choi(3, 3) = 1.0 - p_reset;
    return choi_to_kraus(ChoiMatrix(choi));
}

KrausChannel choi_to_kraus(const ChoiMatrix& choi) {
    const Eigen::Matrix4cd& c = choi.elements();
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("Choi matrix must be Hermitian");
    }
    // Trace preservation: partial trace over the output index is identity.
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            std::complex<double> sum = 0.0;
            for (int k = 0; k < 2; ++k) {
                sum += c(2 * i + k, 2 * j + k);
            }
            const std::complex<double> expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(sum - expected) > 1e-9) {
                throw std::invalid_argument("Choi matrix is not trace-preserving");
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(c);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("Choi eigendecomposition failed");
    }
    std::vector<Eigen::Matrix2cd> ops;
    for (int k = 0; k < 4; ++k) {
        double lambda = solver.eigenvalues()(k);
        if (lambda < -kChoiNegativeTolerance) {
            throw std::domain_error("Choi matrix has a negative eigenvalue: "
                                    "channel is not completely positive");
        }
        if (lambda < 0.0) {
            lambda = 0.0;
        }
        if (lambda <= kKrausDropTolerance) {
            continue;
        }
        const Eigen::Vector4cd v = solver.eigenvectors().col(k);
        Eigen::Matrix2cd op;
        // v[(2*input + output)]; column-major over the input index.
        for (int in = 0; in < 2; ++in) {
            for (int out = 0; out < 2; ++out) {
                op(out, in) = std::sqrt(lambda) * v(2 * in + out);
            }
        }
        ops.push_back(op);
    }
    if (ops.empty()) {
        throw std::domain_error("Choi matrix has no significant eigenvalues");
    }
    return KrausChannel(std::move(ops));
}

ChoiMatrix kraus_to_choi(const KrausChannel& channel) {
    Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
    for (const auto& op : channel.operators()) {
        Eigen::Vector4cd v;
        for (int in = 0; in < 2; ++in) {
            for (int out = 0; out < 2; ++out) {
                v(2 * in + out) = op(out, in);
            }
        }
        c += v * v.adjoint();
    }
    return ChoiMatrix(c);
}

double validate_cptp(const KrausChannel& channel) {
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto& op : channel.operators()) {
        sum += op.adjoint() * op;
    }
    return (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

NoiseModel::NoiseModel(double t1, double t2, double tg_1q, double tg_2q,
                       double temperature, double qubit_frequency)
    : params_1q_{t1, t2, tg_1q, temperature, qubit_frequency},
      params_2q_{t1, t2, tg_2q, temperature, qubit_frequency},
      channel_1q_(thermal_relaxation_channel(params_1q_)),
      channel_2q_(thermal_relaxation_channel(params_2q_)) {
    if (validate_cptp(channel_1q_) > 1e-9 || validate_cptp(channel_2q_) > 1e-9) {
        throw std::domain_error("noise model channels fail CPTP validation");
    }
}

const KrausChannel& NoiseModel::channel_for_arity(int arity) const {
    return arity <= 1 ? channel_1q_ : channel_2q_;
}

} // namespace vqdgap
