#include "vqdgap/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vqdgap {

namespace {

using std::complex;
using namespace std::complex_literals;

constexpr double kNormTolerance = 1e-10;

std::uint64_t dimension(std::size_t num_qubits) {
    return std::uint64_t(1) << num_qubits;
}

void check_bound(const Circuit& circuit) {
    if (!circuit.is_bound()) {
        throw std::invalid_argument("circuit has unbound parameters");
    }
}

Eigen::Matrix2cd single_qubit_matrix(const Gate& gate) {
    Eigen::Matrix2cd m;
    switch (gate.kind) {
    case GateKind::RY: {
        const double half = 0.5 * *gate.angle;
        m << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
        return m;
    }
    case GateKind::RZ: {
        const double half = 0.5 * *gate.angle;
        m << std::exp(-1.0i * half), 0.0, 0.0, std::exp(1.0i * half);
        return m;
    }
    case GateKind::H: {
        const double s = 1.0 / std::numbers::sqrt2;
        m << s, s, s, -s;
        return m;
    }
    case GateKind::X:
        m << 0, 1, 1, 0;
        return m;
    default:
        throw std::logic_error("not a single-qubit gate");
    }
}

// Basis-index image of the permutation gates. Identity for other kinds.
std::uint64_t permute_index(const Gate& gate, std::uint64_t index) {
    switch (gate.kind) {
    case GateKind::CNOT: {
        const std::uint64_t control = std::uint64_t(1) << gate.qubits[0];
        const std::uint64_t target = std::uint64_t(1) << gate.qubits[1];
        return (index & control) ? index ^ target : index;
    }
    case GateKind::SWAP:
    case GateKind::CSWAP: {
        const int base = gate.kind == GateKind::CSWAP ? 1 : 0;
        if (gate.kind == GateKind::CSWAP &&
            !(index & (std::uint64_t(1) << gate.qubits[0]))) {
            return index;
        }
        const std::uint64_t a = std::uint64_t(1) << gate.qubits[base];
        const std::uint64_t b = std::uint64_t(1) << gate.qubits[base + 1];
        const bool bit_a = index & a;
        const bool bit_b = index & b;
        if (bit_a == bit_b) {
            return index;
        }
        return index ^ a ^ b;
    }
    default:
        return index;
    }
}

void apply_gate(Eigen::VectorXcd& amps, const Gate& gate) {
    const auto dim = static_cast<std::uint64_t>(amps.size());
    if (gate_arity(gate.kind) == 1) {
        const Eigen::Matrix2cd m = single_qubit_matrix(gate);
        const std::uint64_t bit = std::uint64_t(1) << gate.qubits[0];
        for (std::uint64_t i = 0; i < dim; ++i) {
            if (i & bit) {
                continue;
            }
            const complex<double> a0 = amps(static_cast<Eigen::Index>(i));
            const complex<double> a1 = amps(static_cast<Eigen::Index>(i | bit));
            amps(static_cast<Eigen::Index>(i)) = m(0, 0) * a0 + m(0, 1) * a1;
            amps(static_cast<Eigen::Index>(i | bit)) = m(1, 0) * a0 + m(1, 1) * a1;
        }
        return;
    }
    // CNOT/SWAP/CSWAP are basis permutations.
    for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t j = permute_index(gate, i);
        if (j > i) {
            std::swap(amps(static_cast<Eigen::Index>(i)),
                      amps(static_cast<Eigen::Index>(j)));
        }
    }
}

// rho -> M rho M^dagger for a single-qubit operator M (unitary or Kraus).
void conjugate_single_qubit(Eigen::MatrixXcd& rho, const Eigen::Matrix2cd& m,
                            std::uint32_t qubit) {
    const auto dim = static_cast<std::uint64_t>(rho.rows());
    const std::uint64_t bit = std::uint64_t(1) << qubit;
    // Left factor: transform row pairs in every column.
    for (std::uint64_t col = 0; col < dim; ++col) {
        for (std::uint64_t i = 0; i < dim; ++i) {
            if (i & bit) {
                continue;
            }
            const auto r0 = rho(static_cast<Eigen::Index>(i),
                                static_cast<Eigen::Index>(col));
            const auto r1 = rho(static_cast<Eigen::Index>(i | bit),
                                static_cast<Eigen::Index>(col));
            rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) =
                m(0, 0) * r0 + m(0, 1) * r1;
            rho(static_cast<Eigen::Index>(i | bit),
                static_cast<Eigen::Index>(col)) = m(1, 0) * r0 + m(1, 1) * r1;
        }
    }
    // Right factor M^dagger: transform column pairs in every row.
    for (std::uint64_t row = 0; row < dim; ++row) {
        for (std::uint64_t j = 0; j < dim; ++j) {
            if (j & bit) {
                continue;
            }
            const auto c0 = rho(static_cast<Eigen::Index>(row),
                                static_cast<Eigen::Index>(j));
            const auto c1 = rho(static_cast<Eigen::Index>(row),
                                static_cast<Eigen::Index>(j | bit));
            rho(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) =
                c0 * std::conj(m(0, 0)) + c1 * std::conj(m(0, 1));
            rho(static_cast<Eigen::Index>(row),
                static_cast<Eigen::Index>(j | bit)) =
                c0 * std::conj(m(1, 0)) + c1 * std::conj(m(1, 1));
        }
    }
}

void apply_gate(Eigen::MatrixXcd& rho, const Gate& gate) {
    if (gate_arity(gate.kind) == 1) {
        conjugate_single_qubit(rho, single_qubit_matrix(gate), gate.qubits[0]);
        return;
    }
    const auto dim = static_cast<std::uint64_t>(rho.rows());
    Eigen::MatrixXcd out(rho.rows(), rho.cols());
    for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t pi = permute_index(gate, i);
        for (std::uint64_t j = 0; j < dim; ++j) {
            out(static_cast<Eigen::Index>(pi),
                static_cast<Eigen::Index>(permute_index(gate, j))) =
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    rho = std::move(out);
}

void apply_channel(Eigen::MatrixXcd& rho, const KrausChannel& channel,
                   std::uint32_t qubit) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (const auto& op : channel.operators()) {
        Eigen::MatrixXcd branch = rho;
        conjugate_single_qubit(branch, op, qubit);
        acc += branch;
    }
    rho = std::move(acc);
}

std::vector<double> clipped_probabilities(std::vector<double> probs) {
    double total = 0.0;
    for (double& p : probs) {
        if (p < 0.0) {
            p = 0.0;
        }
        total += p;
    }
    if (total <= 0.0) {
        throw std::runtime_error("state has no probability mass");
    }
    for (double& p : probs) {
        p /= total;
    }
    return probs;
}

// One uniform double in [0, 1) from the top 53 bits of the generator.
double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::uint64_t> sample_indices(const std::vector<double>& raw_probs,
                                          std::uint64_t shots,
                                          std::uint64_t rng_seed) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    const std::vector<double> probs = clipped_probabilities(raw_probs);
    std::vector<double> cumulative(probs.size());
    double running = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        running += probs[i];
        cumulative[i] = running;
    }
    cumulative.back() = 1.0;

    std::mt19937_64 rng(rng_seed);
    std::vector<std::uint64_t> counts(probs.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform_unit(rng);
        const auto it =
            std::upper_bound(cumulative.begin(), cumulative.end(), u);
        counts[static_cast<std::size_t>(it - cumulative.begin())] += 1;
    }
    return counts;
}

ShotHistogram histogram_from_counts(const std::vector<std::uint64_t>& counts,
                                    std::size_t num_qubits,
                                    std::uint64_t shots) {
    ShotHistogram hist;
    hist.shots = shots;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) {
            hist.counts[outcome_label(i, num_qubits)] = counts[i];
        }
    }
    return hist;
}

struct TermMasks {
    std::uint64_t flip = 0;  // X and Y positions
    std::uint64_t y = 0;
    std::uint64_t phase_sign = 0;  // Y and Z positions
    std::uint64_t support = 0;     // non-identity positions
};

TermMasks term_masks(const PauliString& str) {
    TermMasks masks;
    for (std::size_t q = 0; q < str.num_qubits(); ++q) {
        const std::uint64_t bit = std::uint64_t(1) << q;
        switch (str.op(q)) {
        case Pauli::I:
            break;
        case Pauli::X:
            masks.flip |= bit;
            masks.support |= bit;
            break;
        case Pauli::Y:
            masks.flip |= bit;
            masks.y |= bit;
            masks.phase_sign |= bit;
            masks.support |= bit;
            break;
        case Pauli::Z:
            masks.phase_sign |= bit;
            masks.support |= bit;
            break;
        }
    }
    return masks;
}

// Phase of P|i> = phase(i) |i ^ flip>.
complex<double> term_phase(const TermMasks& masks, std::uint64_t index) {
    static constexpr complex<double> kIPowers[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const int y_count = std::popcount(masks.y);
    const int sign = std::popcount(index & masks.phase_sign) & 1;
    complex<double> phase = kIPowers[y_count & 3];
    return sign ? -phase : phase;
}

} // namespace

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits),
      amplitudes_(Eigen::VectorXcd::Zero(
          static_cast<Eigen::Index>(dimension(num_qubits)))) {
    if (num_qubits_ == 0 || num_qubits_ > kMaxStatevectorQubits) {
        throw std::domain_error("statevector qubit count out of range");
    }
    amplitudes_(0) = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, Eigen::VectorXcd amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits_ == 0 || num_qubits_ > kMaxStatevectorQubits) {
        throw std::domain_error("statevector qubit count out of range");
    }
    if (amplitudes_.size() !=
        static_cast<Eigen::Index>(dimension(num_qubits_))) {
        throw std::invalid_argument("amplitude vector has wrong dimension");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("statevector is not normalized");
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(static_cast<std::size_t>(amplitudes_.size()));
    for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
        probs[static_cast<std::size_t>(i)] = std::norm(amplitudes_(i));
    }
    return probs;
}

DensityMatrix::DensityMatrix(std::size_t num_qubits)
    : num_qubits_(num_qubits),
      elements_(Eigen::MatrixXcd::Zero(
          static_cast<Eigen::Index>(dimension(num_qubits)),
          static_cast<Eigen::Index>(dimension(num_qubits)))) {
    if (num_qubits_ == 0 || num_qubits_ > kMaxDensityQubits) {
        throw std::domain_error("density matrix qubit count out of range");
    }
    elements_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(std::size_t num_qubits, Eigen::MatrixXcd elements)
    : num_qubits_(num_qubits), elements_(std::move(elements)) {
    if (num_qubits_ == 0 || num_qubits_ > kMaxDensityQubits) {
        throw std::domain_error("density matrix qubit count out of range");
    }
    const auto dim = static_cast<Eigen::Index>(dimension(num_qubits_));
    if (elements_.rows() != dim || elements_.cols() != dim) {
        throw std::invalid_argument("density matrix has wrong dimension");
    }
    if ((elements_ - elements_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(elements_.trace().real() - 1.0) > 1e-10 ||
        std::abs(elements_.trace().imag()) > 1e-10) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        elements_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success ||
        solver.eigenvalues().minCoeff() < -1e-9) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& state) {
    return DensityMatrix(state.num_qubits(),
                         state.amplitudes() * state.amplitudes().adjoint());
}

std::vector<double> DensityMatrix::probabilities() const {
    std::vector<double> probs(static_cast<std::size_t>(elements_.rows()));
    for (Eigen::Index i = 0; i < elements_.rows(); ++i) {
        probs[static_cast<std::size_t>(i)] = elements_(i, i).real();
    }
    return probs;
}

ShotHistogram ShotHistogram::marginal(std::span<const std::size_t> qubits) const {
    ShotHistogram out;
    out.shots = shots;
    for (const auto& [label, count] : counts) {
        std::string key;
        key.reserve(qubits.size());
        for (std::size_t q : qubits) {
            if (q >= label.size()) {
                throw std::invalid_argument("marginal qubit out of range");
            }
            key.push_back(label[q]);
        }
        out.counts[key] += count;
    }
    return out;
}

std::string outcome_label(std::uint64_t index, std::size_t num_qubits) {
    std::string label(num_qubits, '0');
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (index & (std::uint64_t(1) << q)) {
            label[q] = '1';
        }
    }
    return label;
}

std::uint64_t outcome_index(const std::string& label) {
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < label.size(); ++q) {
        if (label[q] == '1') {
            index |= std::uint64_t(1) << q;
        } else if (label[q] != '0') {
            throw std::invalid_argument("outcome label must be binary");
        }
    }
    return index;
}

StateVector run_statevector(const Circuit& circuit) {
    check_bound(circuit);
    if (circuit.num_qubits() > kMaxStatevectorQubits) {
        throw std::domain_error("statevector backend limited to " +
                                std::to_string(kMaxStatevectorQubits) +
                                " qubits");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(
        static_cast<Eigen::Index>(dimension(circuit.num_qubits())));
    amps(0) = 1.0;
    for (const auto& gate : circuit.gates()) {
        apply_gate(amps, gate);
    }
    return StateVector(circuit.num_qubits(), std::move(amps));
}

DensityMatrix run_density(const Circuit& circuit, const NoiseModel* noise) {
    check_bound(circuit);
    if (circuit.num_qubits() > kMaxDensityQubits) {
        throw std::domain_error("density backend limited to " +
                                std::to_string(kMaxDensityQubits) + " qubits");
    }
    const auto dim = static_cast<Eigen::Index>(dimension(circuit.num_qubits()));
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho(0, 0) = 1.0;
    for (const auto& gate : circuit.gates()) {
        apply_gate(rho, gate);
        if (noise != nullptr) {
            const KrausChannel& channel =
                noise->channel_for_arity(gate_arity(gate.kind));
            for (std::uint32_t q : gate.operands()) {
                apply_channel(rho, channel, q);
            }
        }
    }
    return DensityMatrix(circuit.num_qubits(), std::move(rho));
}

std::vector<double> circuit_probabilities(const Circuit& circuit,
                                          const Backend& backend) {
    if (backend.is_noisy()) {
        return run_density(circuit, backend.noise()).probabilities();
    }
    return run_statevector(circuit).probabilities();
}

ShotHistogram sample_counts(const StateVector& state, std::uint64_t shots,
                            std::uint64_t rng_seed) {
    return histogram_from_counts(
        sample_indices(state.probabilities(), shots, rng_seed),
        state.num_qubits(), shots);
}

ShotHistogram sample_counts(const DensityMatrix& state, std::uint64_t shots,
                            std::uint64_t rng_seed) {
    return histogram_from_counts(
        sample_indices(state.probabilities(), shots, rng_seed),
        state.num_qubits(), shots);
}

ShotHistogram sample_circuit(const Circuit& circuit, const Backend& backend,
                             std::uint64_t shots, std::uint64_t rng_seed) {
    return histogram_from_counts(
        sample_indices(circuit_probabilities(circuit, backend), shots,
                       rng_seed),
        circuit.num_qubits(), shots);
}

double expectation_exact(const StateVector& state, const PauliSum& sum) {
    if (sum.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("operator and state qubit counts differ");
    }
    const auto& amps = state.amplitudes();
    complex<double> total = 0.0;
    for (const auto& term : sum.terms()) {
        const TermMasks masks = term_masks(term.string);
        complex<double> value = 0.0;
        for (std::uint64_t i = 0;
             i < static_cast<std::uint64_t>(amps.size()); ++i) {
            value += std::conj(amps(static_cast<Eigen::Index>(i ^ masks.flip))) *
                     term_phase(masks, i) * amps(static_cast<Eigen::Index>(i));
        }
        total += term.coefficient * value;
    }
    return total.real();
}

double expectation_exact(const DensityMatrix& state, const PauliSum& sum) {
    if (sum.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("operator and state qubit counts differ");
    }
    const auto& rho = state.elements();
    complex<double> total = 0.0;
    for (const auto& term : sum.terms()) {
        const TermMasks masks = term_masks(term.string);
        complex<double> value = 0.0;
        for (std::uint64_t i = 0;
             i < static_cast<std::uint64_t>(rho.rows()); ++i) {
            value += term_phase(masks, i) *
                     rho(static_cast<Eigen::Index>(i),
                         static_cast<Eigen::Index>(i ^ masks.flip));
        }
        total += term.coefficient * value;
    }
    return total.real();
}

double expectation_sampled(const Circuit& circuit, const PauliSum& sum,
                           std::uint64_t shots, const Backend& backend,
                           std::uint64_t rng_seed) {
    check_bound(circuit);
    if (sum.num_qubits() != circuit.num_qubits()) {
        throw std::invalid_argument("operator and circuit qubit counts differ");
    }
    if (shots == 0) {
        if (backend.is_noisy()) {
            return expectation_exact(run_density(circuit, backend.noise()), sum);
        }
        return expectation_exact(run_statevector(circuit), sum);
    }
    const auto groups = group_qubitwise_commuting(sum);
    double total = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const Circuit rotated = append_basis_rotation(circuit, groups[g].basis);
        const auto counts = sample_indices(
            circuit_probabilities(rotated, backend), shots, rng_seed + g);
        for (std::size_t member : groups[g].members) {
            const auto& term = sum.terms()[member];
            const TermMasks masks = term_masks(term.string);
            std::int64_t signed_sum = 0;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                if (counts[i] == 0) {
                    continue;
                }
                const int parity = std::popcount(i & masks.support) & 1;
                signed_sum += parity ? -static_cast<std::int64_t>(counts[i])
                                     : static_cast<std::int64_t>(counts[i]);
            }
            total += term.coefficient * static_cast<double>(signed_sum) /
                     static_cast<double>(shots);
        }
    }
    return total;
}

} // namespace vqdgap
