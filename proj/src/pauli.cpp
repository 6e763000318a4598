#include "vqdgap/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqdgap {

namespace {

using namespace std::complex_literals;

void check_dense_guard(std::size_t num_qubits) {
    if (num_qubits > kMaxDenseQubits) {
        throw std::domain_error("dense operation limited to " +
                                std::to_string(kMaxDenseQubits) +
                                " qubits, got " + std::to_string(num_qubits));
    }
}

} // namespace

char pauli_char(Pauli p) {
    switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
    }
    throw std::invalid_argument("unknown Pauli op");
}

Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default:
        throw std::invalid_argument(std::string("invalid Pauli label char '") +
                                    c + "'");
    }
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (p) {
    case Pauli::I:
        m << 1, 0, 0, 1;
        break;
    case Pauli::X:
        m << 0, 1, 1, 0;
        break;
    case Pauli::Y:
        m << 0.0, -1.0i, 1.0i, 0.0;
        break;
    case Pauli::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw std::invalid_argument("PauliString needs at least one qubit");
    }
}

PauliString PauliString::from_label(std::string_view label) {
    std::vector<Pauli> ops;
    ops.reserve(label.size());
    for (char c : label) {
        ops.push_back(pauli_from_char(c));
    }
    return PauliString(std::move(ops));
}

bool PauliString::is_identity() const {
    return std::all_of(ops_.begin(), ops_.end(),
                       [](Pauli p) { return p == Pauli::I; });
}

std::string PauliString::label() const {
    std::string s;
    s.reserve(ops_.size());
    for (Pauli p : ops_) {
        s.push_back(pauli_char(p));
    }
    return s;
}

PauliSum::PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
    if (num_qubits_ == 0) {
        throw std::invalid_argument("PauliSum needs at least one qubit");
    }
    for (const auto& term : terms_) {
        if (term.string.num_qubits() != num_qubits_) {
            throw std::invalid_argument(
                "PauliSum term '" + term.string.label() + "' has length " +
                std::to_string(term.string.num_qubits()) + ", expected " +
                std::to_string(num_qubits_));
        }
        if (!std::isfinite(term.coefficient)) {
            throw std::invalid_argument("PauliSum coefficient must be finite");
        }
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const PauliTerm& a, const PauliTerm& b) {
                  return a.string < b.string;
              });
    std::vector<PauliTerm> merged;
    merged.reserve(terms_.size());
    for (auto& term : terms_) {
        if (!merged.empty() && merged.back().string == term.string) {
            merged.back().coefficient += term.coefficient;
        } else {
            merged.push_back(std::move(term));
        }
    }
    std::erase_if(merged,
                  [](const PauliTerm& t) { return t.coefficient == 0.0; });
    terms_ = std::move(merged);
}

PauliSum PauliSum::from_labels(
    std::size_t num_qubits,
    const std::vector<std::pair<double, std::string>>& weighted_labels) {
    std::vector<PauliTerm> terms;
    terms.reserve(weighted_labels.size());
    for (const auto& [coeff, label] : weighted_labels) {
        terms.push_back({coeff, PauliString::from_label(label)});
    }
    return PauliSum(num_qubits, std::move(terms));
}

PauliSum PauliSum::scaled(double factor) const {
    std::vector<PauliTerm> terms = terms_;
    for (auto& term : terms) {
        term.coefficient *= factor;
    }
    return PauliSum(num_qubits_, std::move(terms));
}

Eigen::MatrixXcd to_matrix(const PauliSum& sum) {
    check_dense_guard(sum.num_qubits());
    const Eigen::Index dim = Eigen::Index(1) << sum.num_qubits();
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& term : sum.terms()) {
        // Little-endian: qubit 0 is the least significant index bit, so it is
        // the rightmost Kronecker factor and later qubits wrap around it.
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
        for (std::size_t q = 0; q < sum.num_qubits(); ++q) {
            const Eigen::Matrix2cd p = pauli_matrix(term.string.op(q));
            Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
            next.topLeftCorner(acc.rows(), acc.cols()) = p(0, 0) * acc;
            next.topRightCorner(acc.rows(), acc.cols()) = p(0, 1) * acc;
            next.bottomLeftCorner(acc.rows(), acc.cols()) = p(1, 0) * acc;
            next.bottomRightCorner(acc.rows(), acc.cols()) = p(1, 1) * acc;
            acc = std::move(next);
        }
        result += term.coefficient * acc;
    }
    return result;
}

std::vector<double> eigenspectrum(const PauliSum& sum) {
    const Eigen::MatrixXcd h = to_matrix(sum);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric eigensolver failed to converge");
    }
    const auto& vals = solver.eigenvalues();
    return std::vector<double>(vals.data(), vals.data() + vals.size());
}

std::vector<MeasurementGroup> group_qubitwise_commuting(const PauliSum& sum) {
    std::vector<MeasurementGroup> groups;
    for (std::size_t idx = 0; idx < sum.terms().size(); ++idx) {
        const PauliString& str = sum.terms()[idx].string;
        bool placed = false;
        for (auto& group : groups) {
            bool compatible = true;
            for (std::size_t q = 0; q < sum.num_qubits(); ++q) {
                const Pauli op = str.op(q);
                if (op != Pauli::I && group.basis[q] != Pauli::I &&
                    group.basis[q] != op) {
                    compatible = false;
                    break;
                }
            }
            if (compatible) {
                for (std::size_t q = 0; q < sum.num_qubits(); ++q) {
                    if (str.op(q) != Pauli::I) {
                        group.basis[q] = str.op(q);
                    }
                }
                group.members.push_back(idx);
                placed = true;
                break;
            }
        }
        if (!placed) {
            MeasurementGroup group;
            group.basis.assign(sum.num_qubits(), Pauli::I);
            for (std::size_t q = 0; q < sum.num_qubits(); ++q) {
                group.basis[q] = str.op(q);
            }
            group.members.push_back(idx);
            groups.push_back(std::move(group));
        }
    }
    // Unconstrained qubits measure in Z.
    for (auto& group : groups) {
        for (auto& b : group.basis) {
            if (b == Pauli::I) {
                b = Pauli::Z;
            }
        }
    }
    return groups;
}

double beta_bound(const PauliSum& sum) {
    double total = 0.0;
    for (const auto& term : sum.terms()) {
        total += std::abs(term.coefficient);
    }
    return 2.0 * total;
}

} // namespace vqdgap
