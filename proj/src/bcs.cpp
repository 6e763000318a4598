#include "vqdgap/bcs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vqdgap {

PauliSum build_qubit_hamiltonian(const BcsParams& params) {
    const std::size_t n = params.epsilons.size();
    if (n == 0) {
        throw std::invalid_argument("need at least one onsite energy");
    }
    for (double eps : params.epsilons) {
        if (!std::isfinite(eps)) {
            throw std::invalid_argument("onsite energies must be finite");
        }
    }
    if (!std::isfinite(params.coupling)) {
        throw std::invalid_argument("coupling must be finite");
    }

    std::vector<PauliTerm> terms;
    terms.reserve(n + n * (n - 1));
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<Pauli> ops(n, Pauli::I);
        ops[m] = Pauli::Z;
        terms.push_back({0.5 * params.epsilons[m], PauliString(ops)});
    }
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t l = m + 1; l < n; ++l) {
            std::vector<Pauli> xx(n, Pauli::I);
            xx[m] = Pauli::X;
            xx[l] = Pauli::X;
            terms.push_back({0.5 * params.coupling, PauliString(xx)});
            std::vector<Pauli> yy(n, Pauli::I);
            yy[m] = Pauli::Y;
            yy[l] = Pauli::Y;
            terms.push_back({0.5 * params.coupling, PauliString(yy)});
        }
    }
    return PauliSum(n, std::move(terms));
}

double gap_from_spectrum(std::span<const double> spectrum, GapSpec gap) {
    if (spectrum.size() < gap.n + 2) {
        throw std::invalid_argument("spectrum too short for gap index " +
                                    std::to_string(gap.n));
    }
    for (std::size_t i = 0; i + 1 < spectrum.size(); ++i) {
        if (spectrum[i] > spectrum[i + 1]) {
            throw std::invalid_argument("spectrum must be ascending");
        }
    }
    return spectrum[gap.n + 1] - spectrum[gap.n];
}

} // namespace vqdgap
