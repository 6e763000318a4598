#pragma once

#include "vqdgap/pauli.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace vqdgap {

/// Pairing-model inputs: one onsite energy per level and a constant coupling.
struct BcsParams {
    std::vector<double> epsilons;
    double coupling = 0.0;
};

/// Which spectral gap to report: gap n is E_{n+1} - E_n of the ascending
/// spectrum, so n = 0 is ground to first excited.
struct GapSpec {
    std::size_t n = 0;
};

/// Spin image of the pairing Hamiltonian:
/// sum_m (eps_m/2) Z_m + (V/2) sum_{l>m} (X_m X_l + Y_m Y_l),
/// with level m on little-endian qubit m.
PauliSum build_qubit_hamiltonian(const BcsParams& params);

/// E_{n+1} - E_n from an ascending spectrum.
double gap_from_spectrum(std::span<const double> spectrum, GapSpec gap);

} // namespace vqdgap
