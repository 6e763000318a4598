#pragma once

#include "vqdgap/circuit.hpp"
#include "vqdgap/simulator.hpp"

#include <cstdint>
#include <string>

namespace vqdgap {

enum class OverlapMethod : std::uint8_t {
    swap_test,
    destructive_swap,
    transition_amplitude,
};

OverlapMethod overlap_method_from_name(const std::string& name);
std::string overlap_method_name(OverlapMethod method);

/// |<a|b>|^2 estimate. The raw value can leave [0,1] at finite shots;
/// clamped() is the in-range view. shots == 0 marks an exact evaluation.
struct OverlapEstimate {
    double value = 0.0;
    std::uint64_t shots = 0;
    OverlapMethod method = OverlapMethod::transition_amplitude;

    double clamped() const {
        return value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
    }
};

/// Ancilla-controlled interference circuit on 2n+1 qubits. Layout:
/// ancilla = qubit 0, register A = [1, n], register B = [n+1, 2n].
Circuit swap_test_circuit(const Circuit& prep_a, const Circuit& prep_b);

/// Overlap from the ancilla marginal: 2*(P(0) - 1/2).
OverlapEstimate swap_post_process(const ShotHistogram& ancilla_histogram);

/// Bell-basis measurement circuit on 2n qubits, register A = [0, n),
/// register B = [n, 2n); CNOT(A_i -> B_i) then H(A_i) per pair.
Circuit destructive_swap_test_circuit(const Circuit& prep_a,
                                      const Circuit& prep_b);

/// Parity-sign post-processing over the 2n-bit histogram:
/// mean of prod_i (-1)^(bitA_i * bitB_i).
OverlapEstimate destructive_post_process(const ShotHistogram& histogram);

/// prep_b followed by the adjoint of prep_a on n qubits; overlap is the
/// all-zeros return probability.
Circuit transition_amplitude_circuit(const Circuit& prep_a,
                                     const Circuit& prep_b);

/// Builds the method circuit, executes on the backend and post-processes.
/// shots == 0 evaluates the post-processed observable exactly.
OverlapEstimate estimate_overlap(OverlapMethod method, const Circuit& prep_a,
                                 const Circuit& prep_b, std::uint64_t shots,
                                 const Backend& backend,
                                 std::uint64_t rng_seed);

} // namespace vqdgap
