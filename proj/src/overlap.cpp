#include "vqdgap/overlap.hpp"

#include <bit>
#include <stdexcept>

namespace vqdgap {

namespace {

void check_preparations(const Circuit& prep_a, const Circuit& prep_b) {
    if (prep_a.num_qubits() != prep_b.num_qubits()) {
        throw std::invalid_argument("state preparations differ in qubit count");
    }
    if (!prep_a.is_bound() || !prep_b.is_bound()) {
        throw std::invalid_argument("state preparations must be bound");
    }
}

// Parity sign sum_i bitA_i * bitB_i over paired registers [0,n) and [n,2n).
int pair_parity(std::uint64_t index, std::size_t register_size) {
    const std::uint64_t mask = (std::uint64_t(1) << register_size) - 1;
    return std::popcount(index & (index >> register_size) & mask) & 1;
}

} // namespace

OverlapMethod overlap_method_from_name(const std::string& name) {
    if (name == "swap") {
        return OverlapMethod::swap_test;
    }
    if (name == "dswap") {
        return OverlapMethod::destructive_swap;
    }
    if (name == "transition") {
        return OverlapMethod::transition_amplitude;
    }
    throw std::invalid_argument("unknown overlap method '" + name +
                                "' (expected swap, dswap or transition)");
}

std::string overlap_method_name(OverlapMethod method) {
    switch (method) {
    case OverlapMethod::swap_test: return "swap";
    case OverlapMethod::destructive_swap: return "dswap";
    case OverlapMethod::transition_amplitude: return "transition";
    }
    throw std::invalid_argument("unknown overlap method");
}

Circuit swap_test_circuit(const Circuit& prep_a, const Circuit& prep_b) {
    check_preparations(prep_a, prep_b);
    const std::size_t n = prep_a.num_qubits();
    const std::size_t total = 2 * n + 1;
    // Prepare both registers, then interfere through the ancilla.
    Circuit out(total);
    out.append(prep_a.embedded(total, 1));
    out.append(prep_b.embedded(total, static_cast<std::uint32_t>(n) + 1));
    out.add(GateKind::H, {0});
    for (std::uint32_t i = 0; i < n; ++i) {
        out.add(GateKind::CSWAP,
                {0, 1 + i, 1 + static_cast<std::uint32_t>(n) + i});
    }
    out.add(GateKind::H, {0});
    return out;
}

OverlapEstimate swap_post_process(const ShotHistogram& ancilla_histogram) {
    if (ancilla_histogram.shots == 0 || ancilla_histogram.counts.empty()) {
        throw std::invalid_argument("empty histogram");
    }
    std::uint64_t zeros = 0;
    for (const auto& [label, count] : ancilla_histogram.counts) {
        if (label.size() != 1) {
            throw std::invalid_argument(
                "swap-test post-processing expects an ancilla-only histogram");
        }
        if (label == "0") {
            zeros += count;
        }
    }
    const double p0 = static_cast<double>(zeros) /
                      static_cast<double>(ancilla_histogram.shots);
    return {2.0 * (p0 - 0.5), ancilla_histogram.shots,
            OverlapMethod::swap_test};
}

Circuit destructive_swap_test_circuit(const Circuit& prep_a,
                                      const Circuit& prep_b) {
    check_preparations(prep_a, prep_b);
    const std::size_t n = prep_a.num_qubits();
    const std::size_t total = 2 * n;
    Circuit out(total);
    out.append(prep_a.embedded(total, 0));
    out.append(prep_b.embedded(total, static_cast<std::uint32_t>(n)));
    for (std::uint32_t i = 0; i < n; ++i) {
        out.add(GateKind::CNOT, {i, static_cast<std::uint32_t>(n) + i});
        out.add(GateKind::H, {i});
    }
    return out;
}

OverlapEstimate destructive_post_process(const ShotHistogram& histogram) {
    if (histogram.shots == 0 || histogram.counts.empty()) {
        throw std::invalid_argument("empty histogram");
    }
    const std::size_t bits = histogram.counts.begin()->first.size();
    if (bits == 0 || bits % 2 != 0) {
        throw std::invalid_argument(
            "destructive swap test needs an even outcome bit length");
    }
    const std::size_t n = bits / 2;
    std::int64_t signed_sum = 0;
    for (const auto& [label, count] : histogram.counts) {
        if (label.size() != bits) {
            throw std::invalid_argument("inconsistent outcome bit lengths");
        }
        const int parity = pair_parity(outcome_index(label), n);
        signed_sum += parity ? -static_cast<std::int64_t>(count)
                             : static_cast<std::int64_t>(count);
    }
    return {static_cast<double>(signed_sum) /
                static_cast<double>(histogram.shots),
            histogram.shots, OverlapMethod::destructive_swap};
}

Circuit transition_amplitude_circuit(const Circuit& prep_a,
                                     const Circuit& prep_b) {
    check_preparations(prep_a, prep_b);
    Circuit out(prep_a.num_qubits());
    out.append(prep_b);
    out.append(inverse(prep_a));
    return out;
}

OverlapEstimate estimate_overlap(OverlapMethod method, const Circuit& prep_a,
                                 const Circuit& prep_b, std::uint64_t shots,
                                 const Backend& backend,
                                 std::uint64_t rng_seed) {
    const std::size_t n = prep_a.num_qubits();
    switch (method) {
    case OverlapMethod::swap_test: {
        const Circuit circuit = swap_test_circuit(prep_a, prep_b);
        if (shots == 0) {
            const auto probs = circuit_probabilities(circuit, backend);
            double p0 = 0.0;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                if ((i & 1) == 0) {
                    p0 += probs[i];
                }
            }
            return {2.0 * (p0 - 0.5), 0, method};
        }
        const ShotHistogram hist =
            sample_circuit(circuit, backend, shots, rng_seed);
        const std::size_t ancilla[] = {0};
        return swap_post_process(hist.marginal(ancilla));
    }
    case OverlapMethod::destructive_swap: {
        const Circuit circuit = destructive_swap_test_circuit(prep_a, prep_b);
        if (shots == 0) {
            const auto probs = circuit_probabilities(circuit, backend);
            double value = 0.0;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                value += pair_parity(i, n) ? -probs[i] : probs[i];
            }
            return {value, 0, method};
        }
        return destructive_post_process(
            sample_circuit(circuit, backend, shots, rng_seed));
    }
    case OverlapMethod::transition_amplitude: {
        const Circuit circuit = transition_amplitude_circuit(prep_a, prep_b);
        if (shots == 0) {
            return {circuit_probabilities(circuit, backend)[0], 0, method};
        }
        const ShotHistogram hist =
            sample_circuit(circuit, backend, shots, rng_seed);
        const std::string zeros(n, '0');
        const auto it = hist.counts.find(zeros);
        const double p = it == hist.counts.end()
                             ? 0.0
                             : static_cast<double>(it->second) /
                                   static_cast<double>(shots);
        return {p, shots, method};
    }
    }
    throw std::invalid_argument("unknown overlap method");
}

} // namespace vqdgap
