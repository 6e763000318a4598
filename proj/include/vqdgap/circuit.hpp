#pragma once

#include "vqdgap/pauli.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vqdgap {

enum class GateKind : std::uint8_t { RY, RZ, H, X, CNOT, SWAP, CSWAP };

int gate_arity(GateKind kind);
bool gate_is_parametrized(GateKind kind);
std::string_view gate_name(GateKind kind);

/// One gate instance. Operand order matters: CNOT is (control, target),
/// CSWAP is (control, a, b). A parametrized gate with no angle is an unbound
/// parameter slot.
struct Gate {
    GateKind kind = GateKind::H;
    std::array<std::uint32_t, 3> qubits{};
    std::optional<double> angle;

    std::span<const std::uint32_t> operands() const {
        return {qubits.data(), static_cast<std::size_t>(gate_arity(kind))};
    }

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// Undirected device connectivity. Edges are stored normalized (min, max).
struct CouplingGraph {
    std::size_t num_nodes = 0;
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;

    CouplingGraph() = default;
    explicit CouplingGraph(std::size_t n) : num_nodes(n) {}

    void add_edge(std::uint32_t a, std::uint32_t b);
    bool has_edge(std::uint32_t a, std::uint32_t b) const;
    bool is_connected() const;

    /// Chain 0-1-...-(n-1).
    static CouplingGraph line(std::size_t n);
    /// Two parallel rows of `register_size` nodes with rungs between them:
    /// row A = nodes [0, n), row B = nodes [n, 2n).
    static CouplingGraph ladder(std::size_t register_size);
    /// Ladder plus a hub node adjacent to every row node. Hub = node 0,
    /// row A = [1, n], row B = [n+1, 2n]; matches the swap-test layout.
    static CouplingGraph ladder_with_hub(std::size_t register_size);
};

/// Ordered gate list over a fixed qubit count. Immutable value semantics:
/// builders return new circuits. Gates appended through add_parameter are the
/// circuit's parameter slots, bound in creation order.
class Circuit {
  public:
    explicit Circuit(std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }

    Circuit& add(GateKind kind, std::initializer_list<std::uint32_t> qubits);
    Circuit& add(GateKind kind, std::uint32_t qubit, double angle);
    /// Appends an unbound RY/RZ slot.
    Circuit& add_parameter(GateKind kind, std::uint32_t qubit);

    std::size_t num_parameters() const { return parameter_gates_.size(); }
    std::size_t num_unbound() const;
    bool is_bound() const { return num_unbound() == 0; }
    /// Gate indices of currently unbound slots, in binding order.
    std::vector<std::size_t> param_slots() const;

    /// Copy with `values` assigned to the unbound slots in order.
    Circuit bound_with(std::span<const double> values) const;
    /// Copy with every parameter slot cleared back to unbound.
    Circuit unbound() const;
    /// Copy acting on `num_qubits` qubits with all operands shifted by
    /// `offset`; used to place a register inside a larger circuit.
    Circuit embedded(std::size_t num_qubits, std::uint32_t offset) const;
    /// Appends another circuit's gates (same qubit count), keeping its
    /// parameter slots in order after this circuit's own.
    Circuit& append(const Circuit& other);

    /// Line-per-gate text form (name, operands, angle) for logs and goldens.
    std::string to_text() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;

  private:
    void check_operands(GateKind kind,
                        std::span<const std::uint32_t> qubits) const;

    std::size_t num_qubits_ = 1;
    std::vector<Gate> gates_;
    std::vector<std::size_t> parameter_gates_;
};

/// `depth` blocks, each a CNOT layer along the sorted graph edges followed by
/// per-qubit RY,RZ rotations; exactly 2*n*depth parameters and one entangling
/// layer per block, ending on rotations.
Circuit build_hardware_efficient_ansatz(std::size_t num_qubits, int depth,
                                        const CouplingGraph& graph);
/// Same, on the default linear-chain coupling graph.
Circuit build_hardware_efficient_ansatz(std::size_t num_qubits, int depth);

Circuit bind_parameters(const Circuit& circuit, std::span<const double> values);

struct TopologyViolation {
    std::size_t gate_index = 0;
    std::uint32_t qubit_a = 0;
    std::uint32_t qubit_b = 0;

    friend bool operator==(const TopologyViolation&,
                           const TopologyViolation&) = default;
};

/// Operand pairs of multi-qubit gates that are not graph edges, in gate
/// order. CSWAP checks all three pairwise combinations.
std::vector<TopologyViolation> check_topology(const Circuit& circuit,
                                              const CouplingGraph& graph);

/// Appends the rotations that map each qubit's `basis` eigenbasis to the
/// computational basis: H for X, RZ(-pi/2) then H for Y, nothing for Z.
Circuit append_basis_rotation(const Circuit& circuit,
                              std::span<const Pauli> basis);

/// Adjoint circuit: gates reversed, rotation angles negated.
Circuit inverse(const Circuit& circuit);

} // namespace vqdgap
