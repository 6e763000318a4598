#include "vqdgap/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace vqdgap {

int gate_arity(GateKind kind) {
    switch (kind) {
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
    case GateKind::X:
        return 1;
    case GateKind::CNOT:
    case GateKind::SWAP:
        return 2;
    case GateKind::CSWAP:
        return 3;
    }
    throw std::invalid_argument("unknown gate kind");
}

bool gate_is_parametrized(GateKind kind) {
    return kind == GateKind::RY || kind == GateKind::RZ;
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::CNOT: return "cnot";
    case GateKind::SWAP: return "swap";
    case GateKind::CSWAP: return "cswap";
    }
    throw std::invalid_argument("unknown gate kind");
}

void CouplingGraph::add_edge(std::uint32_t a, std::uint32_t b) {
    if (a == b) {
        throw std::invalid_argument("coupling graph edge cannot be a self-loop");
    }
    if (a >= num_nodes || b >= num_nodes) {
        throw std::invalid_argument("coupling graph edge endpoint out of range");
    }
    edges.insert({std::min(a, b), std::max(a, b)});
}

bool CouplingGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
}

bool CouplingGraph::is_connected() const {
    if (num_nodes == 0) {
        return false;
    }
    if (num_nodes == 1) {
        return true;
    }
    std::vector<std::vector<std::uint32_t>> adj(num_nodes);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(num_nodes, false);
    std::queue<std::uint32_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::uint32_t node = frontier.front();
        frontier.pop();
        for (std::uint32_t next : adj[node]) {
            if (!seen[next]) {
                seen[next] = true;
                ++reached;
                frontier.push(next);
            }
        }
    }
    return reached == num_nodes;
}

CouplingGraph CouplingGraph::line(std::size_t n) {
    CouplingGraph g(n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        g.add_edge(i, i + 1);
    }
    return g;
}

CouplingGraph CouplingGraph::ladder(std::size_t register_size) {
    const auto n = static_cast<std::uint32_t>(register_size);
    CouplingGraph g(2 * register_size);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        g.add_edge(i, i + 1);
        g.add_edge(n + i, n + i + 1);
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        g.add_edge(i, n + i);
    }
    return g;
}

CouplingGraph CouplingGraph::ladder_with_hub(std::size_t register_size) {
    const auto n = static_cast<std::uint32_t>(register_size);
    CouplingGraph g(2 * register_size + 1);
    for (std::uint32_t i = 1; i < n; ++i) {
        g.add_edge(i, i + 1);
        g.add_edge(n + i, n + i + 1);
    }
    for (std::uint32_t i = 1; i <= n; ++i) {
        g.add_edge(i, n + i);
        g.add_edge(0, i);
        g.add_edge(0, n + i);
    }
    return g;
}

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits_ == 0) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
}

void Circuit::check_operands(GateKind kind,
                             std::span<const std::uint32_t> qubits) const {
    if (qubits.size() != static_cast<std::size_t>(gate_arity(kind))) {
        throw std::invalid_argument(std::string(gate_name(kind)) + " takes " +
                                    std::to_string(gate_arity(kind)) +
                                    " operands");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] >= num_qubits_) {
            throw std::invalid_argument("gate operand out of range");
        }
        for (std::size_t j = i + 1; j < qubits.size(); ++j) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("gate operands must be distinct");
            }
        }
    }
}

Circuit& Circuit::add(GateKind kind,
                      std::initializer_list<std::uint32_t> qubits) {
    if (gate_is_parametrized(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) +
                                    " requires an angle");
    }
    check_operands(kind, {qubits.begin(), qubits.size()});
    Gate g{kind, {}, std::nullopt};
    std::copy(qubits.begin(), qubits.end(), g.qubits.begin());
    gates_.push_back(g);
    return *this;
}

Circuit& Circuit::add(GateKind kind, std::uint32_t qubit, double angle) {
    if (!gate_is_parametrized(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) +
                                    " does not take an angle");
    }
    check_operands(kind, {&qubit, 1});
    gates_.push_back(Gate{kind, {qubit, 0, 0}, angle});
    return *this;
}

Circuit& Circuit::add_parameter(GateKind kind, std::uint32_t qubit) {
    if (!gate_is_parametrized(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) +
                                    " cannot be a parameter slot");
    }
    check_operands(kind, {&qubit, 1});
    parameter_gates_.push_back(gates_.size());
    gates_.push_back(Gate{kind, {qubit, 0, 0}, std::nullopt});
    return *this;
}

std::size_t Circuit::num_unbound() const {
    std::size_t count = 0;
    for (std::size_t idx : parameter_gates_) {
        if (!gates_[idx].angle.has_value()) {
            ++count;
        }
    }
    return count;
}

std::vector<std::size_t> Circuit::param_slots() const {
    std::vector<std::size_t> slots;
    for (std::size_t idx : parameter_gates_) {
        if (!gates_[idx].angle.has_value()) {
            slots.push_back(idx);
        }
    }
    return slots;
}

Circuit Circuit::bound_with(std::span<const double> values) const {
    const auto slots = param_slots();
    if (values.size() != slots.size()) {
        throw std::invalid_argument(
            "parameter count mismatch: circuit has " +
            std::to_string(slots.size()) + " unbound slots, got " +
            std::to_string(values.size()) + " values");
    }
    Circuit result = *this;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        result.gates_[slots[i]].angle = values[i];
    }
    return result;
}

Circuit Circuit::unbound() const {
    Circuit result = *this;
    for (std::size_t idx : result.parameter_gates_) {
        result.gates_[idx].angle.reset();
    }
    return result;
}

Circuit Circuit::embedded(std::size_t num_qubits, std::uint32_t offset) const {
    if (offset + num_qubits_ > num_qubits) {
        throw std::invalid_argument("embedded register exceeds target size");
    }
    Circuit result(num_qubits);
    result.gates_ = gates_;
    result.parameter_gates_ = parameter_gates_;
    for (auto& gate : result.gates_) {
        for (int i = 0; i < gate_arity(gate.kind); ++i) {
            gate.qubits[static_cast<std::size_t>(i)] += offset;
        }
    }
    return result;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("appended circuit has a different width");
    }
    const std::size_t base = gates_.size();
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    for (std::size_t idx : other.parameter_gates_) {
        parameter_gates_.push_back(base + idx);
    }
    return *this;
}

std::string Circuit::to_text() const {
    std::string out;
    for (const auto& gate : gates_) {
        out += gate_name(gate.kind);
        for (std::uint32_t q : gate.operands()) {
            out += ' ';
            out += std::to_string(q);
        }
        if (gate_is_parametrized(gate.kind)) {
            if (gate.angle.has_value()) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), " %.17g", *gate.angle);
                out += buf;
            } else {
                out += " ?";
            }
        }
        out += '\n';
    }
    return out;
}

Circuit build_hardware_efficient_ansatz(std::size_t num_qubits, int depth,
                                        const CouplingGraph& graph) {
    if (depth < 1) {
        throw std::invalid_argument("ansatz depth must be at least 1");
    }
    if (graph.num_nodes != num_qubits) {
        throw std::invalid_argument("coupling graph size does not match qubit count");
    }
    if (!graph.is_connected()) {
        throw std::invalid_argument("coupling graph must be connected");
    }
    Circuit circuit(num_qubits);
    for (int block = 0; block < depth; ++block) {
        // std::set iteration is already sorted by (min, max) endpoint. The
        // entangler leads each block, so the circuit closes on a rotation
        // layer and a single block cannot entangle the all-zeros register.
        for (const auto& [a, b] : graph.edges) {
            circuit.add(GateKind::CNOT, {a, b});
        }
        for (std::uint32_t q = 0; q < num_qubits; ++q) {
            circuit.add_parameter(GateKind::RY, q);
            circuit.add_parameter(GateKind::RZ, q);
        }
    }
    return circuit;
}

Circuit build_hardware_efficient_ansatz(std::size_t num_qubits, int depth) {
    return build_hardware_efficient_ansatz(num_qubits, depth,
                                           CouplingGraph::line(num_qubits));
}

Circuit bind_parameters(const Circuit& circuit, std::span<const double> values) {
    return circuit.bound_with(values);
}

std::vector<TopologyViolation> check_topology(const Circuit& circuit,
                                              const CouplingGraph& graph) {
    if (graph.num_nodes < circuit.num_qubits()) {
        throw std::invalid_argument("coupling graph smaller than circuit");
    }
    std::vector<TopologyViolation> violations;
    for (std::size_t idx = 0; idx < circuit.gates().size(); ++idx) {
        const auto ops = circuit.gates()[idx].operands();
        for (std::size_t i = 0; i < ops.size(); ++i) {
            for (std::size_t j = i + 1; j < ops.size(); ++j) {
                if (!graph.has_edge(ops[i], ops[j])) {
                    violations.push_back({idx, ops[i], ops[j]});
                }
            }
        }
    }
    return violations;
}

Circuit append_basis_rotation(const Circuit& circuit,
                              std::span<const Pauli> basis) {
    if (!circuit.is_bound()) {
        throw std::invalid_argument("basis rotation requires a bound circuit");
    }
    if (basis.size() != circuit.num_qubits()) {
        throw std::invalid_argument("basis length must match qubit count");
    }
    Circuit result = circuit;
    for (std::uint32_t q = 0; q < basis.size(); ++q) {
        switch (basis[q]) {
        case Pauli::Z:
            break;
        case Pauli::X:
            result.add(GateKind::H, {q});
            break;
        case Pauli::Y:
            result.add(GateKind::RZ, q, -std::numbers::pi / 2);
            result.add(GateKind::H, {q});
            break;
        case Pauli::I:
            throw std::invalid_argument("measurement basis must be X, Y or Z");
        }
    }
    return result;
}

Circuit inverse(const Circuit& circuit) {
    if (!circuit.is_bound()) {
        throw std::invalid_argument("cannot invert an unbound circuit");
    }
    Circuit result(circuit.num_qubits());
    for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) {
        switch (it->kind) {
        case GateKind::RY:
        case GateKind::RZ:
            result.add(it->kind, it->qubits[0], -*it->angle);
            break;
        case GateKind::H:
        case GateKind::X:
            result.add(it->kind, {it->qubits[0]});
            break;
        case GateKind::CNOT:
        case GateKind::SWAP:
            result.add(it->kind, {it->qubits[0], it->qubits[1]});
            break;
        case GateKind::CSWAP:
            result.add(it->kind, {it->qubits[0], it->qubits[1], it->qubits[2]});
            break;
        }
    }
    return result;
}

} // namespace vqdgap
