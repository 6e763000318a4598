#include "vqdgap/bcs.hpp"
#include "vqdgap/circuit.hpp"
#include "vqdgap/experiments.hpp"
#include "vqdgap/noise.hpp"
#include "vqdgap/optimize.hpp"
#include "vqdgap/overlap.hpp"
#include "vqdgap/pauli.hpp"
#include "vqdgap/simulator.hpp"
#include "vqdgap/vqd.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

namespace py = pybind11;
using namespace vqdgap;

namespace {

PauliSum sum_from_pairs(
    std::size_t num_qubits,
    const std::vector<std::pair<double, std::string>>& terms) {
    return PauliSum::from_labels(num_qubits, terms);
}

Backend backend_from_args(bool noisy, double t1, double t2, double tg_1q,
                          double tg_2q) {
    if (!noisy) {
        return Backend::ideal();
    }
    return Backend::noisy(NoiseModel(t1, t2, tg_1q, tg_2q));
}

OptimizerConfig optimizer_from_name(const std::string& name, int max_iter,
                                    std::uint64_t) {
    if (name == "cobyla") {
        CobylaConfig config;
        if (max_iter > 0) {
            config.max_iter = max_iter;
        }
        return config;
    }
    if (name == "spsa") {
        SpsaConfig config;
        if (max_iter > 0) {
            config.max_iter = max_iter;
        }
        return config;
    }
    throw std::invalid_argument("unknown optimizer '" + name + "'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pairing-model gap estimation with variational quantum "
              "deflation on a simulated quantum computer";
    m.attr("__version__") = "0.1.0";

    py::class_<PauliSum>(m, "PauliSum")
        .def(py::init(&sum_from_pairs), py::arg("num_qubits"),
             py::arg("terms"),
             "Build from [(coefficient, label), ...] with one label "
             "character per qubit, qubit 0 first.")
        .def_property_readonly("num_qubits", &PauliSum::num_qubits)
        .def("__len__", &PauliSum::size)
        .def("terms",
             [](const PauliSum& sum) {
                 std::vector<std::pair<double, std::string>> out;
                 for (const auto& term : sum.terms()) {
                     out.emplace_back(term.coefficient, term.string.label());
                 }
                 return out;
             })
        .def("__repr__", [](const PauliSum& sum) {
            std::ostringstream out;
            out << "PauliSum(num_qubits=" << sum.num_qubits() << ", terms="
                << sum.size() << ")";
            return out.str();
        });

    m.def("to_matrix", &to_matrix, py::arg("sum"),
          "Dense matrix in little-endian qubit ordering.");
    m.def("eigenspectrum", &eigenspectrum, py::arg("sum"),
          "Ascending exact eigenvalues.");
    m.def("beta_bound", &beta_bound, py::arg("sum"));
    m.def(
        "measurement_groups",
        [](const PauliSum& sum) {
            std::vector<std::pair<std::string, std::vector<std::size_t>>> out;
            for (const auto& group : group_qubitwise_commuting(sum)) {
                std::string basis;
                for (Pauli p : group.basis) {
                    basis.push_back(pauli_char(p));
                }
                out.emplace_back(basis, group.members);
            }
            return out;
        },
        py::arg("sum"),
        "Qubit-wise commuting groups as (basis string, term indices).");

    py::class_<CouplingGraph>(m, "CouplingGraph")
        .def(py::init<std::size_t>(), py::arg("num_nodes"))
        .def_static("line", &CouplingGraph::line, py::arg("num_nodes"))
        .def_static("ladder", &CouplingGraph::ladder, py::arg("register_size"))
        .def_static("ladder_with_hub", &CouplingGraph::ladder_with_hub,
                    py::arg("register_size"))
        .def("add_edge", &CouplingGraph::add_edge)
        .def("has_edge", &CouplingGraph::has_edge)
        .def_property_readonly(
            "num_nodes",
            [](const CouplingGraph& g) { return g.num_nodes; })
        .def_property_readonly("edges", [](const CouplingGraph& g) {
            return std::vector<std::pair<std::uint32_t, std::uint32_t>>(
                g.edges.begin(), g.edges.end());
        });

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<std::size_t>(), py::arg("num_qubits"))
        .def_property_readonly("num_qubits", &Circuit::num_qubits)
        .def_property_readonly("num_parameters", &Circuit::num_parameters)
        .def_property_readonly("num_unbound", &Circuit::num_unbound)
        .def("bound_with",
             [](const Circuit& c, const std::vector<double>& values) {
                 return c.bound_with(values);
             })
        .def("to_text", &Circuit::to_text)
        .def("__repr__", [](const Circuit& c) {
            std::ostringstream out;
            out << "Circuit(num_qubits=" << c.num_qubits() << ", gates="
                << c.gates().size() << ", unbound=" << c.num_unbound() << ")";
            return out.str();
        });

    m.def("hardware_efficient_ansatz",
          py::overload_cast<std::size_t, int, const CouplingGraph&>(
              &build_hardware_efficient_ansatz),
          py::arg("num_qubits"), py::arg("depth"), py::arg("graph"));
    m.def("hardware_efficient_ansatz",
          py::overload_cast<std::size_t, int>(&build_hardware_efficient_ansatz),
          py::arg("num_qubits"), py::arg("depth"));
    m.def(
        "check_topology",
        [](const Circuit& circuit, const CouplingGraph& graph) {
            std::vector<std::tuple<std::size_t, std::uint32_t, std::uint32_t>>
                out;
            for (const auto& v : check_topology(circuit, graph)) {
                out.emplace_back(v.gate_index, v.qubit_a, v.qubit_b);
            }
            return out;
        },
        py::arg("circuit"), py::arg("graph"),
        "Multi-qubit gate operand pairs that are not graph edges.");

    py::class_<Backend>(m, "Backend")
        .def_static("ideal", &Backend::ideal)
        .def_static(
            "noisy",
            [](double t1, double t2, double tg_1q, double tg_2q) {
                return backend_from_args(true, t1, t2, tg_1q, tg_2q);
            },
            py::arg("t1") = 50e-6, py::arg("t2") = 70e-6,
            py::arg("tg_1q") = 50e-9, py::arg("tg_2q") = 300e-9)
        .def_property_readonly("is_noisy", &Backend::is_noisy);

    m.def(
        "run_statevector",
        [](const Circuit& circuit) {
            return run_statevector(circuit).amplitudes();
        },
        py::arg("circuit"),
        "Amplitudes over little-endian basis indices.");
    m.def(
        "run_density",
        [](const Circuit& circuit, const Backend& backend) {
            return run_density(circuit, backend.noise()).elements();
        },
        py::arg("circuit"), py::arg("backend"));
    m.def(
        "sample_counts",
        [](const Circuit& circuit, const Backend& backend,
           std::uint64_t shots, std::uint64_t seed) {
            return sample_circuit(circuit, backend, shots, seed).counts;
        },
        py::arg("circuit"), py::arg("backend"), py::arg("shots"),
        py::arg("seed"),
        "Outcome-string histogram; character i is qubit i.");
    m.def(
        "expectation",
        [](const Circuit& circuit, const PauliSum& sum, std::uint64_t shots,
           const Backend& backend, std::uint64_t seed) {
            return expectation_sampled(circuit, sum, shots, backend, seed);
        },
        py::arg("circuit"), py::arg("sum"), py::arg("shots"),
        py::arg("backend"), py::arg("seed") = 0,
        "Grouped-measurement estimate; shots=0 evaluates exactly.");

    m.def("excited_population", &excited_population, py::arg("temperature"),
          py::arg("qubit_frequency"));
    m.def(
        "thermal_relaxation_kraus",
        [](double t1, double t2, double gate_time) {
            const auto channel =
                thermal_relaxation_channel({t1, t2, gate_time});
            std::vector<Eigen::Matrix2cd> out(channel.operators());
            return out;
        },
        py::arg("t1"), py::arg("t2"), py::arg("gate_time"),
        "Kraus operators of the relaxation channel.");
    m.def(
        "kraus_completeness_residual",
        [](const std::vector<Eigen::Matrix2cd>& operators) {
            return validate_cptp(KrausChannel(operators));
        },
        py::arg("operators"));

    m.def(
        "estimate_overlap",
        [](const std::string& method, const Circuit& a, const Circuit& b,
           std::uint64_t shots, const Backend& backend, std::uint64_t seed) {
            return estimate_overlap(overlap_method_from_name(method), a, b,
                                    shots, backend, seed)
                .value;
        },
        py::arg("method"), py::arg("prep_a"), py::arg("prep_b"),
        py::arg("shots"), py::arg("backend"), py::arg("seed") = 0,
        "methods: swap | dswap | transition; shots=0 is exact.");

    m.def("build_qubit_hamiltonian",
          [](const std::vector<double>& epsilons, double coupling) {
              return build_qubit_hamiltonian({epsilons, coupling});
          },
          py::arg("epsilons"), py::arg("coupling"));
    m.def(
        "gap_from_spectrum",
        [](const std::vector<double>& spectrum, std::size_t n) {
            return gap_from_spectrum(spectrum, {n});
        },
        py::arg("spectrum"), py::arg("n") = 0);

    py::class_<OptResult>(m, "OptResult")
        .def_readonly("best_params", &OptResult::best_params)
        .def_readonly("best_value", &OptResult::best_value)
        .def_readonly("iterations", &OptResult::iterations)
        .def_readonly("evaluations", &OptResult::evaluations)
        .def_readonly("converged", &OptResult::converged);

    m.def(
        "spsa_minimize",
        [](const std::function<double(std::vector<double>)>& f,
           std::vector<double> theta0, double c, int max_iter,
           std::uint64_t seed) {
            SpsaConfig config;
            config.c = c;
            config.max_iter = max_iter;
            config.rng_seed = seed;
            const Objective objective = [&f](std::span<const double> x) {
                return f(std::vector<double>(x.begin(), x.end()));
            };
            return spsa_minimize(objective, std::move(theta0), config);
        },
        py::arg("f"), py::arg("theta0"), py::arg("c") = 0.7,
        py::arg("max_iter") = 300, py::arg("seed") = 0);
    m.def(
        "cobyla_minimize",
        [](const std::function<double(std::vector<double>)>& f,
           std::vector<double> theta0, double rho_init, double rho_end,
           int max_iter) {
            CobylaConfig config{rho_init, rho_end, max_iter};
            const Objective objective = [&f](std::span<const double> x) {
                return f(std::vector<double>(x.begin(), x.end()));
            };
            return cobyla_minimize(objective, std::move(theta0), config);
        },
        py::arg("f"), py::arg("theta0"), py::arg("rho_init") = 1.0,
        py::arg("rho_end") = 1e-5, py::arg("max_iter") = 500);

    py::class_<SpectrumResult>(m, "SpectrumResult")
        .def_readonly("energies", &SpectrumResult::energies)
        .def_readonly("params", &SpectrumResult::params)
        .def_readonly("evaluations", &SpectrumResult::evaluations)
        .def_readonly("seed", &SpectrumResult::seed);

    py::class_<GapRunRecord>(m, "GapRunRecord")
        .def_readonly("seed", &GapRunRecord::seed)
        .def_readonly("energies", &GapRunRecord::energies)
        .def_readonly("gap", &GapRunRecord::gap)
        .def_readonly("evaluations", &GapRunRecord::evaluations)
        .def_readonly("wall_seconds", &GapRunRecord::wall_seconds);

    py::class_<GapEstimate>(m, "GapEstimate")
        .def_readonly("mean", &GapEstimate::mean)
        .def_readonly("stddev", &GapEstimate::stddev)
        .def_readonly("records", &GapEstimate::records);

    m.def(
        "solve_spectrum",
        [](const PauliSum& hamiltonian, const Circuit& ansatz,
           std::size_t k_states, std::uint64_t shots, const Backend& backend,
           const std::string& overlap, const std::string& optimizer,
           int max_iter, std::uint64_t seed) {
            VqdOptions options;
            options.optimizer = optimizer_from_name(optimizer, max_iter, seed);
            options.shots = shots;
            options.backend = backend;
            options.overlap_method = overlap_method_from_name(overlap);
            options.rng_seed = seed;
            return solve_spectrum(hamiltonian, ansatz, k_states, options);
        },
        py::arg("hamiltonian"), py::arg("ansatz"), py::arg("k_states"),
        py::arg("shots") = 10000, py::arg("backend") = Backend::ideal(),
        py::arg("overlap") = "transition", py::arg("optimizer") = "cobyla",
        py::arg("max_iter") = 0, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "estimate_gap",
        [](const PauliSum& hamiltonian, const Circuit& ansatz, std::size_t n,
           int runs, std::uint64_t shots, const Backend& backend,
           const std::string& overlap, const std::string& optimizer,
           int max_iter, std::uint64_t seed, int threads) {
            VqdOptions options;
            options.optimizer = optimizer_from_name(optimizer, max_iter, seed);
            options.shots = shots;
            options.backend = backend;
            options.overlap_method = overlap_method_from_name(overlap);
            options.rng_seed = seed;
            return estimate_gap(hamiltonian, ansatz, {n}, runs, options,
                                threads);
        },
        py::arg("hamiltonian"), py::arg("ansatz"), py::arg("n"),
        py::arg("runs"), py::arg("shots") = 10000,
        py::arg("backend") = Backend::ideal(),
        py::arg("overlap") = "transition", py::arg("optimizer") = "cobyla",
        py::arg("max_iter") = 0, py::arg("seed") = 0, py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
}
