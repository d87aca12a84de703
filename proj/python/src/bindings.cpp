// Copyright 2026 The pauli-lre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "pauli_lre/errors.hpp"
#include "pauli_lre/metrics.hpp"
#include "pauli_lre/reconstruct.hpp"
#include "pauli_lre/record_io.hpp"
#include "pauli_lre/simulator.hpp"

namespace py = pybind11;
using namespace pauli_lre;

namespace {

PipelineOptions options(const std::string &kernel, unsigned threads) { return {threads, parse_kernel(kernel)}; }

StateDescriptor state_of(int n, const std::string &state) { return StateDescriptor::parse(state, QubitCount(n)); }

py::array_t<double> to_array(std::span<const double> v) { return py::array_t<double>(v.size(), v.data()); }

CovarianceModel model_of(const std::string &name) {
    if (name == "diagonal") return CovarianceModel::Diagonal;
    if (name == "uniform") return CovarianceModel::UniformFirstOrder;
    if (name == "multinomial") return CovarianceModel::Multinomial;
    throw ValidationError("unknown covariance model '" + name + "' (expected diagonal, uniform or multinomial)");
}

py::dict as_dict(const Reconstruction &r) {
    py::dict out;
    out["theta"] = to_array(r.theta.values());
    out["mu"] = py::cast(r.mu.matrix(), py::return_value_policy::copy);
    out["rho"] = py::cast(r.rho.matrix(), py::return_value_policy::copy);
    py::dict t;
    t["step1_s"] = r.timings.step1_s;
    t["step2_s"] = r.timings.step2_s;
    t["step3_s"] = r.timings.step3_s;
    t["total_s"] = r.timings.total_s;
    out["timings"] = t;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Linear-regression state reconstruction from Pauli measurements";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<MeasurementRecord>(m, "Record")
        .def(py::init([](int n, std::uint64_t shots, py::array_t<MeasurementRecord::Count, py::array::c_style |
                                                                                      py::array::forcecast> counts,
                         std::optional<std::uint64_t> seed, std::optional<std::string> state) {
                 std::vector<MeasurementRecord::Count> c(counts.data(), counts.data() + counts.size());
                 return MeasurementRecord(QubitCount(n), shots, std::move(c), seed, std::move(state));
             }),
             py::arg("n"), py::arg("shots"), py::arg("counts"), py::arg("seed") = py::none(),
             py::arg("state") = py::none())
        .def_property_readonly("n", [](const MeasurementRecord &r) { return r.qubits().value(); })
        .def_property_readonly("shots", &MeasurementRecord::shots)
        .def_property_readonly("seed", &MeasurementRecord::seed)
        .def_property_readonly("state", &MeasurementRecord::state_label)
        .def_property_readonly("counts",
                               [](const MeasurementRecord &r) {
                                   const auto n = r.qubits();
                                   const auto all = r.all_counts();
                                   py::array_t<MeasurementRecord::Count> a(
                                       {static_cast<py::ssize_t>(n.setting_count()), static_cast<py::ssize_t>(n.dim())});
                                   std::copy(all.begin(), all.end(), a.mutable_data());
                                   return a;
                               },
                               "Counts, shape (3^n, 2^n); row w is setting w, column s is outcome s.")
        .def("to_text",
             [](const MeasurementRecord &r) {
                 std::ostringstream out;
                 write_record(r, out);
                 return out.str();
             })
        .def_static("from_text",
                    [](const std::string &text) {
                        std::istringstream in(text);
                        return read_record(in);
                    })
        .def("save", [](const MeasurementRecord &r, const std::filesystem::path &p) { write_record(r, p); })
        .def_static("load", [](const std::filesystem::path &p) { return read_record(p); })
        .def("__eq__", [](const MeasurementRecord &a, const MeasurementRecord &b) { return a == b; });

    m.def(
        "simulate",
        [](int n, const std::string &state, std::uint64_t shots, std::uint64_t seed, unsigned threads) {
            return sample_counts(state_of(n, state), shots, seed, threads);
        },
        py::arg("n"), py::arg("state"), py::arg("shots"), py::arg("seed") = 0, py::arg("threads") = 1,
        "Samples `shots` outcomes per setting from the named state.");

    m.def(
        "reconstruct",
        [](const MeasurementRecord &record, const std::string &kernel, unsigned threads) {
            const auto r = [&] {
                py::gil_scoped_release release;
                return reconstruct(record, options(kernel, threads));
            }();
            return as_dict(r);
        },
        py::arg("record"), py::arg("kernel") = "fast", py::arg("threads") = 1,
        "Returns a dict with theta, mu, rho and per-step timings.");

    m.def(
        "reconstruct_exact",
        [](int n, const std::string &state, const std::string &kernel, unsigned threads) {
            return as_dict(reconstruct(ExactFrequencies(state_of(n, state)), options(kernel, threads)));
        },
        py::arg("n"), py::arg("state"), py::arg("kernel") = "fast", py::arg("threads") = 1,
        "Reconstruction from exact (infinite-shot) probabilities.");

    m.def("dense_state", [](int n, const std::string &state) { return dense_state(state_of(n, state)).matrix(); },
          py::arg("n"), py::arg("state"));

    m.def(
        "project",
        [](const ComplexMatrix &mu) { return step_three_project(HermitianMatrix(mu)).matrix(); }, py::arg("mu"),
        "Closest density matrix to a Hermitian unit-trace matrix in Frobenius norm.");

    m.def(
        "project_onto_simplex",
        [](const std::vector<double> &v) { return project_onto_simplex(v); }, py::arg("values"));

    m.def(
        "hs_squared_distance", [](const ComplexMatrix &a, const ComplexMatrix &b) { return hs_squared_distance(a, b); },
        py::arg("a"), py::arg("b"));

    m.def(
        "fidelity",
        [](const ComplexMatrix &rho, const ComplexMatrix &sigma) {
            return fidelity(DensityMatrix::checked(rho), DensityMatrix::checked(sigma));
        },
        py::arg("rho"), py::arg("sigma"));

    m.def(
        "predicted_mse_max_mixed", [](int n, double n0) { return predicted_mse_max_mixed(QubitCount(n), n0); },
        py::arg("n"), py::arg("copies_per_projector"));
    m.def(
        "predicted_infidelity_max_mixed",
        [](int n, double n0) { return predicted_infidelity_max_mixed(QubitCount(n), n0); }, py::arg("n"),
        py::arg("copies_per_projector"));
    m.def(
        "predicted_mse_dense",
        [](const ComplexMatrix &rho, double n0, const std::string &model) {
            return predicted_mse_dense(DensityMatrix::checked(rho), n0, model_of(model));
        },
        py::arg("rho"), py::arg("copies_per_projector"), py::arg("model") = "diagonal",
        "model: diagonal, uniform or multinomial.");

    m.def(
        "walsh_hadamard", [](const std::vector<double> &v) { return walsh_hadamard_transformed(v); }, py::arg("values"),
        "Unnormalized Walsh-Hadamard transform; the length must be a power of two.");
}
