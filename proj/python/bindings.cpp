#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "tophom/branching_tree.hpp"
#include "tophom/collapse.hpp"
#include "tophom/combinatorics.hpp"
#include "tophom/complex.hpp"
#include "tophom/errors.hpp"
#include "tophom/experiment.hpp"
#include "tophom/homology.hpp"
#include "tophom/threshold.hpp"

namespace py = pybind11;
using namespace tophom;

namespace {

std::vector<Vertex> vertices_of(const Face& f) { return {f.begin(), f.end()}; }

py::dict record_dict(const FirstCycleRecord& r) {
  py::dict d;
  d["trial"] = r.trial;
  d["n"] = r.n;
  d["d"] = r.d;
  d["seed"] = r.seed;
  d["m_first"] = r.m_first;
  d["kind"] = to_string(r.kind);
  d["support_size"] = r.support_size;
  d["vertex_support"] = r.vertex_support;
  d["c_hat"] = r.c_hat;
  return d;
}

py::tuple estimate_tuple(const Estimate& e) { return py::make_tuple(e.value, e.std_error, e.samples); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random simplicial complexes: collapsing, top homology and threshold constants";

  static py::exception<SolverError> solver_error(m, "SolverError", PyExc_RuntimeError);
  static py::exception<ConvergenceError> convergence_error(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConvergenceError& e) {
      PyErr_SetString(convergence_error.ptr(), e.what());
    } catch (const SolverError& e) {
      PyErr_SetString(solver_error.ptr(), e.what());
    }
  });

  m.def("binomial", &binomial, py::arg("n"), py::arg("k"));
  m.def(
      "rank_face", [](std::vector<Vertex> v, std::uint32_t n) { return rank_face(Face(std::move(v)), n); },
      py::arg("vertices"), py::arg("n"));
  m.def(
      "unrank_face", [](FaceRank index, int k, std::uint32_t n) { return vertices_of(unrank_face(index, k, n)); },
      py::arg("index"), py::arg("k"), py::arg("n"));

  py::class_<Complex>(m, "Complex")
      .def(py::init<std::uint32_t, int>(), py::arg("n"), py::arg("d"))
      .def_static(
          "from_faces",
          [](std::uint32_t n, int d, const std::vector<std::vector<Vertex>>& faces) {
            std::vector<Face> list;
            for (const auto& f : faces) list.emplace_back(f);
            return Complex::from_faces(n, d, list);
          },
          py::arg("n"), py::arg("d"), py::arg("faces"))
      .def_static("full", &Complex::full, py::arg("n"), py::arg("d"))
      .def_static("sample", &sample_complex, py::arg("n"), py::arg("d"), py::arg("c"), py::arg("seed"))
      .def_property_readonly("n", &Complex::n)
      .def_property_readonly("d", &Complex::d)
      .def_property_readonly("num_faces", &Complex::num_faces)
      .def("faces",
           [](const Complex& x) {
             std::vector<std::vector<Vertex>> out;
             for (const Face& f : x.faces()) out.push_back(vertices_of(f));
             return out;
           })
      .def("__contains__", [](const Complex& x, std::vector<Vertex> v) { return x.contains(Face(std::move(v))); })
      .def("__len__", &Complex::num_faces)
      .def("to_json", [](const Complex& x) { return to_json(x).dump(); });

  m.def("h_d", &h_d, py::arg("complex"), py::arg("p") = 2);
  m.def(
      "run_phases",
      [](const Complex& x, int max_phases) { return trace_summary(run_phases(x, max_phases)).dump(); },
      py::arg("complex"), py::arg("max_phases") = 1 << 20);
  m.def(
      "theta_collapse",
      [](const Complex& x, std::vector<Vertex> theta, int max_phases) {
        const auto t = theta_collapse(x, Face(std::move(theta)), max_phases);
        return t.theta_isolated_phase ? py::cast(*t.theta_isolated_phase) : py::none();
      },
      py::arg("complex"), py::arg("theta"), py::arg("max_phases") = 1 << 20);

  m.def(
      "gamma_recurrence",
      [](int d, double c, int r_max) {
        const auto s = gamma_recurrence(d, c, r_max);
        return py::make_tuple(s.gamma, s.beta);
      },
      py::arg("d"), py::arg("c"), py::arg("r_max"));
  m.def("fixed_point_beta", &fixed_point_beta, py::arg("d"), py::arg("c"), py::arg("tol") = kDefaultTol,
        py::arg("max_iter") = 1'000'000);
  m.def("solve_beta", &solve_beta, py::arg("d"), py::arg("tol") = kDefaultTol);
  m.def("solve_c_star", &solve_c_star, py::arg("d"), py::arg("tol") = kDefaultTol);
  m.def(
      "solve_tangency",
      [](int d, double tol) {
        const auto t = solve_tangency(d, tol);
        return py::make_tuple(t.t, t.c);
      },
      py::arg("d"), py::arg("tol") = kDefaultTol);
  m.def("expected_s_density", &expected_s_density, py::arg("d"), py::arg("c"), py::arg("k"));
  m.def("select_k_star", &select_k_star, py::arg("d"), py::arg("c"), py::arg("eps") = 1e-9, py::arg("cap") = 10'000);
  m.def(
      "threshold_constants",
      [](int d, double tol) {
        const auto k = threshold_constants(d, tol);
        py::dict out;
        out["d"] = k.d;
        out["beta_d"] = k.beta_d;
        out["c_star"] = k.c_star;
        out["c_collapse"] = k.c_collapse;
        out["tangency_t"] = k.tangency_t;
        out["beta_asym"] = k.beta_asym;
        out["c_star_asym"] = k.c_star_asym;
        return out;
      },
      py::arg("d"), py::arg("tol") = kDefaultTol);

  m.def(
      "estimate_gamma_series",
      [](int d, double c, int r_max, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
        std::vector<py::tuple> out;
        py::gil_scoped_release release;
        const auto series = estimate_gamma_series(d, c, r_max, samples, seed, threads);
        py::gil_scoped_acquire acquire;
        for (const auto& e : series) out.push_back(estimate_tuple(e));
        return out;
      },
      py::arg("d"), py::arg("c"), py::arg("r_max"), py::arg("samples"), py::arg("seed"), py::arg("threads") = 1);

  m.def(
      "sample_summary",
      [](std::uint32_t n, int d, double c, std::uint64_t seed, std::uint32_t p, bool with_homology) {
        return to_json(sample_summary(n, d, c, seed, p, with_homology));
      },
      py::arg("n"), py::arg("d"), py::arg("c"), py::arg("seed"), py::arg("p") = 2, py::arg("with_homology") = true);
  m.def(
      "run_process",
      [](std::uint32_t n, int d, std::uint64_t seed, std::uint32_t p) { return record_dict(run_process(n, d, seed, p)); },
      py::arg("n"), py::arg("d"), py::arg("seed"), py::arg("p") = 2);
  m.def(
      "process_experiment",
      [](std::uint32_t n, int d, std::uint64_t trials, std::uint64_t seed, unsigned threads, std::uint32_t p) {
        const auto batch = process_experiment(n, d, trials, seed, threads, p);
        py::list records;
        for (const auto& r : batch.records) records.append(record_dict(r));
        return py::make_tuple(records, to_json(batch));
      },
      py::arg("n"), py::arg("d"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1, py::arg("p") = 2);
  m.def(
      "threshold_scan",
      [](std::uint32_t n, int d, const std::vector<double>& grid, std::uint64_t trials, std::uint64_t seed,
         std::uint32_t p, bool with_homology, unsigned threads) {
        py::list rows;
        for (const auto& r : threshold_scan(n, d, grid, trials, seed, p, with_homology, threads)) {
          py::dict row;
          row["c"] = r.c;
          row["trials"] = r.trials;
          row["k_star"] = r.k_star;
          row["frac_s_positive"] = r.frac_s_positive;
          row["frac_h_positive"] = r.frac_h_positive ? py::cast(*r.frac_h_positive) : py::none();
          row["mean_s_density"] = r.mean_s_density;
          row["sd_s_density"] = r.sd_s_density;
          row["theory_density"] = r.theory_density;
          row["criterion_violations"] = r.criterion_violations;
          rows.append(row);
        }
        return rows;
      },
      py::arg("n"), py::arg("d"), py::arg("c_grid"), py::arg("trials"), py::arg("seed"), py::arg("p") = 2,
      py::arg("with_homology") = true, py::arg("threads") = 1);
}
