#include "spectraflow/commands.hpp"
#include "spectraflow/config.hpp"
#include "spectraflow/eigensolve.hpp"
#include "spectraflow/errors.hpp"
#include "spectraflow/hilbert.hpp"
#include "spectraflow/observables.hpp"
#include "spectraflow/spectra.hpp"
#include "spectraflow/symmetry.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace spectraflow;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_numpy(const Matrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

Array to_numpy(const std::vector<double>& v) {
  return Array(static_cast<py::ssize_t>(v.size()), v.data());
}

Matrix from_numpy(const Array& a) {
  if (a.ndim() != 2) throw ConfigError("expected a 2-D array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data().begin());
  return m;
}

ModelParams make_params(const std::string& model, double g, double epsilon, double omega, std::optional<double> omega0) {
  ModelParams p;
  p.model = parse_model_kind(model);
  p.g = g;
  p.epsilon = epsilon;
  p.omega = omega;
  p.omega0 = omega0.value_or(omega);
  p.validate();
  return p;
}

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw ConfigError("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

py::dict flow_to_dict(const SpectralFlow& flow) {
  const std::size_t steps = flow.points.size();
  const std::size_t m = flow.levels;
  Array g(static_cast<py::ssize_t>(steps));
  Array energies({steps, m});
  Array slopes({steps, m});
  py::array_t<int> parity({steps, m});
  py::array_t<std::size_t> line_ids({steps, m});
  for (std::size_t k = 0; k < steps; ++k) {
    const auto& pt = flow.points[k];
    g.mutable_at(k) = pt.g;
    for (std::size_t i = 0; i < m; ++i) {
      energies.mutable_at(k, i) = pt.energies[i];
      slopes.mutable_at(k, i) = pt.slopes[i];
      parity.mutable_at(k, i) = static_cast<int>(pt.parity[i].value);
      line_ids.mutable_at(k, i) = flow.line_ids[k][i];
    }
  }
  py::dict d;
  d["g"] = g;
  d["energies"] = energies;
  d["slopes"] = slopes;
  d["parity"] = parity;
  d["line_ids"] = line_ids;
  d["n_cut"] = flow.trunc.n_cut();
  d["unresolved"] = std::vector<bool>(flow.unresolved.begin(), flow.unresolved.end());
  return d;
}

SpectralFlow tracked_flow(const std::string& model, const Array& grid, std::size_t levels, std::size_t n_cut,
                          double epsilon, double omega, std::optional<double> omega0, std::size_t workers) {
  const ModelParams p = make_params(model, 0.0, epsilon, omega, omega0);
  const auto g = to_vector(grid);
  py::gil_scoped_release release;
  return track_lines(sweep(p, g, levels, FockTruncation(n_cut), SweepOptions{workers}));
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral diagnostics for Rabi-type light-matter Hamiltonians";

  static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_RuntimeError);
  static py::exception<ConvergenceError> convergence_error(m, "ConvergenceError", numerical_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConvergenceError& e) {
      py::set_error(convergence_error, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical_error, e.what());
    } catch (const ConfigError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "hamiltonian",
      [](const std::string& model, double g, std::size_t n_cut, double epsilon, double omega,
         std::optional<double> omega0) {
        return to_numpy(build_hamiltonian(make_params(model, g, epsilon, omega, omega0), FockTruncation(n_cut)));
      },
      py::arg("model"), py::arg("g"), py::arg("n_cut"), py::arg("epsilon") = 0.0, py::arg("omega") = 1.0,
      py::arg("omega0") = py::none(), "Dense Hamiltonian in the basis k = 2n + s.");

  m.def(
      "eigh",
      [](const Array& h) {
        const Matrix mat = from_numpy(h);
        EigenDecomposition e;
        {
          py::gil_scoped_release release;
          e = eigh(mat);
        }
        return py::make_tuple(to_numpy(e.values), to_numpy(e.vectors));
      },
      py::arg("h"), "Ascending eigenvalues and eigenvectors (one per row) of a symmetric matrix.");

  m.def(
      "eigvalsh", [](const Array& h) { return to_numpy(eigvalsh(from_numpy(h))); }, py::arg("h"));

  m.def(
      "spectrum",
      [](const std::string& model, double g, std::size_t levels, std::size_t n_cut, double epsilon, double omega,
         std::optional<double> omega0) {
        auto values = eigvalsh(build_hamiltonian(make_params(model, g, epsilon, omega, omega0), FockTruncation(n_cut)));
        if (levels < values.size()) values.resize(levels);
        return to_numpy(values);
      },
      py::arg("model"), py::arg("g"), py::arg("levels"), py::arg("n_cut"), py::arg("epsilon") = 0.0,
      py::arg("omega") = 1.0, py::arg("omega0") = py::none());

  m.def("uniform_grid", [](double lo, double hi, std::size_t steps) { return to_numpy(uniform_grid(lo, hi, steps)); },
        py::arg("lo"), py::arg("hi"), py::arg("steps"));

  m.def(
      "spectral_flow",
      [](const std::string& model, const Array& grid, std::size_t levels, std::size_t n_cut, double epsilon,
         double omega, std::optional<double> omega0, std::size_t workers) {
        return flow_to_dict(tracked_flow(model, grid, levels, n_cut, epsilon, omega, omega0, workers));
      },
      py::arg("model"), py::arg("grid"), py::arg("levels"), py::arg("n_cut"), py::arg("epsilon") = 0.0,
      py::arg("omega") = 1.0, py::arg("omega0") = py::none(), py::arg("workers") = 0,
      "Tracked lowest-M spectra over a coupling grid.");

  m.def(
      "crossings",
      [](const std::string& model, const Array& grid, std::size_t levels, std::size_t n_cut, double epsilon,
         double omega, std::optional<double> omega0, std::size_t workers) {
        const auto flow = tracked_flow(model, grid, levels, n_cut, epsilon, omega, omega0, workers);
        CrossingScan scan;
        {
          py::gil_scoped_release release;
          CrossingOptions opts;
          opts.workers = workers;
          scan = find_crossings(flow, opts);
        }
        py::list out;
        for (const auto& c : scan.crossings) {
          py::dict d;
          d["g_star"] = c.g_star;
          d["energy"] = c.energy;
          d["line_a"] = c.line_a;
          d["line_b"] = c.line_b;
          d["lower_index"] = c.lower_index;
          d["min_gap"] = c.min_gap;
          d["kind"] = std::string(to_string(c.kind));
          d["parity_a"] = static_cast<int>(c.parity_a);
          d["parity_b"] = static_cast<int>(c.parity_b);
          out.append(d);
        }
        return out;
      },
      py::arg("model"), py::arg("grid"), py::arg("levels"), py::arg("n_cut"), py::arg("epsilon") = 0.0,
      py::arg("omega") = 1.0, py::arg("omega0") = py::none(), py::arg("workers") = 0);

  m.def(
      "converge",
      [](const std::string& model, std::size_t levels, double tol, double g_max, double epsilon, double omega,
         std::optional<double> omega0) {
        const ModelParams p = make_params(model, 0.0, epsilon, omega, omega0);
        ConvergenceResult r;
        {
          py::gil_scoped_release release;
          r = converge_truncation(p, levels, tol, g_max);
        }
        py::list history;
        for (const auto& s : r.history) {
          py::dict d;
          d["n_cut"] = s.n_cut;
          d["next_n_cut"] = s.next_n_cut;
          d["max_delta"] = s.max_delta;
          history.append(d);
        }
        py::dict d;
        d["n_cut"] = r.n_cut;
        d["history"] = history;
        d["energies"] = to_numpy(r.energies);
        return d;
      },
      py::arg("model"), py::arg("levels"), py::arg("tol") = 1e-8, py::arg("g_max") = 1.5, py::arg("epsilon") = 0.0,
      py::arg("omega") = 1.0, py::arg("omega0") = py::none());

  m.def(
      "uncertainty",
      [](const std::string& model, const Array& grid, std::size_t levels, std::size_t n_cut, double epsilon,
         double omega, std::optional<double> omega0, std::size_t workers) {
        const ModelParams p = make_params(model, 0.0, epsilon, omega, omega0);
        const auto g = to_vector(grid);
        std::vector<UncertaintyRecord> recs;
        {
          py::gil_scoped_release release;
          recs = uncertainty_records(sweep(p, g, levels, FockTruncation(n_cut), SweepOptions{workers}));
        }
        const std::size_t n = recs.size();
        Array gs(n), sx(n), sz(n), delta(n);
        py::array_t<std::size_t> index(n);
        for (std::size_t i = 0; i < n; ++i) {
          gs.mutable_at(i) = recs[i].g;
          index.mutable_at(i) = recs[i].eigen_index;
          sx.mutable_at(i) = recs[i].sx;
          sz.mutable_at(i) = recs[i].sz;
          delta.mutable_at(i) = recs[i].delta;
        }
        py::dict d;
        d["g"] = gs;
        d["eigen_index"] = index;
        d["sx"] = sx;
        d["sz"] = sz;
        d["delta"] = delta;
        return d;
      },
      py::arg("model"), py::arg("grid"), py::arg("levels"), py::arg("n_cut"), py::arg("epsilon") = 0.0,
      py::arg("omega") = 1.0, py::arg("omega0") = py::none(), py::arg("workers") = 0,
      "Per-eigenstate atomic uncertainty product over a coupling grid.");

  m.def(
      "histogram",
      [](const Array& deltas, std::size_t n_bins) {
        const auto values = to_vector(deltas);
        const Histogram h = histogram(std::span<const double>(values), n_bins);
        py::dict d;
        d["edges"] = to_numpy(h.edges);
        d["counts"] = h.counts;
        d["probabilities"] = to_numpy(h.probabilities);
        d["modal_bin"] = h.modal_bin();
        return d;
      },
      py::arg("deltas"), py::arg("n_bins") = 25);

  m.def(
      "run",
      [](const std::string& command, const std::string& config_json, bool svg, std::size_t workers) {
        const Command cmd = parse_command(command);
        const RunConfig cfg = parse_run_config(config_json);
        CommandOutput out;
        {
          py::gil_scoped_release release;
          out = run_command(cmd, cfg, CommandOptions{svg, workers});
        }
        py::dict files;
        for (const auto& [name, text] : out.files) files[py::str(name)] = py::bytes(text);
        return py::make_tuple(files, out.stdout_text);
      },
      py::arg("command"), py::arg("config_json"), py::arg("svg") = false, py::arg("workers") = 0,
      "Runs a CLI subcommand in-process; returns ({file name: bytes}, stdout text).");
}
