// Python bindings for the main operations: filter-bank derivation, residual
// checks, the coordinate solver, and the 1D/2D transforms.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavegen/catalog.hpp"
#include "wavegen/filterbank.hpp"
#include "wavegen/solver.hpp"
#include "wavegen/transform.hpp"

namespace py = pybind11;
using namespace wavegen;

namespace {

BoundaryMode mode_from_string(const std::string& mode) {
  if (mode == "periodic") return BoundaryMode::Periodic;
  if (mode == "paper") return BoundaryMode::PaperExtension;
  throw std::invalid_argument("mode must be 'periodic' or 'paper'");
}

std::string mode_to_string(BoundaryMode mode) {
  return mode == BoundaryMode::Periodic ? "periodic" : "paper";
}

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Image2D image_from_array(const DoubleArray& array) {
  if (array.ndim() != 2) throw std::invalid_argument("expected a 2D array");
  const auto rows = static_cast<std::size_t>(array.shape(0));
  const auto cols = static_cast<std::size_t>(array.shape(1));
  std::vector<double> pixels(array.data(), array.data() + rows * cols);
  return Image2D(rows, cols, std::move(pixels));
}

py::array_t<double> plane_to_array(const Plane& plane) {
  py::array_t<double> out({plane.rows, plane.cols});
  std::copy(plane.v.begin(), plane.v.end(), out.mutable_data());
  return out;
}

Plane plane_from_array(const DoubleArray& array) {
  if (array.ndim() != 2) throw std::invalid_argument("expected a 2D array");
  Plane plane(static_cast<std::size_t>(array.shape(0)), static_cast<std::size_t>(array.shape(1)));
  std::copy(array.data(), array.data() + plane.rows * plane.cols, plane.v.begin());
  return plane;
}

}  // namespace

PYBIND11_MODULE(_wavegen, m) {
  m.doc() = "filter bank synthesis, verification and signal decomposition";

  py::class_<ResidualReport>(m, "ResidualReport")
      .def_readonly("orthogonality", &ResidualReport::orthogonality)
      .def_readonly("parity", &ResidualReport::parity)
      .def_readonly("norm", &ResidualReport::norm)
      .def_readonly("total_abs", &ResidualReport::total_abs)
      .def("__repr__", [](const ResidualReport& r) {
        return "<ResidualReport total_abs=" + std::to_string(r.total_abs) + ">";
      });

  py::class_<FilterBank>(m, "FilterBank")
      .def_property_readonly("l_d", [](const FilterBank& b) { return b.l_d.taps(); })
      .def_property_readonly("h_d", [](const FilterBank& b) { return b.h_d.taps(); })
      .def_property_readonly("l_r", [](const FilterBank& b) { return b.l_r.taps(); })
      .def_property_readonly("h_r", [](const FilterBank& b) { return b.h_r.taps(); })
      .def_property_readonly("n", [](const FilterBank& b) { return b.l_d.n(); });

  py::class_<ReferenceEntry>(m, "ReferenceEntry")
      .def_readonly("name", &ReferenceEntry::name)
      .def_property_readonly("taps", [](const ReferenceEntry& e) { return e.taps.taps(); })
      .def_readonly("source", &ReferenceEntry::source)
      .def_readonly("tolerance", &ReferenceEntry::tolerance);

  py::class_<SweepRecord>(m, "SweepRecord")
      .def_readonly("sweep", &SweepRecord::sweep)
      .def_readonly("lyapunov", &SweepRecord::lyapunov)
      .def_readonly("total_abs", &SweepRecord::total_abs);

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("taps", [](const SolveResult& r) { return r.filter.taps(); })
      .def_readonly("report", &SolveResult::report)
      .def_property_readonly("converged",
                             [](const SolveResult& r) {
                               return r.trace.status == SolveStatus::Converged;
                             })
      .def_property_readonly("sweeps_used",
                             [](const SolveResult& r) { return r.trace.sweeps_used; })
      .def_property_readonly("records", [](const SolveResult& r) { return r.trace.records; });

  py::class_<Decomposition1D>(m, "Decomposition1D")
      .def_readonly("p", &Decomposition1D::p)
      .def_readonly("q", &Decomposition1D::q)
      .def_readonly("m", &Decomposition1D::m)
      .def_property_readonly("mode",
                             [](const Decomposition1D& d) { return mode_to_string(d.mode); });

  py::class_<Decomposition2D>(m, "Decomposition2D")
      .def_property_readonly("main", [](const Decomposition2D& d) { return plane_to_array(d.main); })
      .def_property_readonly("horizontal",
                             [](const Decomposition2D& d) { return plane_to_array(d.horizontal); })
      .def_property_readonly("vertical",
                             [](const Decomposition2D& d) { return plane_to_array(d.vertical); })
      .def_property_readonly("diagonal",
                             [](const Decomposition2D& d) { return plane_to_array(d.diagonal); })
      .def_readonly("rows", &Decomposition2D::rows)
      .def_readonly("cols", &Decomposition2D::cols)
      .def_property_readonly("mode",
                             [](const Decomposition2D& d) { return mode_to_string(d.mode); });

  m.def("qmf", [](std::vector<double> taps) { return qmf(Filter(std::move(taps))).taps(); },
        py::arg("taps"), "reverse the taps and alternate signs starting positive");
  m.def("rev", [](std::vector<double> taps) { return rev(Filter(std::move(taps))).taps(); },
        py::arg("taps"));
  m.def("derive_bank",
        [](std::vector<double> l_d) { return derive_bank(Filter(std::move(l_d))); },
        py::arg("l_d"));
  m.def("constraint_residuals",
        [](std::vector<double> l_d) { return constraint_residuals(Filter(std::move(l_d))); },
        py::arg("l_d"));
  m.def("lyapunov", [](std::vector<double> l_d) { return lyapunov(Filter(std::move(l_d))); },
        py::arg("l_d"));

  m.def("catalog", []() { return catalog(); });
  m.def("lookup",
        [](const std::string& name) -> std::optional<ReferenceEntry> {
          const ReferenceEntry* entry = lookup(name);
          if (entry == nullptr) return std::nullopt;
          return *entry;
        },
        py::arg("name"));

  m.def("solve",
        [](int n, std::uint64_t seed, double epsilon, int max_sweeps,
           const std::map<int, double>& pinned, std::optional<std::vector<double>> init) {
          SolverConfig config;
          config.n = n;
          config.seed = seed;
          config.epsilon = epsilon;
          config.max_sweeps = max_sweeps;
          config.pinned = pinned;
          if (init) config.init = Filter(std::move(*init));
          return solve(config);
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("epsilon") = 1e-13,
        py::arg("max_sweeps") = 20000, py::arg("pinned") = std::map<int, double>{},
        py::arg("init") = std::nullopt);

  m.def("closed_form_n3",
        [](double l1, double l5, double l6) { return closed_form_n3(l1, l5, l6).taps(); },
        py::arg("l1"), py::arg("l5"), py::arg("l6"));

  m.def("extend",
        [](std::vector<double> samples, int half_length) {
          return extend(Signal1D(std::move(samples)), half_length);
        },
        py::arg("samples"), py::arg("half_length"));

  m.def("analyze_1d",
        [](std::vector<double> samples, std::vector<double> l_d, const std::string& mode) {
          return analyze_1d(Signal1D(std::move(samples)), derive_bank(Filter(std::move(l_d))),
                            mode_from_string(mode));
        },
        py::arg("samples"), py::arg("l_d"), py::arg("mode") = "periodic");

  m.def("synthesize_1d",
        [](const Decomposition1D& d, std::vector<double> l_d) {
          const Synthesis1D out = synthesize_1d(d, derive_bank(Filter(std::move(l_d))));
          return py::make_tuple(out.signal.samples(), out.approximate_from);
        },
        py::arg("decomposition"), py::arg("l_d"),
        "returns (samples, index of the first approximate sample)");

  m.def("analyze_2d",
        [](const DoubleArray& image, std::vector<double> l_d, const std::string& mode) {
          return analyze_2d(image_from_array(image), derive_bank(Filter(std::move(l_d))),
                            mode_from_string(mode));
        },
        py::arg("image"), py::arg("l_d"), py::arg("mode") = "periodic");

  m.def("synthesize_2d",
        [](const Decomposition2D& d, std::vector<double> l_d) {
          const Image2D img = synthesize_2d(d, derive_bank(Filter(std::move(l_d))));
          py::array_t<double> out({img.rows(), img.cols()});
          std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
          return out;
        },
        py::arg("decomposition"), py::arg("l_d"));

  m.def("make_decomposition_2d",
        [](const DoubleArray& main, const DoubleArray& horizontal, const DoubleArray& vertical,
           const DoubleArray& diagonal, const std::string& mode) {
          Decomposition2D d;
          d.main = plane_from_array(main);
          d.horizontal = plane_from_array(horizontal);
          d.vertical = plane_from_array(vertical);
          d.diagonal = plane_from_array(diagonal);
          d.mode = mode_from_string(mode);
          d.rows = 2 * d.main.rows;
          d.cols = 2 * d.main.cols;
          return d;
        },
        py::arg("main"), py::arg("horizontal"), py::arg("vertical"), py::arg("diagonal"),
        py::arg("mode") = "periodic",
        "assemble a Decomposition2D from four coefficient planes");

  m.def("reconstruction_error",
        [](const DoubleArray& a, const DoubleArray& b) {
          if (a.ndim() != b.ndim()) {
            throw std::invalid_argument("reconstruction_error: shape mismatch");
          }
          for (py::ssize_t i = 0; i < a.ndim(); ++i) {
            if (a.shape(i) != b.shape(i)) {
              throw std::invalid_argument("reconstruction_error: shape mismatch");
            }
          }
          return reconstruction_error(
              std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
              std::span<const double>(b.data(), static_cast<std::size_t>(b.size())));
        },
        py::arg("a"), py::arg("b"));

  m.def("subband_energy",
        [](const Decomposition2D& d) {
          const SubbandEnergy e = subband_energy(d);
          py::dict out;
          auto entry = [](const PlaneEnergy& pe) {
            py::dict item;
            item["energy"] = pe.energy;
            item["fraction"] = pe.fraction;
            return item;
          };
          out["main"] = entry(e.main);
          out["horizontal"] = entry(e.horizontal);
          out["vertical"] = entry(e.vertical);
          out["diagonal"] = entry(e.diagonal);
          out["total"] = e.total;
          return out;
        },
        py::arg("decomposition"));

  m.def("build_analysis_matrix",
        [](std::vector<double> l_d, std::size_t m) {
          const DenseMatrix w = build_analysis_matrix(derive_bank(Filter(std::move(l_d))), m);
          py::array_t<double> out({w.size(), w.size()});
          std::copy(w.data().begin(), w.data().end(), out.mutable_data());
          return out;
        },
        py::arg("l_d"), py::arg("m"));
}
