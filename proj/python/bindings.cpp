#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>
#include <vector>

#include "golden_gaps/analytic.hpp"
#include "golden_gaps/bcz.hpp"
#include "golden_gaps/commands.hpp"
#include "golden_gaps/lattice.hpp"
#include "golden_gaps/stats.hpp"

namespace py = pybind11;
using namespace golden_gaps;

namespace {

// Section coordinates arrive as floats or as exact strings ("1/2+phi").
using Coordinate = std::variant<std::string, double>;

bool is_exact(const Coordinate& a, const Coordinate& b) {
  return std::holds_alternative<std::string>(a) && std::holds_alternative<std::string>(b);
}

bcz::ExactPoint exact_point(const Coordinate& a, const Coordinate& b) {
  return {GoldenNumber::parse(std::get<std::string>(a)), GoldenNumber::parse(std::get<std::string>(b))};
}

double as_double(const Coordinate& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return GoldenNumber::parse(*s).to_double();
  return std::get<double>(c);
}

bcz::Mode parse_mode(const std::string& mode, long radius) {
  if (mode == "exact") return bcz::Mode::Exact;
  if (mode == "float") return bcz::Mode::Float;
  if (mode == "auto") return radius <= cli::kAutoExactRadius ? bcz::Mode::Exact : bcz::Mode::Float;
  throw py::value_error("mode must be 'auto', 'exact' or 'float'");
}

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(py::ssize_t(v.size()), v.data()); }

std::vector<std::string> exact_strings(const std::vector<GoldenNumber>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const GoldenNumber& x : v) out.push_back(x.to_fraction_string());
  return out;
}

}  // namespace

PYBIND11_MODULE(_golden_gaps, m) {
  m.doc() = "Slope gaps of the golden L";

  py::class_<stats::Estimate>(m, "Estimate")
      .def_readonly("value", &stats::Estimate::value)
      .def_readonly("standard_error", &stats::Estimate::standard_error)
      .def_readonly("samples", &stats::Estimate::samples)
      .def_readonly("hits", &stats::Estimate::hits)
      .def("__repr__", [](const stats::Estimate& e) {
        return "Estimate(value=" + std::to_string(e.value) + ", standard_error=" + std::to_string(e.standard_error) + ")";
      });

  py::class_<analytic::VolumeReport>(m, "VolumeReport")
      .def_readonly("v1", &analytic::VolumeReport::v1)
      .def_readonly("vphi", &analytic::VolumeReport::vphi)
      .def_readonly("vinf", &analytic::VolumeReport::vinf)
      .def_readonly("total", &analytic::VolumeReport::total)
      .def_readonly("v1_numeric", &analytic::VolumeReport::v1_numeric)
      .def_readonly("vphi_numeric", &analytic::VolumeReport::vphi_numeric)
      .def_readonly("vinf_numeric", &analytic::VolumeReport::vinf_numeric)
      .def_readonly("total_numeric", &analytic::VolumeReport::total_numeric)
      .def_readonly("expected_total", &analytic::VolumeReport::expected_total)
      .def("max_discrepancy", &analytic::VolumeReport::max_discrepancy);

  m.def(
      "slopes",
      [](long radius, bool exact) -> py::object {
        const lattice::SlopeSet s = lattice::slopes(radius);
        if (exact) return py::cast(exact_strings(s.slopes));
        return to_array(s.to_doubles());
      },
      py::arg("radius"), py::arg("exact") = false, "Sorted slopes in [0, 1] of saddle connections with x <= radius.");

  m.def(
      "gaps_via_bcz",
      [](long radius, const std::string& mode, bool exact) -> py::object {
        const GapSample s = [&] {
          py::gil_scoped_release release;
          return bcz::gaps_via_bcz(radius, parse_mode(mode, radius));
        }();
        if (exact) {
          if (!s.exact_gaps) throw py::value_error("exact gaps need mode 'exact'");
          return py::cast(exact_strings(*s.exact_gaps));
        }
        return to_array(s.gaps);
      },
      py::arg("radius"), py::arg("mode") = "auto", py::arg("exact") = false,
      "Scaled gaps from the return times along the orbit of x_R.");

  m.def(
      "gaps_direct",
      [](long radius, bool exact) -> py::object {
        const GapSample s = lattice::gaps_direct(radius);
        if (exact) return py::cast(exact_strings(*s.exact_gaps));
        return to_array(s.gaps);
      },
      py::arg("radius"), py::arg("exact") = false, "Scaled gaps from enumerated slopes.");

  m.def(
      "classify",
      [](const Coordinate& a, const Coordinate& b) {
        const bcz::Zone z = is_exact(a, b) ? bcz::classify(exact_point(a, b))
                                           : bcz::classify(bcz::FloatPoint{as_double(a), as_double(b)});
        return std::string(bcz::zone_name(z));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "return_time",
      [](const Coordinate& a, const Coordinate& b) -> py::object {
        if (is_exact(a, b)) return py::cast(bcz::return_time(exact_point(a, b)).to_fraction_string());
        return py::cast(bcz::return_time(bcz::FloatPoint{as_double(a), as_double(b)}));
      },
      py::arg("a"), py::arg("b"), "Exact string for string input, float otherwise.");

  m.def(
      "orbit",
      [](const Coordinate& a, const Coordinate& b, std::size_t steps) {
        py::list rows;
        if (is_exact(a, b)) {
          const auto t = bcz::orbit(exact_point(a, b), steps);
          for (std::size_t i = 0; i < t.points.size(); ++i) {
            rows.append(py::make_tuple(t.points[i].a.to_fraction_string(), t.points[i].b.to_fraction_string(),
                                       std::string(bcz::zone_name(t.zones[i])), t.return_times[i].to_fraction_string()));
          }
        } else {
          const auto t = bcz::orbit(bcz::FloatPoint{as_double(a), as_double(b)}, steps);
          for (std::size_t i = 0; i < t.points.size(); ++i) {
            rows.append(py::make_tuple(t.points[i].a, t.points[i].b, std::string(bcz::zone_name(t.zones[i])),
                                       t.return_times[i]));
          }
        }
        return rows;
      },
      py::arg("a"), py::arg("b"), py::arg("steps"), "Rows (a, b, zone, return_time) of the first `steps` points.");

  m.def("gap_pdf", py::vectorize(&analytic::gap_pdf), py::arg("alpha"));
  m.def("gap_cdf", py::vectorize(&analytic::gap_cdf), py::arg("alpha"));
  m.def("gap_survival", py::vectorize(&analytic::gap_survival), py::arg("alpha"));
  m.def("breakpoints", &analytic::breakpoint_values);
  m.def("volumes", &analytic::volumes);

  m.def(
      "ks_distance",
      [](std::vector<double> gaps) { return stats::ks_distance(stats::EmpiricalCdf(std::move(gaps)), analytic::gap_cdf); },
      py::arg("gaps"), "KS distance between the empirical law of `gaps` and the limiting gap law.");
  m.def(
      "uniformity_test", [](std::vector<double> points) { return stats::uniformity_test(std::move(points)); },
      py::arg("points"));

  m.def(
      "h_spacing_mc",
      [](std::vector<double> thresholds, std::size_t samples, std::uint64_t seed) {
        py::gil_scoped_release release;
        return stats::h_spacing_mc({std::move(thresholds), samples, seed});
      },
      py::arg("thresholds"), py::arg("samples") = 1'000'000, py::arg("seed") = 1);
  m.def(
      "h_spacing_empirical",
      [](const std::vector<double>& gaps, const std::vector<double>& thresholds) {
        return stats::h_spacing_empirical(gaps, thresholds);
      },
      py::arg("gaps"), py::arg("thresholds"));

  m.def(
      "measure_preservation",
      [](std::size_t samples, std::uint64_t seed) {
        const stats::ChiSquareResult r = [&] {
          py::gil_scoped_release release;
          return stats::measure_preservation(samples, seed);
        }();
        py::dict d;
        d["statistic"] = r.statistic;
        d["degrees_of_freedom"] = r.degrees_of_freedom;
        d["p_value"] = r.p_value;
        d["pooled_cells"] = r.pooled_cells;
        d["samples"] = r.samples;
        return d;
      },
      py::arg("samples") = 1'000'000, py::arg("seed") = 1);
}
