#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "logsplit/analytic.hpp"
#include "logsplit/csv.hpp"
#include "logsplit/grid.hpp"
#include "logsplit/harness.hpp"
#include "logsplit/integrators.hpp"
#include "logsplit/observables.hpp"
#include "logsplit/regularization.hpp"
#include "logsplit/run_config.hpp"
#include "logsplit/version.hpp"

namespace py = pybind11;
using namespace logsplit;

namespace {

Vec2 to_vec2(const std::vector<double>& v, const char* what) {
  if (v.empty() || v.size() > 2) throw std::invalid_argument(std::string(what) + ": expected 1 or 2 components");
  Vec2 out{v[0], v.size() > 1 ? v[1] : 0.0};
  return out;
}

py::array_t<Complex> field_values(const Field& f) {
  py::array_t<Complex> out(static_cast<py::ssize_t>(f.values.size()));
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  if (f.domain.dim() == 2)
    out = out.reshape({static_cast<py::ssize_t>(f.domain.points(0)),
                       static_cast<py::ssize_t>(f.domain.points(1))});
  return out;
}

Field make_field(const DomainSpec& d, py::array_t<Complex, py::array::c_style | py::array::forcecast> a) {
  if (static_cast<std::size_t>(a.size()) != d.size())
    throw std::invalid_argument("values size does not match grid");
  Field f(d);
  std::copy(a.data(), a.data() + a.size(), f.values.begin());
  return f;
}

template <typename Fn>
py::array_t<double> map_rho(const Regularization& reg, py::array_t<double, py::array::c_style | py::array::forcecast> rho, Fn fn) {
  py::array_t<double> out(rho.size());
  const double* in = rho.data();
  double* o = out.mutable_data();
  for (py::ssize_t i = 0; i < rho.size(); ++i) o[i] = fn(reg, in[i]);
  return out;
}

} // namespace

PYBIND11_MODULE(_logsplit, m) {
  m.doc() = "Split-step Fourier solver for the logarithmic Schroedinger equation with local "
            "energy regularization";
  m.attr("__version__") = version();

  py::class_<DomainSpec>(m, "DomainSpec")
      .def_static("line", &DomainSpec::line, py::arg("lower"), py::arg("upper"), py::arg("points"))
      .def_static(
          "box",
          [](std::vector<double> lo, std::vector<double> hi, std::vector<std::size_t> pts) {
            if (lo.size() != 2 || hi.size() != 2 || pts.size() != 2)
              throw std::invalid_argument("box: expected 2 components per axis");
            return DomainSpec::box({lo[0], lo[1]}, {hi[0], hi[1]}, {pts[0], pts[1]});
          },
          py::arg("lower"), py::arg("upper"), py::arg("points"))
      .def_property_readonly("dim", &DomainSpec::dim)
      .def("lower", &DomainSpec::lower)
      .def("upper", &DomainSpec::upper)
      .def("points", &DomainSpec::points)
      .def("spacing", &DomainSpec::spacing)
      .def("size", &DomainSpec::size)
      .def("cell_volume", &DomainSpec::cell_volume)
      .def("__eq__", [](const DomainSpec& a, const DomainSpec& b) { return a == b; });

  py::class_<Field>(m, "Field")
      .def(py::init(&make_field), py::arg("domain"), py::arg("values"))
      .def_property_readonly("domain", [](const Field& f) { return f.domain; })
      .def_property_readonly("values", &field_values);

  py::enum_<RegKind>(m, "RegKind")
      .value("ExactLog", RegKind::ExactLog)
      .value("LocalEnergy", RegKind::LocalEnergy)
      .value("SqrtShift", RegKind::SqrtShift)
      .value("SquareShift", RegKind::SquareShift);

  py::class_<Regularization>(m, "Regularization")
      .def_static("exact_log", &Regularization::exact_log)
      .def_static("local_energy", &Regularization::local_energy, py::arg("order"), py::arg("epsilon"))
      .def_static("sqrt_shift", &Regularization::sqrt_shift, py::arg("epsilon"))
      .def_static("square_shift", &Regularization::square_shift, py::arg("epsilon"))
      .def_property_readonly("kind", &Regularization::kind)
      .def_property_readonly("order", &Regularization::order)
      .def_property_readonly("epsilon", &Regularization::epsilon)
      .def("f_value", &Regularization::f_value, py::arg("rho"))
      .def("f_prime", &Regularization::f_prime, py::arg("rho"))
      .def("f_second", &Regularization::f_second, py::arg("rho"))
      .def("big_f", &Regularization::big_f, py::arg("rho"))
      .def("f_values",
           [](const Regularization& r, py::array_t<double, py::array::c_style | py::array::forcecast> rho) {
             return map_rho(r, rho, [](const Regularization& q, double x) { return q.f_value(x); });
           })
      .def("big_fs",
           [](const Regularization& r, py::array_t<double, py::array::c_style | py::array::forcecast> rho) {
             return map_rho(r, rho, [](const Regularization& q, double x) { return q.big_f(x); });
           });

  m.def("q_poly", &q_poly, py::arg("n"), py::arg("eps"), py::arg("rho"));
  m.def("q_poly_prime", &q_poly_prime, py::arg("n"), py::arg("eps"), py::arg("rho"));
  m.def("taylor_remainder", &taylor_remainder, py::arg("n"), py::arg("eps"), py::arg("rho"));

  py::class_<GaussonSpec>(m, "GaussonSpec")
      .def(py::init([](int dim, double lambda, double b, std::vector<double> v, std::vector<double> x0) {
             GaussonSpec g;
             g.dim = dim;
             g.lambda = lambda;
             g.amplitude = b;
             if (!v.empty()) g.velocity = to_vec2(v, "v");
             if (!x0.empty()) g.center = to_vec2(x0, "x0");
             g.validate();
             return g;
           }),
           py::arg("dim") = 1, py::arg("lam") = -1.0, py::arg("b") = 1.0,
           py::arg("v") = std::vector<double>{}, py::arg("x0") = std::vector<double>{})
      .def_readonly("dim", &GaussonSpec::dim)
      .def_readonly("lam", &GaussonSpec::lambda)
      .def_readonly("b", &GaussonSpec::amplitude);

  m.def("unit_mass_amplitude", &unit_mass_amplitude, py::arg("dim"), py::arg("lam"));
  m.def("decay_constant", &decay_constant);
  m.def(
      "gausson_value",
      [](const GaussonSpec& g, std::vector<double> x, double t) {
        return gausson_value(g, to_vec2(x, "x"), t);
      },
      py::arg("spec"), py::arg("x"), py::arg("t") = 0.0);
  m.def("gausson_field", &gausson_field, py::arg("spec"), py::arg("domain"), py::arg("t") = 0.0);
  m.def(
      "superpose",
      [](std::vector<GaussonSpec> specs, const DomainSpec& d, double t) {
        return superpose(specs, d, t);
      },
      py::arg("specs"), py::arg("domain"), py::arg("t") = 0.0);

  m.def("wavenumbers", &wavenumbers, py::arg("domain"), py::arg("axis"));
  m.def("norm_l2", &norm_l2);
  m.def("norm_l1", &norm_l1);
  m.def("norm_linf", &norm_linf);
  m.def("norm_h1", &norm_h1);
  m.def("norm_l2_weighted", &norm_l2_weighted, py::arg("f"), py::arg("alpha"));
  m.def("spectral_derivative", &spectral_derivative, py::arg("f"), py::arg("axis"));

  m.def("mass", &mass);
  m.def("energy", &energy, py::arg("f"), py::arg("lam"), py::arg("reg"));
  m.def("energy_error", &energy_error, py::arg("f0"), py::arg("lam"), py::arg("reg"));
  m.def("momentum", &momentum);
  m.def("mirror_density_defect", &mirror_density_defect, py::arg("f"), py::arg("axis"));

  py::class_<ErrorNorms>(m, "ErrorNorms")
      .def_readonly("l2", &ErrorNorms::l2)
      .def_readonly("h1", &ErrorNorms::h1)
      .def_readonly("linf", &ErrorNorms::linf)
      .def_readonly("density_l1", &ErrorNorms::density_l1);
  m.def("error_norms", &error_norms, py::arg("a"), py::arg("b"));

  py::enum_<SplitScheme>(m, "SplitScheme")
      .value("LieAB", SplitScheme::LieAB)
      .value("LieBA", SplitScheme::LieBA)
      .value("StrangBAB", SplitScheme::StrangBAB)
      .value("StrangABA", SplitScheme::StrangABA);

  py::class_<ObservableSeries>(m, "ObservableSeries")
      .def_readonly("times", &ObservableSeries::times)
      .def_readonly("mass", &ObservableSeries::mass)
      .def_readonly("energy_reg", &ObservableSeries::energy_reg)
      .def_readonly("energy_exact", &ObservableSeries::energy_exact)
      .def_readonly("has_errors", &ObservableSeries::has_errors)
      .def_readonly("err_l2", &ObservableSeries::err_l2)
      .def_readonly("err_h1", &ObservableSeries::err_h1)
      .def_readonly("err_linf", &ObservableSeries::err_linf)
      .def_readonly("err_density_l1", &ObservableSeries::err_density_l1);

  m.def("flow_a", &flow_a, py::arg("f"), py::arg("t"));
  m.def("flow_b", &flow_b, py::arg("f"), py::arg("t"), py::arg("lam"), py::arg("reg"));
  m.def(
      "evolve",
      [](const Field& f0, double tau, std::int64_t steps, double lam, const Regularization& reg,
         SplitScheme scheme, std::int64_t record_every, std::function<Field(double)> oracle) {
        EvolveConfig cfg;
        cfg.tau = tau;
        cfg.steps = steps;
        cfg.lambda = lam;
        cfg.reg = reg;
        cfg.scheme = scheme;
        cfg.record_every = record_every;
        EvolveObservers obs;
        obs.oracle = std::move(oracle);
        EvolveResult r = evolve(f0, cfg, obs);
        return py::make_tuple(r.final_state, r.series);
      },
      py::arg("f0"), py::arg("tau"), py::arg("steps"), py::arg("lam"), py::arg("reg"),
      py::arg("scheme") = SplitScheme::StrangBAB, py::arg("record_every") = 1,
      py::arg("oracle") = std::function<Field(double)>());

  m.def(
      "observed_order",
      [](std::vector<double> errors, std::vector<double> params) {
        return observed_order(errors, params);
      },
      py::arg("errors"), py::arg("params"));
  m.def(
      "pairwise_rates",
      [](std::vector<double> errors, std::vector<double> params) {
        return pairwise_rates(errors, params);
      },
      py::arg("errors"), py::arg("params"));
}
