#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "covcast/channel.hpp"
#include "covcast/covertness.hpp"
#include "covcast/error.hpp"
#include "covcast/experiments.hpp"
#include "covcast/fbl.hpp"
#include "covcast/numerics.hpp"
#include "covcast/planner.hpp"
#include "covcast/pso.hpp"
#include "covcast/scenario.hpp"

namespace py = pybind11;
using namespace covcast;

PYBIND11_MODULE(_covcast, m) {
  m.doc() = "Covert UAV multicast planning: closed-form power/prior, PSO hover search, "
            "relay selection and Monte-Carlo sweeps.";

  // later registrations are tried first, so derived types follow their bases
  auto error = py::register_exception<Error>(m, "Error");
  auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", invalid.ptr());
  auto infeasible = py::register_exception<Infeasible>(m, "Infeasible", error.ptr());
  py::register_exception<AllInfeasible>(m, "AllInfeasible", infeasible.ptr());

  py::class_<Point2>(m, "Point2")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return Point2{x, y}; }), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point2::x)
      .def_readwrite("y", &Point2::y)
      .def("__iter__", [](const Point2& p) { return py::iter(py::make_tuple(p.x, p.y)); })
      .def("__repr__", [](const Point2& p) {
        return "Point2(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });
  py::implicitly_convertible<py::tuple, Point2>();

  py::class_<Circle>(m, "Circle")
      .def_readonly("center", &Circle::center)
      .def_readonly("radius", &Circle::radius);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init([](std::vector<Point2> gus, Point2 willie, double altitude_m,
                       double area_radius_m, Point2 area_center) {
             Scenario s{std::move(gus), willie, altitude_m, area_radius_m, area_center};
             s.validate();
             return s;
           }),
           py::arg("gus"), py::arg("willie"), py::arg("altitude_m"), py::arg("area_radius_m"),
           py::arg("area_center") = Point2{})
      .def_readonly("gus", &Scenario::gus)
      .def_readonly("willie", &Scenario::willie)
      .def_readonly("altitude_m", &Scenario::altitude_m)
      .def_readonly("area_radius_m", &Scenario::area_radius_m)
      .def_readonly("area_center", &Scenario::area_center)
      .def("to_json", &scenario_to_json)
      .def_static("from_json", &scenario_from_json);

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init<>())
      .def_readwrite("s_curve_e", &ChannelParams::s_curve_e)
      .def_readwrite("s_curve_f", &ChannelParams::s_curve_f)
      .def_readwrite("alpha_los", &ChannelParams::alpha_los)
      .def_readwrite("alpha_g2g", &ChannelParams::alpha_g2g);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("n", &SystemParams::n)
      .def_readwrite("rate", &SystemParams::rate)
      .def_readwrite("payload_bits", &SystemParams::payload_bits)
      .def_readwrite("slot_s", &SystemParams::slot_s)
      .def_readwrite("epsilon", &SystemParams::epsilon)
      .def_readwrite("sigma_g2_w", &SystemParams::sigma_g2_w)
      .def_readwrite("sigma_w2_w", &SystemParams::sigma_w2_w)
      .def_readwrite("relay_power_w", &SystemParams::relay_power_w)
      .def_readwrite("rho_min", &SystemParams::rho_min)
      .def_readwrite("rho_max", &SystemParams::rho_max)
      .def_readwrite("channel", &SystemParams::channel)
      .def_readwrite("altitude_m", &SystemParams::altitude_m)
      .def("validate", &SystemParams::validate);

  py::class_<PsoConfig>(m, "PsoConfig")
      .def(py::init<>())
      .def_readwrite("particles", &PsoConfig::particles)
      .def_readwrite("iterations", &PsoConfig::iterations)
      .def_readwrite("inertia_w", &PsoConfig::inertia_w)
      .def_readwrite("accel_c1", &PsoConfig::accel_c1)
      .def_readwrite("accel_c2", &PsoConfig::accel_c2)
      .def_readwrite("vmax_fraction", &PsoConfig::vmax_fraction)
      .def_readwrite("seed", &PsoConfig::seed)
      .def_readwrite("workers", &PsoConfig::workers);

  py::class_<FblCoeffs>(m, "FblCoeffs")
      .def_readonly("varsigma", &FblCoeffs::varsigma)
      .def_readonly("vartheta", &FblCoeffs::vartheta)
      .def_readonly("n", &FblCoeffs::n)
      .def_readonly("rate", &FblCoeffs::rate)
      .def("lower_knee", &FblCoeffs::lower_knee)
      .def("upper_knee", &FblCoeffs::upper_knee);

  py::class_<OhPlan>(m, "OhPlan")
      .def_readonly("power_w", &OhPlan::power_w)
      .def_readonly("rho1", &OhPlan::rho1)
      .def_readonly("hover", &OhPlan::hover)
      .def_readonly("time_slots", &OhPlan::time_slots)
      .def_readonly("time_s", &OhPlan::time_s)
      .def_readonly("worst_gu", &OhPlan::worst_gu)
      .def_readonly("gamma_worst", &OhPlan::gamma_worst);

  py::class_<ThPlan>(m, "ThPlan")
      .def_readonly("power_w", &ThPlan::power_w)
      .def_readonly("rho1", &ThPlan::rho1)
      .def_readonly("relay", &ThPlan::relay)
      .def_readonly("time_slots", &ThPlan::time_slots)
      .def_readonly("time_s", &ThPlan::time_s)
      .def_readonly("worst_gu", &ThPlan::worst_gu)
      .def_readonly("kappa_rw", &ThPlan::kappa_rw)
      .def_readonly("gamma_ar", &ThPlan::gamma_ar)
      .def_readonly("gamma_arg", &ThPlan::gamma_arg);

  m.def("q_function", &q_function, py::arg("x"));
  m.def("exp_integral_e1", [](double z) { return exp_integral_e1(z); }, py::arg("z"));
  m.def("rayleigh_interference_factor", &rayleigh_interference_factor, py::arg("kappa"));

  m.def("horizontal_distance", &horizontal_distance);
  m.def("elevation_angle_deg", &elevation_angle_deg, py::arg("horizontal_dist"),
        py::arg("altitude_m"));
  m.def("min_enclosing_circle",
        [](const std::vector<Point2>& pts) { return min_enclosing_circle(pts); });
  m.def("sample_ppp_scenario", &sample_ppp_scenario, py::arg("density"),
        py::arg("area_radius_m"), py::arg("willie"), py::arg("altitude_m"), py::arg("seed"));

  m.def("los_probability", &los_probability, py::arg("theta_deg"),
        py::arg("params") = ChannelParams{});
  m.def("a2g_gain", &a2g_gain, py::arg("horizontal_dist"), py::arg("altitude_m"),
        py::arg("params") = ChannelParams{});
  m.def("g2g_mean_gain", &g2g_mean_gain, py::arg("dist"), py::arg("params") = ChannelParams{});

  m.def("kl_oh", &kl_oh, py::arg("gamma_aw"));
  m.def(
      "covert_power_oh",
      [](double h_aw, double sigma_w2, double rho1, double epsilon, double n) {
        return covert_power_oh(h_aw, sigma_w2, PriorPair(rho1), epsilon, n);
      },
      py::arg("h_aw"), py::arg("sigma_w2"), py::arg("rho1"), py::arg("epsilon"), py::arg("n"));
  m.def(
      "covert_power_th",
      [](double h_aw, double kappa, double sigma_w2, double rho1, double epsilon, double n) {
        return covert_power_th(h_aw, kappa, sigma_w2, PriorPair(rho1), epsilon, n);
      },
      py::arg("h_aw"), py::arg("kappa_rw"), py::arg("sigma_w2"), py::arg("rho1"),
      py::arg("epsilon"), py::arg("n"));

  m.def("fbl_coeffs", &fbl_coeffs, py::arg("n"), py::arg("rate"));
  m.def("decode_error_linear", &decode_error_linear, py::arg("gamma"), py::arg("coeffs"));

  m.def("solve_oh_at", &solve_oh_at, py::arg("scenario"), py::arg("hover"), py::arg("params"));
  m.def("solve_oh_pso", &solve_oh_pso, py::arg("scenario"), py::arg("params"),
        py::arg("pso") = PsoConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("solve_th_at", &solve_th_at, py::arg("scenario"), py::arg("relay"), py::arg("params"));
  m.def("select_relay", &select_relay, py::arg("scenario"), py::arg("params"),
        py::arg("workers") = 1u, py::call_guard<py::gil_scoped_release>());

  m.def(
      "run_sweep_csv",
      [](const std::string& config_json, unsigned workers) {
        const Config c = config_from_json(config_json);
        py::gil_scoped_release release;
        return results_to_csv(run_sweep(c.sweep, c.system, c.scenario_gen, c.pso, workers));
      },
      py::arg("config_json"), py::arg("workers") = 1u,
      "Runs the sweep described by a JSON configuration document and returns CSV text.");
  m.def("default_config_json", [] { return config_to_json(default_config()); });
}
