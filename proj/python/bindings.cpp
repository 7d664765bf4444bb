#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ocs/baselines.hpp"
#include "ocs/flow.hpp"
#include "ocs/instance_io.hpp"
#include "ocs/model.hpp"
#include "ocs/reconfig.hpp"
#include "ocs/workload.hpp"

namespace py = pybind11;

namespace {

using Rows = std::vector<std::vector<ocs::Count>>;
using Layers = std::vector<Rows>;

ocs::Matching to_matching(const Layers& layers) {
  ocs::Matching x;
  for (const auto& rows : layers) x.ocs.push_back(ocs::IntMatrix::from_rows(rows));
  return x;
}

Layers to_layers(const ocs::Matching& x) {
  Layers out;
  for (const auto& xk : x.ocs) out.push_back(xk.to_rows());
  return out;
}

ocs::PhysicalTopology to_phys(const Rows& a, const Rows& b) {
  return {ocs::IntMatrix::from_rows(a), ocs::IntMatrix::from_rows(b)};
}

ocs::ChurnFraction to_churn(const py::object& churn) {
  if (py::isinstance<py::str>(churn)) return ocs::ChurnFraction::parse(churn.cast<std::string>());
  return ocs::ChurnFraction::from_double(churn.cast<double>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "OCS reconfiguration solvers (bipartition + min-cost flow, greedy, oracle)";

  auto base = py::register_exception<ocs::Error>(m, "Error");
  py::register_exception<ocs::InvalidInstance>(m, "InvalidInstance", base.ptr());
  py::register_exception<ocs::ZeroRowError>(m, "ZeroRowError", base.ptr());
  py::register_exception<ocs::NotProportional>(m, "NotProportional", base.ptr());
  py::register_exception<ocs::InfeasibleFlow>(m, "InfeasibleFlow", base.ptr());
  py::register_exception<ocs::InfeasibleDecomposition>(m, "InfeasibleDecomposition", base.ptr());
  py::register_exception<ocs::InfeasibleInstance>(m, "InfeasibleInstance", base.ptr());
  py::register_exception<ocs::BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<ocs::UnbalancedSpec>(m, "UnbalancedSpec", base.ptr());
  py::register_exception<ocs::ParseError>(m, "ParseError", base.ptr());

  py::class_<ocs::Instance>(m, "Instance")
      .def(py::init([](const Rows& a, const Rows& b, const Layers& u, const Rows& c_new) {
             return ocs::Instance{to_phys(a, b), to_matching(u),
                                  ocs::LogicalTopology{ocs::IntMatrix::from_rows(c_new)}};
           }),
           py::arg("a"), py::arg("b"), py::arg("u"), py::arg("c_new"))
      .def_property_readonly("m", [](const ocs::Instance& i) { return i.phys.m(); })
      .def_property_readonly("n", [](const ocs::Instance& i) { return i.phys.n(); })
      .def_property_readonly("a", [](const ocs::Instance& i) { return i.phys.a.to_rows(); })
      .def_property_readonly("b", [](const ocs::Instance& i) { return i.phys.b.to_rows(); })
      .def_property_readonly("u", [](const ocs::Instance& i) { return to_layers(i.old_matching); })
      .def_property_readonly("c_new", [](const ocs::Instance& i) { return i.target.c.to_rows(); })
      .def("to_json", &ocs::dump_instance)
      .def_static("from_json", &ocs::parse_instance, py::arg("text"))
      .def("validate", &ocs::validate_instance);

  py::class_<ocs::SolveResult>(m, "SolveResult")
      .def_property_readonly("matching", [](const ocs::SolveResult& r) { return to_layers(r.matching); })
      .def_readonly("rewires", &ocs::SolveResult::rewires)
      .def_readonly("solve_ms", &ocs::SolveResult::solver_millis)
      .def_readonly("mcf_invocations", &ocs::SolveResult::mcf_invocations)
      .def_readonly("algo", &ocs::SolveResult::algo)
      .def("to_json", [](const ocs::SolveResult& r) { return ocs::dump_result(r, true); });

  py::class_<ocs::PiecewiseLinearCost>(m, "PiecewiseLinearCost")
      .def_readonly("domain_max", &ocs::PiecewiseLinearCost::domain_max)
      .def_readonly("breakpoints", &ocs::PiecewiseLinearCost::breakpoints)
      .def_readonly("slopes", &ocs::PiecewiseLinearCost::slopes)
      .def_readonly("value_at_zero", &ocs::PiecewiseLinearCost::value_at_zero)
      .def("__call__", &ocs::PiecewiseLinearCost::evaluate, py::arg("x"));

  m.def("validate_physical",
        [](const Rows& a, const Rows& b) { return ocs::validate_physical(to_phys(a, b)); },
        py::arg("a"), py::arg("b"));
  m.def("logical_of", [](const Layers& x) { return ocs::logical_of(to_matching(x)).c.to_rows(); },
        py::arg("x"));
  m.def("is_feasible",
        [](const Layers& x, const Rows& a, const Rows& b, const Rows& c) {
          const auto rep = ocs::is_feasible(to_matching(x), to_phys(a, b),
                                            ocs::LogicalTopology{ocs::IntMatrix::from_rows(c)});
          std::vector<std::string> violations;
          for (const auto& v : rep.violations) violations.push_back(v.describe());
          return py::make_tuple(rep.ok(), violations);
        },
        py::arg("x"), py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("rewire_count",
        [](const Layers& u, const Layers& x) { return ocs::rewire_count(to_matching(u), to_matching(x)); },
        py::arg("u"), py::arg("x"));
  m.def("detect_proportional",
        [](const Rows& a, const Rows& b) -> py::object {
          const auto spec = ocs::detect_proportional(to_phys(a, b));
          if (!spec) return py::none();
          py::dict d;
          d["r"] = spec->r;
          d["a_prime"] = spec->a_prime;
          d["b_prime"] = spec->b_prime;
          return std::move(d);
        },
        py::arg("a"), py::arg("b"));

  m.def("piecewise_rewire_cost", &ocs::piecewise_rewire_cost, py::arg("u1"), py::arg("u2"),
        py::arg("c"));
  m.def("expand_to_arcs",
        [](const ocs::PiecewiseLinearCost& plc) {
          std::vector<std::pair<ocs::Count, ocs::Count>> out;
          for (const auto& arc : ocs::expand_to_arcs(plc)) out.emplace_back(arc.capacity, arc.unit_cost);
          return out;
        },
        py::arg("plc"));
  m.def("solve_min_cost_flow",
        [](const std::vector<ocs::Count>& supplies, const std::vector<ocs::Count>& demands,
           const std::vector<std::tuple<int, int, ocs::Count, ocs::Count>>& arcs,
           const std::string& backend) {
          ocs::FlowNetwork net(supplies, demands);
          for (const auto& [s, d, cap, cost] : arcs) net.add_arc(s, d, cap, cost);
          const auto res = ocs::solve_min_cost_flow(net, ocs::parse_backend(backend));
          py::dict out;
          out["flows"] = res.arc_flow;
          out["total_cost"] = res.total_cost;
          out["cell_flow"] = res.cell_flow.to_rows();
          return out;
        },
        py::arg("supplies"), py::arg("demands"), py::arg("arcs"), py::arg("backend") = "ssp");

  m.def("bipartition",
        [](const std::vector<int>& group) { return ocs::bipartition(group); }, py::arg("group"));
  m.def("solve",
        [](const ocs::Instance& inst, bool strict, const std::string& backend) {
          ocs::SolveOptions opts;
          opts.strict_proportional = strict;
          opts.backend = ocs::parse_backend(backend);
          py::gil_scoped_release release;
          return ocs::solve(inst, opts);
        },
        py::arg("instance"), py::arg("strict") = true, py::arg("backend") = "ssp");
  m.def("greedy_solve",
        [](const ocs::Instance& inst, const std::vector<int>& order, const std::string& backend) {
          py::gil_scoped_release release;
          return ocs::greedy_solve(inst, ocs::GreedyOptions{order, ocs::parse_backend(backend)});
        },
        py::arg("instance"), py::arg("order") = std::vector<int>{}, py::arg("backend") = "ssp");
  m.def("oracle_min_rewires",
        [](const ocs::Instance& inst, std::uint64_t budget) {
          const auto res = [&] {
            py::gil_scoped_release release;
            return ocs::oracle_min_rewires(inst, ocs::OracleOptions{budget});
          }();
          return py::make_tuple(to_layers(res.best), res.min_rewires);
        },
        py::arg("instance"), py::arg("budget") = 20'000'000);

  m.def("gen_instance",
        [](const std::vector<ocs::Count>& r, const std::vector<ocs::Count>& a_prime,
           const std::vector<ocs::Count>& b_prime, const py::object& churn, std::uint64_t seed) {
          const auto gen = ocs::gen_instance(r, a_prime, b_prime, {to_churn(churn), seed});
          return py::make_tuple(gen.instance, to_layers(gen.witness), ocs::dump_metadata(gen));
        },
        py::arg("r"), py::arg("a_prime"), py::arg("b_prime"), py::arg("churn"), py::arg("seed"));
}
