#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "numeros/census.hpp"
#include "numeros/coding.hpp"
#include "numeros/counting_solver.hpp"
#include "numeros/errors.hpp"
#include "numeros/numerosity.hpp"
#include "numeros/oracle.hpp"
#include "numeros/script.hpp"
#include "numeros/setexpr.hpp"
#include "numeros/witness.hpp"

namespace py = pybind11;
using namespace numeros;

namespace {

// cpp_int <-> arbitrary-precision Python int, via decimal strings.
py::int_ toPyInt(const Nat& n) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(n.str().c_str(), nullptr, 10));
}

Nat fromPyInt(const py::int_& v) {
  return Nat(py::repr(v).cast<std::string>());
}

Point toPoint(const std::vector<py::int_>& xs) {
  Point p;
  for (const auto& x : xs) p.push_back(fromPyInt(x));
  return p;
}

Index toIndex(const std::vector<py::int_>& xs) {
  std::vector<Label> v;
  for (const auto& x : xs) v.push_back(fromPyInt(x));
  return Index(std::move(v));
}

py::list fromIndex(const Index& i) {
  py::list out;
  for (const Label& x : i) out.append(toPyInt(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_numeros, m) {
  m.doc() = "Euclidean numerosities of symbolic finitary point sets";

  py::register_exception<EngineError>(m, "EngineError");

  py::class_<SetExpr>(m, "Expr")
      .def("__str__", &SetExpr::str)
      .def("__repr__", [](const SetExpr& e) { return "Expr(" + e.str() + ")"; })
      .def("__or__", [](SetExpr a, SetExpr b) { return makeUnion(a, b); })
      .def("__and__", [](SetExpr a, SetExpr b) { return makeIntersect(a, b); })
      .def("__sub__", [](SetExpr a, SetExpr b) { return makeDifference(a, b); })
      .def("__mul__", [](SetExpr a, SetExpr b) { return makeProduct(a, b); })
      .def("contains",
           [](const SetExpr& e, const std::vector<py::int_>& p) {
             return contains(e, toPoint(p));
           })
      .def("members_within",
           [](const SetExpr& e, const std::vector<py::int_>& i) {
             py::list out;
             for (const Point& p : membersWithin(e, toIndex(i))) {
               py::list tup;
               for (const Label& x : p) tup.append(toPyInt(x));
               out.append(tup);
             }
             return out;
           });

  m.def("empty", &makeEmpty);
  m.def("finite", [](const std::vector<std::vector<py::int_>>& pts) {
    std::vector<Point> v;
    for (const auto& p : pts) v.push_back(toPoint(p));
    return makeFinite(std::move(v));
  });
  m.def(
      "progression",
      [](std::uint64_t mod, std::uint64_t r, const py::int_& start,
         const std::vector<py::int_>& plus, const std::vector<py::int_>& minus) {
        std::vector<Label> pl, mi;
        for (const auto& x : plus) pl.push_back(fromPyInt(x));
        for (const auto& x : minus) mi.push_back(fromPyInt(x));
        return makeProgression(mod, r, fromPyInt(start), pl, mi);
      },
      py::arg("mod"), py::arg("r"), py::arg("start") = py::int_(0),
      py::arg("plus") = std::vector<py::int_>{},
      py::arg("minus") = std::vector<py::int_>{});
  m.def("fin_powerset", &makeFinPowerset);

  m.def("census_at", [](const SetExpr& e, const std::vector<py::int_>& i) {
    return toPyInt(censusAt(e, toIndex(i)));
  });
  m.def("exact_support_count",
        [](const SetExpr& e, const std::vector<py::int_>& i) {
          return toPyInt(exactSupportCount(e, toIndex(i)));
        });

  py::class_<OracleState>(m, "Oracle")
      .def(py::init([](std::size_t budget, const std::string& residuePreference,
                       std::size_t chainStages) {
             OracleConfig c;
             c.budget = budget;
             c.chainStages = chainStages;
             c.residuePreference =
                 residuePreference == "highest"
                     ? OracleConfig::ResiduePreference::Highest
                     : OracleConfig::ResiduePreference::Lowest;
             return new OracleState(c);
           }),
           py::arg("budget") = 48, py::arg("residue_preference") = "lowest",
           py::arg("chain_stages") = 50)
      .def("compare",
           [](OracleState& o, const SetExpr& a, const SetExpr& b) {
             CompareResult r = o.compare(a, b);
             return py::make_tuple(orderingName(r.ordering), r.evidenceStage);
           })
      .def("cmp",
           [](OracleState& o, const SetExpr& a, const SetExpr& b) {
             return std::string(
                 orderingName(cmpNum(num(o, a), num(o, b))));
           })
      .def("add",
           [](OracleState& o, const SetExpr& a, const SetExpr& b) {
             return addNum(num(o, a), num(o, b)).representative();
           })
      .def("mul",
           [](OracleState& o, const SetExpr& a, const SetExpr& b) {
             return mulNum(num(o, a), num(o, b)).representative();
           })
      .def("to_natural",
           [](OracleState& o, const SetExpr& a) -> py::object {
             std::optional<Nat> v = toNatural(num(o, a));
             if (!v) return py::none();
             return toPyInt(*v);
           })
      .def("sub_witness",
           [](OracleState& o, const SetExpr& a, const SetExpr& b) {
             return subWitness(o, a, b);
           })
      .def("ensure_cone",
           [](OracleState& o, const std::vector<py::int_>& d) {
             o.ensureCone(toIndex(d));
           })
      .def("chain_at",
           [](OracleState& o, std::size_t k) { return fromIndex(o.chainAt(k)); })
      .def("chain_length", &OracleState::chainLength)
      .def("check_axiom",
           [](OracleState& o, const std::string& axiom,
              const std::vector<std::vector<SetExpr>>& instances) {
             std::optional<AxiomId> id = axiomFromName(axiom);
             if (!id)
               throw EngineError(ErrorCode::UnsupportedExpression,
                                 "unknown axiom '" + axiom + "'");
             AxiomReport r = checkAxiom(o, *id, instances);
             py::dict out;
             out["axiom"] = axiom;
             out["total"] = r.total;
             out["checked"] = r.checked;
             out["vacuous"] = r.vacuous;
             out["unsupported"] = r.unsupported;
             out["failed"] = r.failed;
             out["pass"] = r.pass();
             return out;
           })
      .def("dump_commitments", &OracleState::dumpCommitments);

  m.def("ackermann_code", [](const std::string& hf) {
    return toPyInt(ackermannCode(HFSet::parse(hf)));
  });
  m.def("ackermann_decode",
        [](const py::int_& n) { return HFSet::decode(fromPyInt(n)).str(); });

  m.def(
      "run_script",
      [](const std::string& text, std::size_t budget,
         const std::string& residuePreference, std::size_t chainStages) {
        RunConfig cfg;
        cfg.json = true;
        cfg.budget = budget;
        cfg.chainStages = chainStages;
        cfg.residuePreference = residuePreference == "highest"
                                    ? OracleConfig::ResiduePreference::Highest
                                    : OracleConfig::ResiduePreference::Lowest;
        RunResult r = runScript(parseScript(text), cfg);
        py::dict out;
        out["exit_code"] = r.exitCode;
        out["transcript"] = r.transcript;
        out["json_lines"] = r.jsonLines;
        return out;
      },
      py::arg("text"), py::arg("budget") = 48,
      py::arg("residue_preference") = "lowest", py::arg("chain_stages") = 50);

  m.def("script_print", [](const std::string& text) {
    return parseScript(text).str();
  });
}
