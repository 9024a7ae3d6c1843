#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "morgandk/cli.hpp"
#include "morgandk/corpus.hpp"
#include "morgandk/critical_pairs.hpp"
#include "morgandk/oracle.hpp"
#include "morgandk/parser.hpp"
#include "morgandk/rewriter.hpp"
#include "morgandk/typechecker.hpp"

namespace py = pybind11;
using namespace morgandk;

namespace {

using Entries = std::vector<std::pair<std::string, Term>>;

TypingContext context_of(const Entries& entries) { return TypingContext{entries}; }

std::set<std::string> names_of(const Entries& entries) {
  std::set<std::string> out;
  for (const auto& e : entries) out.insert(e.first);
  return out;
}

py::object witness_or_none(const Verdict<Witness>& v) {
  if (v.holds()) return py::none();
  return py::str(format_witness(*v.counterexample));
}

py::dict pair_dict(const CriticalPair& cp) {
  py::dict d;
  d["outer_rule"] = cp.outer_rule;
  d["inner_rule"] = cp.inner_rule;
  d["position"] = format_position(cp.position);
  d["overlap"] = pretty_print(cp.overlap);
  d["outer_reduct"] = pretty_print(cp.outer_reduct);
  d["inner_reduct"] = pretty_print(cp.inner_reduct);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lambda-Pi modulo rewriting kernel with two-level and cubical type theory corpora";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<TypeError>(m, "TypeCheckError", PyExc_ValueError);
  py::register_exception<FuelExhausted>(m, "FuelExhausted", PyExc_RuntimeError);
  py::register_exception<OutOfDomain>(m, "OutOfDomain", PyExc_ValueError);

  py::class_<Term>(m, "Term")
      .def("__str__", [](const Term& t) { return pretty_print(t); })
      .def("__repr__", [](const Term& t) { return "Term(" + pretty_print(t) + ")"; })
      .def("__eq__", [](const Term& a, const Term& b) { return alpha_eq(a, b); })
      .def("free_vars", [](const Term& t) { return free_vars(t); });

  m.def("parse_term", [](const std::string& text) { return parse_term(text); }, py::arg("text"));

  py::class_<TheoryConfig>(m, "TheoryConfig")
      .def(py::init([](bool t1, bool t2, bool t3, const std::string& nat, bool univalence, bool cubical) {
             TheoryConfig cfg;
             cfg.t1_injectivity = t1;
             cfg.t2_primitive_iso_as_rewrite = t2;
             cfg.t3_repletion = t3;
             auto strength = parse_nat_strength(nat);
             if (!strength) throw py::value_error("unknown nat strength `" + nat + "`");
             cfg.nat_morphism_strength = *strength;
             cfg.include_weak_univalence = univalence;
             cfg.cubical = cubical;
             cfg.validate();
             return cfg;
           }),
           py::kw_only(), py::arg("t1") = false, py::arg("t2") = false, py::arg("t3") = false,
           py::arg("nat") = "none", py::arg("univalence") = false, py::arg("cubical") = false)
      .def("__str__", &TheoryConfig::describe);

  py::class_<Signature>(m, "Signature")
      .def("__len__", &Signature::size)
      .def("__contains__", &Signature::contains)
      .def("constants", [](const Signature& s) { return s.order(); })
      .def("rule_names", [](const Signature& s) {
        std::vector<std::string> out;
        for (const auto& r : s.rules()) out.push_back(r.name);
        return out;
      })
      .def("type_of", [](const Signature& s, const std::string& name) {
        const ConstInfo* info = s.find(name);
        if (!info) throw py::key_error(name);
        return info->type;
      })
      .def(
          "term", [](const Signature& s, const std::string& text, const std::vector<std::string>& locals) {
            return s.resolve(parse_term(text), {locals.begin(), locals.end()});
          },
          py::arg("text"), py::arg("locals") = std::vector<std::string>{},
          "Parse a term and resolve the names declared in this signature");

  m.def(
      "load_theory", [](const TheoryConfig& cfg, std::size_t fuel) { return check_signature(build_theory(cfg), fuel); },
      py::arg("config") = TheoryConfig{}, py::arg("fuel") = default_fuel,
      "Build and type-check the shipped corpus for a configuration");
  m.def(
      "check_text",
      [](const std::string& text, const std::string& file, std::size_t fuel) {
        return check_signature(parse_file(text, file), fuel);
      },
      py::arg("text"), py::arg("file") = "<input>", py::arg("fuel") = default_fuel,
      "Type-check a theory given as text");
  m.def(
      "extend",
      [](const Signature& sig, const std::string& text, const std::string& file, std::size_t fuel) {
        DeclaredNames declared;
        for (const auto& name : sig.order()) declared[name] = sig.find(name)->kind == ConstKind::Definable;
        Signature out = sig;
        extend_checked(out, parse_file(text, file, declared), fuel);
        return out;
      },
      py::arg("sig"), py::arg("text"), py::arg("file") = "<input>", py::arg("fuel") = default_fuel,
      "A copy of the signature extended with the declarations in `text`");
  m.def("theory_files", [] {
    std::vector<std::string> out;
    for (const auto& f : theory_files()) out.push_back(f.name);
    return out;
  });

  m.def(
      "normalize",
      [](const Signature& sig, const Term& t, std::size_t fuel) { return normalize(sig, t, fuel); },
      py::arg("sig"), py::arg("term"), py::arg("fuel") = default_fuel);
  m.def(
      "normalize_traced",
      [](const Signature& sig, const Term& t, std::size_t fuel) {
        Trace trace;
        Term nf = normalize(sig, t, fuel, &trace);
        std::vector<std::pair<std::string, std::string>> steps;
        for (const auto& s : trace) steps.emplace_back(format_position(s.position), s.rule);
        return std::make_pair(nf, steps);
      },
      py::arg("sig"), py::arg("term"), py::arg("fuel") = default_fuel,
      "Normal form and the (position, rule) steps that reached it");
  m.def("whnf", &whnf, py::arg("sig"), py::arg("term"), py::arg("fuel") = default_fuel);
  m.def("convertible", &convertible, py::arg("sig"), py::arg("a"), py::arg("b"), py::arg("fuel") = default_fuel);

  m.def(
      "infer",
      [](const Signature& sig, const Term& t, const Entries& context,
         std::size_t fuel) { return infer(sig, context_of(context), sig.resolve(t, names_of(context)), fuel); },
      py::arg("sig"), py::arg("term"), py::arg("context") = Entries{},
      py::arg("fuel") = default_fuel);
  m.def(
      "check",
      [](const Signature& sig, const Term& t, const Term& type,
         const Entries& context, std::size_t fuel) {
        check(sig, context_of(context), sig.resolve(t, names_of(context)), type, fuel);
      },
      py::arg("sig"), py::arg("term"), py::arg("type"),
      py::arg("context") = Entries{}, py::arg("fuel") = default_fuel);

  m.def(
      "interval_eq",
      [](const std::string& lhs, const std::string& rhs) -> py::object {
        auto v = interval_eq(interval_of_term(parse_term(lhs)), interval_of_term(parse_term(rhs)));
        if (v.holds()) return py::none();
        return py::str(format_assignment(*v.counterexample));
      },
      py::arg("lhs"), py::arg("rhs"), "None if the interval equation holds, else a witness assignment");
  m.def(
      "face_eq",
      [](const std::string& lhs, const std::string& rhs) -> py::object {
        auto v = face_eq(face_of_term(parse_term(lhs)), face_of_term(parse_term(rhs)));
        if (v.holds()) return py::none();
        return py::str(format_assignment(*v.counterexample));
      },
      py::arg("lhs"), py::arg("rhs"), "None if the face equation holds, else a witness assignment");
  m.def(
      "check_rule_sound",
      [](const Signature& sig, const std::string& name) {
        const RewriteRule* r = sig.rule(name);
        if (!r) throw py::key_error(name);
        return witness_or_none(check_rule_sound(*r));
      },
      py::arg("sig"), py::arg("rule"), "None if the named rule is sound in its algebra, else a witness");

  m.def(
      "critical_pairs",
      [](const Signature& sig, const std::vector<std::string>& heads, std::size_t fuel) {
        std::vector<RewriteRule> rules;
        for (const auto& r : sig.rules()) {
          const bool wanted = std::find(heads.begin(), heads.end(), r.head) != heads.end();
          if (wanted && r.name.find(":=") == std::string::npos) rules.push_back(r);
        }
        py::list out;
        for (const auto& cp : critical_pairs(rules)) {
          py::dict d = pair_dict(cp);
          auto v = joinable(sig, cp, fuel);
          d["joinable"] = v.holds();
          if (!v.holds()) {
            d["outer_normal_form"] = pretty_print(v.counterexample->first);
            d["inner_normal_form"] = pretty_print(v.counterexample->second);
          }
          out.append(d);
        }
        return out;
      },
      py::arg("sig"), py::arg("heads"), py::arg("fuel") = 1000,
      "Critical pairs among the rules headed by `heads`, with their joinability");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end; returns (exit code, stdout, stderr)");
}
