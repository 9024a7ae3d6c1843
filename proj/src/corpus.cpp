#include "morgandk/corpus.hpp"

#include <algorithm>

namespace morgandk {

// Generated from theories/ at configure time.
const std::vector<TheoryFile>& embedded_theory_files();

std::string to_string(NatStrength s) {
  switch (s) {
    case NatStrength::None: return "none";
    case NatStrength::ExternalEq: return "external_eq";
    case NatStrength::Definitional: return "definitional";
  }
  return "none";
}

std::optional<NatStrength> parse_nat_strength(std::string_view s) {
  if (s == "none") return NatStrength::None;
  if (s == "external_eq") return NatStrength::ExternalEq;
  if (s == "definitional") return NatStrength::Definitional;
  return std::nullopt;
}

void TheoryConfig::validate() const {
  // T2 turns the primitive isomorphisms into equalities of codes; a
  // definitional natMor/natInv isomorphism is the competing rewriting
  // treatment of the same coercion and is not combined with it.
  if (t2_primitive_iso_as_rewrite && nat_morphism_strength == NatStrength::Definitional) {
    throw std::invalid_argument("t2 cannot be combined with nat=definitional");
  }
}

std::string TheoryConfig::describe() const {
  std::string s;
  auto add = [&s](const std::string& part) { s += (s.empty() ? "" : ",") + part; };
  if (t1_injectivity) add("t1");
  if (t2_primitive_iso_as_rewrite) add("t2");
  if (t3_repletion) add("t3");
  add("nat=" + to_string(nat_morphism_strength));
  if (include_weak_univalence) add("univalence");
  if (cubical) add("cubical");
  return s;
}

const std::vector<TheoryFile>& theory_files() { return embedded_theory_files(); }

std::string_view theory_text(std::string_view name) {
  for (const auto& f : theory_files()) {
    if (f.name == name) return f.text;
  }
  throw std::invalid_argument("no theory file named `" + std::string(name) + "`");
}

std::vector<std::string> files_2ltt(const TheoryConfig& cfg) {
  std::vector<std::string> out{"00-2ltt-core.dk"};
  if (cfg.nat_morphism_strength == NatStrength::ExternalEq) out.push_back("01-2ltt-nat-external.dk");
  if (cfg.nat_morphism_strength == NatStrength::Definitional) out.push_back("02-2ltt-nat-definitional.dk");
  if (cfg.include_weak_univalence) out.push_back("03-2ltt-univalence.dk");
  if (cfg.t1_injectivity) out.push_back("04-axioms-t1.dk");
  if (cfg.t2_primitive_iso_as_rewrite) out.push_back("05-axioms-t2.dk");
  if (cfg.t3_repletion) out.push_back("06-axioms-t3.dk");
  return out;
}

std::vector<std::string> files_cubical() {
  return {"10-cubical-base.dk", "11-cubical-interval.dk", "12-cubical-paths.dk", "13-cubical-faces.dk", "14-cubical-comp.dk"};
}

std::vector<Declaration> parse_theory_files(const std::vector<std::string>& names, DeclaredNames& declared) {
  std::vector<Declaration> out;
  for (const auto& n : names) {
    auto decls = parse_file(theory_text(n), "theories/" + n, declared);
    out.insert(out.end(), std::make_move_iterator(decls.begin()), std::make_move_iterator(decls.end()));
  }
  return out;
}

std::vector<Declaration> build_2ltt(const TheoryConfig& cfg) {
  cfg.validate();
  DeclaredNames declared;
  return parse_theory_files(files_2ltt(cfg), declared);
}

std::vector<Declaration> build_cubical(const TheoryConfig& cfg) {
  cfg.validate();
  if (!cfg.cubical) throw std::invalid_argument("build_cubical needs cfg.cubical");
  DeclaredNames declared;
  parse_theory_files(files_2ltt(cfg), declared);
  return parse_theory_files(files_cubical(), declared);
}

std::vector<Declaration> build_theory(const TheoryConfig& cfg) {
  cfg.validate();
  auto names = files_2ltt(cfg);
  if (cfg.cubical) {
    auto cub = files_cubical();
    names.insert(names.end(), cub.begin(), cub.end());
  }
  names.push_back("20-examples.dk");
  DeclaredNames declared;
  return parse_theory_files(names, declared);
}

std::vector<Declaration> first_attempt_facetype() {
  TheoryConfig cfg;
  cfg.cubical = true;
  DeclaredNames declared;
  parse_theory_files(files_2ltt(cfg), declared);
  parse_theory_files(files_cubical(), declared);
  return parse_theory_files({"quarantine/facetype-first-attempt.dk"}, declared);
}

std::vector<Declaration> filling_declarations() {
  TheoryConfig cfg;
  cfg.cubical = true;
  DeclaredNames declared;
  auto names = files_2ltt(cfg);
  auto cub = files_cubical();
  names.insert(names.end(), cub.begin(), cub.end());
  names.push_back("20-examples.dk");
  parse_theory_files(names, declared);
  return parse_theory_files({"21-examples-filling.dk"}, declared);
}

FillingExample filling_example(const Term& level) {
  auto k = [](const char* name) { return Term::constant(name); };
  Term i = Term::free("i");
  Term e = Term::free("e");
  Term j = k("j");
  Term conn = Term::app(k("Imin"), {i, j});
  Term line = Term::lam("i", std::nullopt, close(Term::app(k("A"), conn), "i"));
  Term sys = Term::lam("e", std::nullopt,
                       close(Term::lam("i", std::nullopt, close(Term::app(k("u"), {e, conn}), "i")), "e"));
  Term term = Term::app(k("primCompTerm"), {level, k("phi"), line, sys, k("a0"), k("coh")});
  Term type = Term::app(k("eps"), {level, Term::app(k("A"), j)});
  return {term, type};
}

}  // namespace morgandk
