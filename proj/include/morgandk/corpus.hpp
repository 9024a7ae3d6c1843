#pragma once

// The shipped theories: two-level type theory with optional axioms, the
// cubical fragment built on top of it, and the translation of 2LTT syntax.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morgandk/parser.hpp"
#include "morgandk/term.hpp"
#include "morgandk/typechecker.hpp"

namespace morgandk {

enum class NatStrength { None, ExternalEq, Definitional };

std::string to_string(NatStrength s);
std::optional<NatStrength> parse_nat_strength(std::string_view s);

struct TheoryConfig {
  bool t1_injectivity = false;
  bool t2_primitive_iso_as_rewrite = false;
  bool t3_repletion = false;
  NatStrength nat_morphism_strength = NatStrength::None;
  bool include_weak_univalence = false;
  bool cubical = false;

  // Throws std::invalid_argument on combinations that would give two
  // competing treatments of the same isomorphism.
  void validate() const;
  std::string describe() const;
};

struct TheoryFile {
  std::string name;  // path relative to theories/, e.g. "13-cubical-faces.dk"
  std::string_view text;
};

// Every file under theories/, embedded at build time.
const std::vector<TheoryFile>& theory_files();
std::string_view theory_text(std::string_view name);

// Names of the files that make up a configuration, in load order.
std::vector<std::string> files_2ltt(const TheoryConfig& cfg);
std::vector<std::string> files_cubical();
inline const std::vector<std::string> interval_face_files{"11-cubical-interval.dk", "13-cubical-faces.dk"};

std::vector<Declaration> build_2ltt(const TheoryConfig& cfg);
// Cubical declarations only; they extend build_2ltt(cfg).
std::vector<Declaration> build_cubical(const TheoryConfig& cfg);
// 2LTT, then the cubical fragment when cfg.cubical, then the example level `l0`.
std::vector<Declaration> build_theory(const TheoryConfig& cfg);
// The quarantined rules decoding faceType by rewriting.
std::vector<Declaration> first_attempt_facetype();
// Parameters of the filling example and its definition `fill`.
std::vector<Declaration> filling_declarations();

// Parses files in order, sharing one table of declared names.
std::vector<Declaration> parse_theory_files(const std::vector<std::string>& names, DeclaredNames& declared);

struct FillingExample {
  Term term;
  Term type;
};

// primCompTerm over the line `i => A (Imin i j)`; the free names phi, A, u,
// a0, coh and j are the parameters from filling_declarations().
FillingExample filling_example(const Term& level);

// Abstract syntax of two-level type theory.
enum class Layer { Internal, External };

enum class AstKind {
  Var,
  Univ,
  False,
  True,
  Nat,
  Pi,
  Sig,
  Sum,
  Eq,
  Lift,
  Coerce,
  Tt,
  Zero,
  Succ,
  Lam,
  App,
  Pair,
  Fst,
  Snd,
  Inl,
  Inr,
  Refl,
  Up,
  Down,
};

// Families (the B of Pi, Sig, Lam, App, Pair, Fst, Snd) bind `binder` in
// their codomain child. Univ and Lift carry the level they lift from.
struct Ast {
  AstKind kind;
  Layer layer = Layer::Internal;
  std::string binder;
  std::vector<Ast> kids;
  std::optional<Term> from_level;
};

namespace ast {
Ast var(std::string name);
Ast univ(Term from, Layer layer = Layer::Internal);
Ast falsity(Layer layer = Layer::Internal);
Ast truth(Layer layer = Layer::Internal);
Ast nat(Layer layer = Layer::Internal);
Ast pi(std::string x, Ast a, Ast b, Layer layer = Layer::Internal);
Ast sig(std::string x, Ast a, Ast b, Layer layer = Layer::Internal);
Ast sum(Ast a, Ast b, Layer layer = Layer::Internal);
Ast eq(Ast a, Ast x, Ast y, Layer layer = Layer::Internal);
Ast lift(Term from, Ast a, Layer layer = Layer::Internal);
Ast coerce(Ast a);
Ast tt(Layer layer = Layer::Internal);
Ast zero(Layer layer = Layer::Internal);
Ast succ(Ast n, Layer layer = Layer::Internal);
Ast lam(std::string x, Ast a, Ast b, Ast body, Layer layer = Layer::Internal);
Ast app(std::string x, Ast a, Ast b, Ast f, Ast arg, Layer layer = Layer::Internal);
Ast pair(std::string x, Ast a, Ast b, Ast first, Ast second, Layer layer = Layer::Internal);
Ast fst(std::string x, Ast a, Ast b, Ast p, Layer layer = Layer::Internal);
Ast snd(std::string x, Ast a, Ast b, Ast p, Layer layer = Layer::Internal);
Ast inl(Ast a, Ast b, Ast v, Layer layer = Layer::Internal);
Ast inr(Ast a, Ast b, Ast v, Layer layer = Layer::Internal);
Ast refl(Ast a, Ast v, Layer layer = Layer::Internal);
Ast up(Ast a, Ast v);
Ast down(Ast a, Ast v);
}  // namespace ast

class LayerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The translation: types become codes in `T l` / `xT l`, terms become
// inhabitants of their decoding. Throws LayerError on inconsistent layers.
Term encode(const Ast& e, const Term& level);

struct ContextEntry {
  std::string name;
  Ast type;
  Term level;
  Layer layer = Layer::Internal;
};

TypingContext encode_context(const std::vector<ContextEntry>& gamma);

// `eps l A` or `xeps l A`.
Term decode(Layer layer, const Term& level, const Term& code);

}  // namespace morgandk
