#include "morgandk/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace morgandk {

std::string SourceSpan::location() const {
  return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ":" +
         std::to_string(column);
}

ParseError::ParseError(SourceSpan span, const std::string& message)
    : std::runtime_error(span.location() + ": [parse] " + message),
      span_(std::move(span)),
      message_(message) {}

std::string Declaration::name() const {
  return std::visit(
      [](const auto& d) -> std::string {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, RuleDecl>) {
          Spine s = spine(d.lhs);
          if (const Free* f = s.head.as<Free>()) return f->name;
          if (const Const* c = s.head.as<Const>()) return c->name;
          return {};
        } else {
          return d.name;
        }
      },
      value);
}

namespace {

enum class Tok { Ident, LParen, RParen, LBrack, RBrack, Comma, Colon, ColonEq, Arrow, FatArrow, LongArrow, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourceSpan sp = here();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", sp});
        return out;
      }
      char c = text_[pos_];
      auto emit = [&](Tok k, std::size_t len) {
        sp.end = sp.begin + len;
        out.push_back({k, std::string(text_.substr(pos_, len)), sp});
        advance(len);
      };
      if (ident_char(c)) {
        std::size_t n = 0;
        while (pos_ + n < text_.size() && ident_char(text_[pos_ + n])) ++n;
        emit(Tok::Ident, n);
      } else if (starts("-->")) {
        emit(Tok::LongArrow, 3);
      } else if (starts("->")) {
        emit(Tok::Arrow, 2);
      } else if (starts("=>")) {
        emit(Tok::FatArrow, 2);
      } else if (starts(":=")) {
        emit(Tok::ColonEq, 2);
      } else if (c == ':') {
        emit(Tok::Colon, 1);
      } else if (c == '(') {
        emit(Tok::LParen, 1);
      } else if (c == ')') {
        emit(Tok::RParen, 1);
      } else if (c == '[') {
        emit(Tok::LBrack, 1);
      } else if (c == ']') {
        emit(Tok::RBrack, 1);
      } else if (c == ',') {
        emit(Tok::Comma, 1);
      } else if (c == '.') {
        emit(Tok::Dot, 1);
      } else {
        sp.end = sp.begin + 1;
        throw ParseError(sp, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  bool starts(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  SourceSpan here() const { return SourceSpan{file_, pos_, pos_, line_, col_}; }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && pos_ < text_.size(); ++k, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
      if (!starts("(;")) return;
      SourceSpan open = here();
      advance(2);
      int depth = 1;
      while (depth > 0) {
        if (pos_ >= text_.size()) throw ParseError(open, "unterminated comment");
        if (starts("(;")) {
          ++depth;
          advance(2);
        } else if (starts(";)")) {
          --depth;
          advance(2);
        } else {
          advance(1);
        }
      }
    }
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<Declaration> file(DeclaredNames& declared) {
    std::vector<Declaration> out;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::LBrack) {
        rules(out, declared);
      } else {
        Declaration d = declaration();
        const std::string name = d.name();
        if (declared.count(name)) throw ParseError(d.span, "redeclaration of `" + name + "`");
        declared[name] = !std::holds_alternative<StaticConst>(d.value);
        out.push_back(std::move(d));
      }
    }
    return out;
  }

  Term lone_term() {
    Term t = term();
    if (peek().kind == Tok::Dot) next();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      const Token& t = peek();
      throw ParseError(t.span, std::string("expected ") + what + ", found " +
                                   (t.kind == Tok::End ? std::string("end of input") : "`" + t.text + "`"));
    }
    return next();
  }

  std::string identifier() {
    Token t = expect(Tok::Ident, "identifier");
    if (t.text == "def") throw ParseError(t.span, "`def` is a keyword");
    return t.text;
  }

  Term variable(const std::string& name) const {
    for (std::size_t k = scope_.size(); k-- > 0;) {
      if (scope_[k] == name) return Term::bound(scope_.size() - 1 - k, name);
    }
    if (name == "Type") return Term::type();
    if (name == "Kind") return Term::kind();
    return Term::free(name);
  }

  bool binder_ahead() const {
    return peek().kind == Tok::Ident && (peek(1).kind == Tok::Colon || peek(1).kind == Tok::FatArrow);
  }

  Term term() {
    if (binder_ahead()) {
      std::string name = identifier();
      if (peek().kind == Tok::FatArrow) {
        next();
        return Term::lam(name, std::nullopt, under(name));
      }
      expect(Tok::Colon, "`:`");
      Term dom = application();
      if (peek().kind == Tok::Arrow) {
        next();
        return Term::pi(name, dom, under(name));
      }
      expect(Tok::FatArrow, "`->` or `=>`");
      return Term::lam(name, dom, under(name));
    }
    Term t = application();
    if (peek().kind == Tok::Arrow) {
      next();
      scope_.push_back("");  // the arrow binds an anonymous variable
      Term cod = term();
      scope_.pop_back();
      return Term::pi("_", t, cod);
    }
    return t;
  }

  Term under(const std::string& name) {
    scope_.push_back(name);
    Term body = term();
    scope_.pop_back();
    return body;
  }

  bool atom_ahead() const { return peek().kind == Tok::Ident || peek().kind == Tok::LParen; }

  Term application() {
    Term t = atom();
    while (atom_ahead()) t = Term::app(t, atom());
    return t;
  }

  Term atom() {
    if (peek().kind == Tok::LParen) {
      next();
      Term t = term();
      expect(Tok::RParen, "`)`");
      return t;
    }
    return variable(identifier());
  }

  // `(x : A) (y : B)` parameters of a declaration.
  std::vector<std::pair<std::string, Term>> params() {
    std::vector<std::pair<std::string, Term>> out;
    while (peek().kind == Tok::LParen) {
      next();
      std::string name = identifier();
      expect(Tok::Colon, "`:`");
      Term ty = term();
      expect(Tok::RParen, "`)`");
      out.emplace_back(name, ty);
      scope_.push_back(name);
    }
    return out;
  }

  Term wrap(const std::vector<std::pair<std::string, Term>>& ps, Term t, bool as_pi) {
    for (std::size_t k = ps.size(); k-- > 0;) {
      t = as_pi ? Term::pi(ps[k].first, ps[k].second, t) : Term::lam(ps[k].first, ps[k].second, t);
    }
    return t;
  }

  Declaration declaration() {
    SourceSpan start = peek().span;
    bool is_def = peek().kind == Tok::Ident && peek().text == "def";
    if (is_def) next();
    std::string name = identifier();
    auto ps = params();
    std::optional<Term> type;
    std::optional<Term> body;
    if (peek().kind == Tok::Colon) {
      next();
      type = term();
    }
    if (is_def && peek().kind == Tok::ColonEq) {
      next();
      body = term();
    }
    scope_.clear();
    Token dot = expect(Tok::Dot, "`.`");
    start.end = dot.span.end;
    if (!type && !body) throw ParseError(start, "declaration of `" + name + "` needs a type or a body");
    if (type) type = wrap(ps, *type, true);
    if (body) {
      return Declaration{Definition{name, type, wrap(ps, *body, false)}, start};
    }
    if (is_def) return Declaration{DefinableConst{name, *type}, start};
    return Declaration{StaticConst{name, *type}, start};
  }

  void rules(std::vector<Declaration>& out, const DeclaredNames& declared) {
    while (peek().kind == Tok::LBrack) {
      SourceSpan start = next().span;
      std::vector<PatternVar> vars;
      while (peek().kind != Tok::RBrack) {
        PatternVar v{identifier(), std::nullopt};
        if (peek().kind == Tok::Colon) {
          next();
          Token n = expect(Tok::Ident, "arity");
          if (!std::all_of(n.text.begin(), n.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError(n.span, "pattern variable arity must be a number");
          v.arity = std::stoul(n.text);
        }
        vars.push_back(v);
        if (peek().kind != Tok::Comma) break;
        next();
      }
      expect(Tok::RBrack, "`]`");
      Term lhs = term();
      expect(Tok::LongArrow, "`-->`");
      Term rhs = term();
      start.end = peek().span.begin;
      RuleDecl r{vars, lhs, rhs};
      validate(r, start, declared);
      out.push_back(Declaration{std::move(r), start});
    }
    expect(Tok::Dot, "`.`");
  }

  static bool first_order(const Term& t) {
    if (const App* a = t.as<App>()) return first_order(a->fn) && first_order(a->arg);
    return t.is<Free>() || t.is<Const>();
  }

  static void validate(const RuleDecl& r, const SourceSpan& span, const DeclaredNames& declared) {
    std::set<std::string> vars;
    for (const auto& v : r.vars) {
      if (!vars.insert(v.name).second) throw ParseError(span, "pattern variable `" + v.name + "` listed twice");
    }
    Spine s = spine(r.lhs);
    const Free* head = s.head.as<Free>();
    if (!head || vars.count(head->name)) throw ParseError(span, "rule left-hand side must be headed by a constant");
    auto it = declared.find(head->name);
    if (it == declared.end()) throw ParseError(span, "rule head `" + head->name + "` is not declared");
    if (!it->second) throw ParseError(span, "rule head `" + head->name + "` is not a definable constant");
    if (!first_order(r.lhs)) throw ParseError(span, "rule left-hand side is not a first-order pattern");
    auto lhs_names = free_vars(r.lhs);
    for (const auto& v : vars) {
      if (!lhs_names.count(v)) throw ParseError(span, "pattern variable `" + v + "` does not occur in the left-hand side");
    }
    for (const auto& n : lhs_names) {
      if (!vars.count(n) && !declared.count(n)) throw ParseError(span, "unknown constant `" + n + "` in pattern");
    }
    for (const auto& n : free_vars(r.rhs)) {
      if (!vars.count(n) && !declared.count(n))
        throw ParseError(span, "unbound variable `" + n + "` in right-hand side");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

// --- printing -------------------------------------------------------------

class Printer {
 public:
  std::string run(const Term& t) {
    print(t, 0);
    return out_.str();
  }

 private:
  // 0: anything, 1: application head or binder domain, 2: argument
  void print(const Term& t, int prec) {
    if (const Sort* s = t.as<Sort>()) {
      out_ << (s->kind == SortKind::Type ? "Type" : "Kind");
    } else if (const Const* c = t.as<Const>()) {
      out_ << c->name;
    } else if (const Free* f = t.as<Free>()) {
      out_ << f->name;
    } else if (const Bound* b = t.as<Bound>()) {
      if (b->index < env_.size()) {
        out_ << env_[env_.size() - 1 - b->index];
      } else {
        out_ << "#" << b->index;
      }
    } else if (const App* a = t.as<App>()) {
      if (prec >= 2) out_ << "(";
      print(a->fn, 1);
      out_ << " ";
      print(a->arg, 2);
      if (prec >= 2) out_ << ")";
    } else if (const Lam* l = t.as<Lam>()) {
      if (prec >= 1) out_ << "(";
      std::string name = choose(l->binder, l->body);
      out_ << name;
      if (l->domain) {
        out_ << " : ";
        print(*l->domain, 1);
      }
      out_ << " => ";
      body(name, l->body);
      if (prec >= 1) out_ << ")";
    } else if (const Pi* p = t.as<Pi>()) {
      if (prec >= 1) out_ << "(";
      if (uses_outer_binder(p->codomain)) {
        std::string name = choose(p->binder, p->codomain);
        out_ << name << " : ";
        print(p->domain, 1);
        out_ << " -> ";
        body(name, p->codomain);
      } else {
        print(p->domain, 1);
        out_ << " -> ";
        body("_", p->codomain);
      }
      if (prec >= 1) out_ << ")";
    }
  }

  void body(const std::string& name, const Term& t) {
    env_.push_back(name);
    print(t, 0);
    env_.pop_back();
  }

  std::string choose(const std::string& hint, const Term& body) const {
    std::string base = base_name(hint);
    bool used = uses_outer_binder(body);
    if (!used) return "_";
    if (base.empty() || base == "_") base = "x";
    std::set<std::string> names;
    collect_names(body, names);
    auto clash = [&](const std::string& n) {
      return names.count(n) || std::find(env_.begin(), env_.end(), n) != env_.end() || n == "Type" ||
             n == "Kind" || n == "def";
    };
    std::string name = base;
    for (int k = 0; clash(name); ++k) name = base + std::to_string(k);
    return name;
  }

  static void collect_names(const Term& t, std::set<std::string>& out) {
    if (const Const* c = t.as<Const>()) out.insert(c->name);
    if (const Free* f = t.as<Free>()) out.insert(f->name);
    if (const App* a = t.as<App>()) {
      collect_names(a->fn, out);
      collect_names(a->arg, out);
    }
    if (const Lam* l = t.as<Lam>()) {
      if (l->domain) collect_names(*l->domain, out);
      collect_names(l->body, out);
    }
    if (const Pi* p = t.as<Pi>()) {
      collect_names(p->domain, out);
      collect_names(p->codomain, out);
    }
  }

  std::ostringstream out_;
  std::vector<std::string> env_;
};

}  // namespace

std::vector<Declaration> parse_file(std::string_view text, const std::string& file_name,
                                    DeclaredNames& declared) {
  Parser p(Lexer(text, file_name).run());
  return p.file(declared);
}

std::vector<Declaration> parse_file(std::string_view text, const std::string& file_name) {
  DeclaredNames declared;
  return parse_file(text, file_name, declared);
}

Term parse_term(std::string_view text) {
  Parser p(Lexer(text, "<term>").run());
  return p.lone_term();
}

std::string pretty_print(const Term& t) { return Printer().run(t); }

std::string print_declaration(const Declaration& d) {
  return std::visit(
      [](const auto& v) -> std::string {
        using D = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<D, StaticConst>) {
          return v.name + " : " + pretty_print(v.type) + ".";
        } else if constexpr (std::is_same_v<D, DefinableConst>) {
          return "def " + v.name + " : " + pretty_print(v.type) + ".";
        } else if constexpr (std::is_same_v<D, Definition>) {
          std::string s = "def " + v.name;
          if (v.type) s += " : " + pretty_print(*v.type);
          return s + " := " + pretty_print(v.body) + ".";
        } else {
          std::string s = "[";
          for (std::size_t k = 0; k < v.vars.size(); ++k) s += (k ? ", " : "") + v.vars[k].name;
          return s + "] " + pretty_print(v.lhs) + " --> " + pretty_print(v.rhs) + ".";
        }
      },
      d.value);
}

std::string print_declarations(const std::vector<Declaration>& decls) {
  std::string out;
  for (const auto& d : decls) out += print_declaration(d) + "\n";
  return out;
}

}  // namespace morgandk
