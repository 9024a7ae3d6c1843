#include "morgandk/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "morgandk/corpus.hpp"
#include "morgandk/critical_pairs.hpp"
#include "morgandk/oracle.hpp"
#include "morgandk/parser.hpp"
#include "morgandk/rewriter.hpp"
#include "morgandk/typechecker.hpp"

namespace morgandk {

namespace {

using nlohmann::json;

struct Options {
  std::size_t fuel = default_fuel;
  std::vector<std::string> flags;
  bool trace = false;
  std::string format = "text";
  TheoryConfig cfg;

  bool json_lines() const { return format == "json-lines"; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t default_cli_fuel() {
  const char* env = std::getenv("MORGANDK_FUEL");
  if (!env || !*env) return default_fuel;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw UsageError(std::string("MORGANDK_FUEL must be a positive integer, got `") + env + "`");
  return static_cast<std::size_t>(v);
}

TheoryConfig config_from_flags(const std::vector<std::string>& flags) {
  TheoryConfig cfg;
  cfg.cubical = true;
  for (const auto& f : flags) {
    if (f == "t1") {
      cfg.t1_injectivity = true;
    } else if (f == "t2") {
      cfg.t2_primitive_iso_as_rewrite = true;
    } else if (f == "t3") {
      cfg.t3_repletion = true;
    } else if (f == "univalence") {
      cfg.include_weak_univalence = true;
    } else if (f.rfind("nat=", 0) == 0) {
      auto s = parse_nat_strength(f.substr(4));
      if (!s) throw UsageError("unknown nat strength `" + f.substr(4) + "` (none, external_eq, definitional)");
      cfg.nat_morphism_strength = *s;
    } else {
      throw UsageError("unknown flag `" + f + "` (t1, t2, t3, nat=<strength>, univalence)");
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_files(const std::vector<std::string>& paths) {
  for (const auto& p : paths) {
    if (!std::filesystem::is_regular_file(p)) throw UsageError("no such file: " + p);
  }
}

std::vector<Declaration> parse_paths(const std::vector<std::string>& paths, DeclaredNames& declared) {
  std::vector<Declaration> out;
  for (const auto& p : paths) {
    auto decls = parse_file(read_file(p), p, declared);
    out.insert(out.end(), std::make_move_iterator(decls.begin()), std::make_move_iterator(decls.end()));
  }
  return out;
}

json span_json(const SourceSpan& s) { return {{"file", s.file}, {"line", s.line}, {"column", s.column}}; }

// Maps the library's exceptions to exit codes and diagnostics.
template <typename Body>
int guarded(const Options& opt, std::ostream& out, std::ostream& err, Body&& body) {
  auto report = [&](const std::string& kind, const std::string& text, const SourceSpan* span) {
    if (opt.json_lines()) {
      json rec{{"record", "error"}, {"kind", kind}, {"message", text}};
      if (span) rec["span"] = span_json(*span);
      out << rec.dump() << '\n';
    }
    err << text << '\n';
  };
  try {
    return body();
  } catch (const ParseError& e) {
    report("parse", e.what(), &e.span());
    return kParseError;
  } catch (const TypeError& e) {
    report(to_string(e.kind()), e.what(), &e.span());
    return e.kind() == ErrorKind::Fuel ? kFuelExhausted : kFailed;
  } catch (const FuelExhausted& e) {
    report("fuel", e.what(), nullptr);
    return kFuelExhausted;
  }
}

int cmd_check(const std::vector<std::string>& paths, const Options& opt, std::ostream& out, std::ostream& err) {
  require_files(paths);
  return guarded(opt, out, err, [&] {
    std::vector<Declaration> decls;
    std::string what;
    if (paths.empty()) {
      decls = build_theory(opt.cfg);
      DeclaredNames declared;
      for (const auto& d : decls) declared[d.name()] = true;
      auto fill = parse_theory_files({"21-examples-filling.dk"}, declared);
      decls.insert(decls.end(), fill.begin(), fill.end());
      what = "builtin corpus (" + opt.cfg.describe() + ")";
    } else {
      DeclaredNames declared;
      decls = parse_paths(paths, declared);
      what = std::to_string(paths.size()) + " file" + (paths.size() == 1 ? "" : "s");
    }
    Signature sig = check_signature(decls, opt.fuel);
    const std::size_t rules = sig.rules().size();
    if (opt.json_lines()) {
      out << json{{"record", "checked"}, {"input", what}, {"constants", sig.size()}, {"rules", rules}}.dump() << '\n';
    } else {
      out << "ok: " << what << ", " << sig.size() << " constants, " << rules << " rules\n";
    }
    return static_cast<int>(kOk);
  });
}

int cmd_reduce(const std::string& text, const std::vector<std::string>& paths, const Options& opt, std::ostream& out,
               std::ostream& err) {
  require_files(paths);
  return guarded(opt, out, err, [&] {
    Signature sig = check_signature(build_theory(opt.cfg), opt.fuel);
    DeclaredNames declared;
    for (const auto& name : sig.order()) declared[name] = sig.find(name)->kind == ConstKind::Definable;
    extend_checked(sig, parse_paths(paths, declared), opt.fuel);

    Term t = sig.resolve(parse_term(text));
    Trace trace;
    Term nf = normalize(sig, t, opt.fuel, opt.trace ? &trace : nullptr);
    if (opt.json_lines()) {
      for (const auto& step : trace) {
        out << json{{"record", "step"}, {"position", step.position}, {"rule", step.rule}}.dump() << '\n';
      }
      out << json{{"record", "normal_form"}, {"term", pretty_print(nf)}}.dump() << '\n';
    } else {
      for (const auto& step : trace) out << "step " << format_position(step.position) << ' ' << step.rule << '\n';
      out << pretty_print(nf) << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_oracle(const std::string& kind, const std::string& lhs_text, const std::string& rhs_text, const Options& opt,
               std::ostream& out, std::ostream& err) {
  try {
    Term lhs = parse_term(lhs_text);
    Term rhs = parse_term(rhs_text);
    std::optional<std::string> witness;
    if (kind == "interval") {
      auto v = interval_eq(interval_of_term(lhs), interval_of_term(rhs));
      if (!v.holds()) witness = format_assignment(*v.counterexample);
    } else {
      auto v = face_eq(face_of_term(lhs), face_of_term(rhs));
      if (!v.holds()) witness = format_assignment(*v.counterexample);
    }
    if (opt.json_lines()) {
      json rec{{"record", "oracle"}, {"domain", kind}, {"holds", !witness}};
      if (witness) rec["witness"] = *witness;
      out << rec.dump() << '\n';
    } else {
      out << (witness ? "fails: " + *witness : std::string("holds")) << '\n';
    }
    return witness ? kFailed : kOk;
  } catch (const ParseError& e) {
    err << e.what() << '\n';
  } catch (const OutOfDomain& e) {
    err << "out of domain: " << e.what() << '\n';
  }
  return kParseError;
}

int cmd_cp(const std::vector<std::string>& paths, const std::vector<std::string>& context, bool builtin,
           const Options& opt, std::ostream& out, std::ostream& err) {
  require_files(context);
  require_files(paths);
  return guarded(opt, out, err, [&] {
    DeclaredNames declared;
    std::vector<Declaration> decls;
    if (builtin) decls = parse_theory_files({"00-2ltt-core.dk", "10-cubical-base.dk"}, declared);
    auto extra = parse_paths(context, declared);
    decls.insert(decls.end(), extra.begin(), extra.end());
    auto analysed = parse_paths(paths, declared);
    decls.insert(decls.end(), analysed.begin(), analysed.end());

    Signature sig = assemble_unchecked(decls);
    // Rewrite rules (not definition unfoldings) of the context and analysed
    // files; only overlaps involving an analysed rule are reported.
    auto in = [](const std::vector<std::string>& files, const RewriteRule& r) {
      return std::find(files.begin(), files.end(), r.span.file) != files.end();
    };
    std::vector<RewriteRule> rules;
    std::set<std::string> analysed_rules;
    for (const auto& r : sig.rules()) {
      if (r.name.find(":=") != std::string::npos) continue;
      if (in(paths, r)) {
        analysed_rules.insert(r.name);
        rules.push_back(r);
      } else if (in(context, r)) {
        rules.push_back(r);
      }
    }

    std::vector<CriticalPair> pairs;
    for (auto& cp : critical_pairs(rules)) {
      if (analysed_rules.count(cp.outer_rule) || analysed_rules.count(cp.inner_rule)) pairs.push_back(std::move(cp));
    }
    std::size_t failures = 0;
    for (const auto& cp : pairs) {
      auto v = joinable(sig, cp, opt.fuel);
      if (!v.holds()) ++failures;
      if (opt.json_lines()) {
        json rec{{"record", "critical_pair"},
                 {"outer_rule", cp.outer_rule},
                 {"inner_rule", cp.inner_rule},
                 {"position", cp.position},
                 {"overlap", pretty_print(cp.overlap)},
                 {"outer_reduct", pretty_print(cp.outer_reduct)},
                 {"inner_reduct", pretty_print(cp.inner_reduct)},
                 {"joinable", v.holds()}};
        if (!v.holds()) {
          rec["outer_normal_form"] = pretty_print(v.counterexample->first);
          rec["inner_normal_form"] = pretty_print(v.counterexample->second);
        }
        out << rec.dump() << '\n';
      } else if (!v.holds()) {
        out << "not joinable: " << describe(cp) << '\n'
            << "  outer normal form: " << pretty_print(v.counterexample->first) << '\n'
            << "  inner normal form: " << pretty_print(v.counterexample->second) << '\n';
      }
    }
    if (opt.json_lines()) {
      out << json{{"record", "summary"}, {"rules", analysed_rules.size()}, {"pairs", pairs.size()}, {"not_joinable", failures}}
                 .dump()
          << '\n';
    } else {
      out << analysed_rules.size() << " rules, " << pairs.size() << " critical pairs, " << failures << " not joinable\n";
    }
    return failures == 0 ? kOk : kFailed;
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type checker and rewriting toolkit for two-level and cubical type theory", "morgandk"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--fuel", opt.fuel, "Reduction step budget (default 100000, or MORGANDK_FUEL)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--flag", opt.flags, "Theory flag: t1, t2, t3, nat=<none|external_eq|definitional>, univalence");
    sub->add_flag("--trace", opt.trace, "Print the reduction trace");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json-lines"}));
  };

  std::vector<std::string> check_paths;
  auto* check = app.add_subcommand("check", "Type-check theory files as one signature (builtin corpus if none)");
  check->add_option("paths", check_paths, "Theory files, concatenated in order");
  add_common(check);

  std::string term_text;
  std::vector<std::string> reduce_paths;
  auto* reduce = app.add_subcommand("reduce", "Normalize a term over the builtin corpus and optional context files");
  reduce->add_option("term", term_text, "Term to normalize")->required();
  reduce->add_option("context", reduce_paths, "Context files checked on top of the corpus");
  add_common(reduce);

  std::string domain, lhs, rhs;
  auto* oracle = app.add_subcommand("oracle", "Decide an interval or face equation semantically");
  oracle->add_option("domain", domain, "interval or face")->required()->check(CLI::IsMember({"interval", "face"}));
  oracle->add_option("lhs", lhs, "Left-hand side")->required();
  oracle->add_option("rhs", rhs, "Right-hand side")->required();
  add_common(oracle);

  std::vector<std::string> cp_paths, cp_context;
  bool no_builtin = false;
  auto* cp = app.add_subcommand("cp", "Compute the critical pairs of the rules in the given files");
  cp->add_option("paths", cp_paths, "Files whose rules are analysed");
  cp->add_option("--context", cp_context,
                 "Files loaded before the analysed ones; their rules only count in overlaps with analysed rules");
  cp->add_flag("--no-builtin", no_builtin, "Do not preload the core and cubical base definitions");
  add_common(cp);

  try {
    opt.fuel = default_cli_fuel();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    opt.cfg = config_from_flags(opt.flags);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*check) return cmd_check(check_paths, opt, out, err);
    if (*reduce) return cmd_reduce(term_text, reduce_paths, opt, out, err);
    if (*oracle) return cmd_oracle(domain, lhs, rhs, opt, out, err);
    return cmd_cp(cp_paths, cp_context, !no_builtin, opt, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace morgandk
