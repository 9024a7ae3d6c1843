#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "morgandk/cli.hpp"
#include "support.hpp"

using namespace morgandk;
using namespace morgandk::testing;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string theory(const std::string& name) { return std::string(MORGANDK_SOURCE_DIR) + "/theories/" + name; }

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& text)
      : path_(fs::temp_directory_path() / ("morgandk-test-" + name)) {
    std::ofstream(path_) << text;
  }
  ~TempFile() { fs::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  fs::path path_;
};

std::vector<std::string> shipped_files() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(std::string(MORGANDK_SOURCE_DIR) + "/theories")) {
    if (e.path().extension() == ".dk") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<json> records(const std::string& out) {
  std::vector<json> v;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) v.push_back(json::parse(line));
  return v;
}

const char* sigma_context = "A : T l0.\nB : eps l0 A -> T l0.\na : eps l0 A.\nb : eps l0 (B a).\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check") {
    Run builtin = run({"check"});
    CHECK(builtin.code == kOk);
    CHECK(builtin.out.rfind("ok: builtin corpus", 0) == 0);

    std::vector<std::string> args{"check"};
    for (const auto& f : shipped_files()) args.push_back(f);
    CHECK(run(args).code == kOk);

    Run quarantine = run({"check", theory("00-2ltt-core.dk"), theory("10-cubical-base.dk"),
                          theory("11-cubical-interval.dk"), theory("12-cubical-paths.dk"),
                          theory("13-cubical-faces.dk"), theory("quarantine/facetype-first-attempt.dk")});
    CHECK(quarantine.code == kOk);
  }

  TEST_CASE("check reports type errors with their location") {
    std::string text(theory_text("00-2ltt-core.dk"));
    const std::string good = "p1 i A B (pair i A B a b) --> a.";
    auto at = text.find(good);
    REQUIRE(at != std::string::npos);
    text.replace(at, good.size(), "p1 i A B (pair i A B a b) --> b.");
    TempFile mutated("mutated.dk", text);
    Run r = run({"check", mutated.path()});
    CHECK(r.code == kFailed);
    CHECK(r.err.find(mutated.path() + ":57:1: [rule-ill-typed]") != std::string::npos);

    Run j = run({"check", "--format", "json-lines", mutated.path()});
    auto recs = records(j.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["record"] == "error");
    CHECK(recs[0]["kind"] == "rule-ill-typed");
    CHECK(recs[0]["span"]["line"] == 57);
  }

  TEST_CASE("check exit codes") {
    TempFile bad_syntax("syntax.dk", "A : Type\n");
    CHECK(run({"check", bad_syntax.path()}).code == kParseError);
    TempFile loop("loop.dk",
                  "A : Type.\na : A.\ndef f : A -> A.\n[x] f x --> f x.\nP : A -> Type.\np : P a.\n"
                  "q : P (f a) -> A.\ndef r : A := q p.\n");
    CHECK(run({"check", "--fuel", "300", loop.path()}).code == kFuelExhausted);
    CHECK(run({"check", "/nonexistent/file.dk"}).code == kUsage);
    CHECK(run({}).code == kUsage);
    CHECK(run({"check", "--fuel", "0"}).code == kUsage);
    CHECK(run({"check", "--flag", "nonsense"}).code == kUsage);
    CHECK(run({"check", "--flag", "t2", "--flag", "nat=definitional"}).code == kUsage);
    CHECK(run({"check", "--flag", "t1", "--flag", "t3", "--flag", "univalence"}).code == kOk);
  }

  TEST_CASE("reduce") {
    TempFile ctx("sigma.dk", sigma_context);
    Run p1 = run({"reduce", "p1 l0 A B (pair l0 A B a b)", ctx.path()});
    CHECK(p1.code == kOk);
    CHECK(p1.out == "a\n");
    CHECK(run({"reduce", "sym (sym i)"}).out == "i\n");
    CHECK(run({"reduce", "x"}).out == "x\n");
    CHECK(run({"reduce", "(x =>"}).code == kParseError);
  }

  TEST_CASE("reduce traces replay") {
    Run text = run({"reduce", "--trace", "sym (Imin (sym i) 1)"});
    CHECK(text.out == "step 1 Imin.4\nstep root sym.5\ni\n");

    Run j = run({"reduce", "--trace", "--format", "json-lines", "sym (Imin (sym (Imax i 0)) (sym (sym j)))"});
    REQUIRE(j.code == kOk);
    auto recs = records(j.out);
    REQUIRE(recs.size() >= 2);
    Trace trace;
    for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
      CHECK(recs[k]["record"] == "step");
      trace.push_back(TraceStep{recs[k]["position"].get<Position>(), recs[k]["rule"].get<std::string>()});
    }
    CHECK(recs.back()["record"] == "normal_form");
    const Signature& sig = cubical_sig();
    Term replayed = replay(sig, resolved(sig, "sym (Imin (sym (Imax i 0)) (sym (sym j)))"), trace, 10000);
    CHECK(show(replayed) == recs.back()["term"].get<std::string>());
  }

  TEST_CASE("oracle") {
    CHECK(run({"oracle", "interval", "Imax i j", "Imax j i"}).code == kOk);
    CHECK(run({"oracle", "face", "Fmin (eq0 i) (eq1 i)", "0f"}).code == kOk);
    Run fails = run({"oracle", "interval", "Imax i (sym i)", "1"});
    CHECK(fails.code == kFailed);
    CHECK(fails.out == "fails: i = A\n");
    Run half = run({"oracle", "face", "Fmax (eq0 i) (eq1 i)", "1f"});
    CHECK(half.code == kFailed);
    CHECK(half.out == "fails: i = 1/2\n");
    Run j = run({"oracle", "--format", "json-lines", "interval", "Imax i (sym i)", "1"});
    auto recs = records(j.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["holds"] == false);
    CHECK(recs[0]["witness"] == "i = A");
    CHECK(run({"oracle", "interval", "Imin i", "i"}).code == kParseError);
    CHECK(run({"oracle", "interval", "pair i", "i"}).code == kParseError);
    CHECK(run({"oracle", "cube", "i", "i"}).code == kUsage);
  }

  TEST_CASE("cp") {
    Run shipped = run({"cp", theory("11-cubical-interval.dk"), theory("13-cubical-faces.dk")});
    CHECK(shipped.code == kOk);
    CHECK(shipped.out.find(" 0 not joinable") != std::string::npos);

    Run first = run({"cp", theory("quarantine/facetype-first-attempt.dk"), "--context", theory("11-cubical-interval.dk"),
                     "--context", theory("13-cubical-faces.dk")});
    CHECK(first.code == kFailed);
    CHECK(first.out.find("faceType (Fmin 1f f)") != std::string::npos);

    TempFile empty("empty.dk", "");
    CHECK(run({"cp", empty.path()}).code == kOk);
    CHECK(run({"cp", "/nonexistent/rules.dk"}).code == kUsage);

    Run j = run({"cp", "--format", "json-lines", theory("11-cubical-interval.dk")});
    auto recs = records(j.out);
    REQUIRE_FALSE(recs.empty());
    CHECK(recs.back()["record"] == "summary");
    CHECK(recs.back()["not_joinable"] == 0);
    CHECK(recs.back()["pairs"].get<std::size_t>() + 1 == recs.size());
  }

  TEST_CASE("identical inputs give identical outputs") {
    std::vector<std::string> args{"cp",        theory("quarantine/facetype-first-attempt.dk"),
                                  "--format",  "json-lines",
                                  "--context", theory("11-cubical-interval.dk"),
                                  "--context", theory("13-cubical-faces.dk")};
    CHECK(run(args).out == run(args).out);
  }

  TEST_CASE("MORGANDK_FUEL") {
    TempFile loop("loop-env.dk", "A : Type.\na : A.\ndef f : A -> A.\n[x] f x --> f x.\n");
    ::setenv("MORGANDK_FUEL", "not-a-number", 1);
    CHECK(run({"reduce", "x"}).code == kUsage);
    ::setenv("MORGANDK_FUEL", "100000", 1);
    CHECK(run({"reduce", "f a", loop.path()}).code == kFuelExhausted);
    // The flag overrides the variable.
    ::setenv("MORGANDK_FUEL", "1", 1);
    CHECK(run({"reduce", "--fuel", "100000", "sym (sym i)"}).out == "i\n");
    ::unsetenv("MORGANDK_FUEL");
  }
}
