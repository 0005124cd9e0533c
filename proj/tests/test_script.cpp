#include <doctest.h>

#include <json.hpp>

#include "numeros/errors.hpp"
#include "numeros/script.hpp"

using namespace numeros;
using nlohmann::json;

namespace {

std::vector<json> records(const RunResult& r) {
  std::vector<json> out;
  std::size_t pos = 0;
  while (pos < r.jsonLines.size()) {
    std::size_t nl = r.jsonLines.find('\n', pos);
    if (nl == std::string::npos) nl = r.jsonLines.size();
    std::string line = r.jsonLines.substr(pos, nl - pos);
    if (!line.empty()) out.push_back(json::parse(line));
    pos = nl + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("parse and print roundtrip") {
  std::string text =
      "# demo\n"
      "set E = prog(2,0);\n"
      "set F = {1,2,(3,4)};\n"
      "set G = (E | F) \\ prog(4,0,8,plus={2},minus={12});\n"
      "set H = E x E & rename(perm(1,0), E x E);\n"
      "set P = powfin(F);\n"
      "cmp E G;\n"
      "num P;\n"
      "witness E G;\n"
      "axioms E2 E G;\n"
      "scan H 3;\n"
      "code {{},{{}}};\n"
      "dump-chain;\n";
  Script s = parseScript(text);
  std::string printed = s.str();
  // printing is a fixed point
  CHECK(parseScript(printed).str() == printed);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parseScript("set E = prog(2,0)\nset = bad\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() >= 1);
  }
  CHECK_THROWS_AS(parseScript("cmp E"), SyntaxError);
  CHECK_THROWS_AS(parseScript("set E = prog(2)"), SyntaxError);
  CHECK_THROWS_AS(parseScript("bogus E"), SyntaxError);
}

TEST_CASE("the greek and ascii powerset spellings agree") {
  std::string a = "set P = pow<\xcf\x89(prog(2,0));\n";
  std::string b = "set P = pow<w(prog(2,0));\n";
  std::string c = "set P = powfin(prog(2,0));\n";
  CHECK(parseScript(a).str() == parseScript(b).str());
  CHECK(parseScript(b).str() == parseScript(c).str());
}

TEST_CASE("running a basic session") {
  std::string text =
      "set E = prog(2,0);\n"
      "set N = prog(1,0);\n"
      "set F = {1,2,3};\n"
      "cmp E N;\n"
      "num F;\n"
      "num E;\n";
  RunResult r = runScript(parseScript(text), RunConfig{});
  CHECK(r.exitCode == 0);
  auto recs = records(r);
  REQUIRE(recs.size() == 6);
  for (std::size_t k = 0; k < recs.size(); ++k) {
    CHECK(recs[k]["schema"] == "numeros/1");
    CHECK(recs[k]["cmd"] == k);
  }
  CHECK(recs[3]["kind"] == "cmp");
  CHECK(recs[3]["result"] == "Less");
  CHECK(recs[4]["value"] == "3");
  CHECK(recs[5]["value"].is_null());
  CHECK_FALSE(r.transcript.empty());
}

TEST_CASE("undefined names stop the run with a coded error") {
  RunResult r = runScript(parseScript("cmp A B;\n"), RunConfig{});
  CHECK(r.exitCode == 1);  // command 0 failed
  auto recs = records(r);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["kind"] == "error");
  CHECK(recs[0]["code"] == "UndefinedName");
}

TEST_CASE("config applies only before the first query") {
  std::string ok =
      "config residue-preference = highest;\n"
      "set E = prog(2,0);\n"
      "set D = prog(2,1);\n"
      "cmp E D;\n";
  RunResult r = runScript(parseScript(ok), RunConfig{});
  CHECK(r.exitCode == 0);
  auto recs = records(r);
  CHECK(recs[3]["result"] == "Greater");  // odd stage sizes favor the evens

  std::string late =
      "set E = prog(2,0);\n"
      "cmp E E;\n"
      "config budget = 10;\n";
  RunResult r2 = runScript(parseScript(late), RunConfig{});
  CHECK(r2.exitCode == 3);
  CHECK(records(r2).back()["kind"] == "error");
}

TEST_CASE("witness and scan commands report their summaries") {
  std::string text =
      "set E = prog(2,0);\n"
      "set N = prog(1,0);\n"
      "witness E N;\n"
      "scan E 3;\n";
  RunConfig cfg;
  cfg.chainStages = 10;
  RunResult r = runScript(parseScript(text), cfg);
  REQUIRE(r.exitCode == 0);
  auto recs = records(r);
  CHECK(recs[2]["kind"] == "witness");
  CHECK(recs[2]["verifiedStages"] == 10);
  CHECK(recs[3]["kind"] == "scan");
  CHECK(recs[3]["groundSize"] == 3);
}

TEST_CASE("json output is deterministic") {
  std::string text =
      "set E = prog(2,0);\n"
      "set D = prog(2,1);\n"
      "set N = prog(1,0);\n"
      "cmp E D;\n"
      "cmp D N;\n"
      "witness E N;\n"
      "axioms AP E D;\n"
      "dump-chain;\n";
  RunResult a = runScript(parseScript(text), RunConfig{});
  RunResult b = runScript(parseScript(text), RunConfig{});
  CHECK(a.exitCode == 0);
  CHECK(a.jsonLines == b.jsonLines);
  CHECK(a.transcript == b.transcript);
}

TEST_CASE("code command round-trips hf literals") {
  RunResult r = runScript(parseScript("code {{},{{}}};\n"), RunConfig{});
  CHECK(r.exitCode == 0);
  auto recs = records(r);
  CHECK(recs[0]["kind"] == "code");
  CHECK(recs[0]["code"] == "3");
  CHECK(recs[0]["roundtrip"] == true);
}

TEST_CASE("x is an operator, not an identifier") {
  CHECK_THROWS_AS(parseScript("set x = prog(2,0);\n"), SyntaxError);
  Script s = parseScript("set E = prog(2,0); set P = E x E;\n");
  CHECK(s.commands.size() == 2);
}
