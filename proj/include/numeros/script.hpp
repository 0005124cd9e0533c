#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "numeros/oracle.hpp"
#include "numeros/setexpr.hpp"

namespace numeros {

// Surface syntax tree of a set expression, kept verbatim for the
// parse-print roundtrip; resolution against defined names happens at run
// time.
struct SynExpr {
  enum class Kind { Name, Points, Prog, Pow, Rename, Binary };
  Kind kind = Kind::Name;

  std::string name;                       // Name
  std::vector<Point> points;              // Points
  // Prog
  std::uint64_t m = 1, r = 0;
  Label start;
  std::vector<Label> plus, minus;
  bool hasStart = false, hasPlus = false, hasMinus = false;

  char op = '|';                          // Binary: | & \ x
  std::shared_ptr<SynExpr> lhs, rhs, inner;
  CongruenceSpec tau;                     // Rename

  std::string str() const;
};

struct Command {
  enum class Kind {
    Define,
    Cmp,
    Num,
    Witness,
    Axioms,
    Scan,
    Code,
    DumpChain,
    Config
  };
  Kind kind = Kind::DumpChain;

  std::string name, name2;
  std::shared_ptr<SynExpr> expr;          // Define
  std::string axiom;                      // Axioms
  std::vector<std::string> argNames;      // Axioms operands
  std::uint64_t scanK = 0;                // Scan ground size
  std::string hfLiteral;                  // Code
  std::string key, value;                 // Config

  std::string str() const;
};

struct Script {
  std::vector<Command> commands;
  std::string str() const;
};

// Throws SyntaxError(line, column, message).
Script parseScript(const std::string& text);

struct RunConfig {
  bool json = false;
  std::size_t budget = 48;
  OracleConfig::ResiduePreference residuePreference =
      OracleConfig::ResiduePreference::Lowest;
  std::size_t chainStages = 50;
};

struct RunResult {
  int exitCode = 0;                 // 0, or 1 + index of the failing command
  std::string transcript;           // human-readable
  std::string jsonLines;            // one JSON object per command
};

// Executes against one fresh OracleState; deterministic per script + config.
RunResult runScript(const Script& script, const RunConfig& config);

}  // namespace numeros
