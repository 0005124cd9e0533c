#include "numeros/script.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>

#include "numeros/census.hpp"
#include "numeros/coding.hpp"
#include "numeros/errors.hpp"
#include "numeros/numerosity.hpp"
#include "numeros/witness.hpp"

namespace numeros {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Tokenizer

struct Token {
  enum class Type { Ident, Number, Punct, Pow, End };
  Type type = Type::End;
  std::string text;
  char punct = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    skipSpace();
    cur_ = Token{};
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) {
      cur_.type = Token::Type::End;
      return;
    }
    char c = src_[pos_];
    if (match("pow<\xcf\x89") || match("pow<w") || match("powfin")) {
      cur_.type = Token::Type::Pow;
      cur_.text = "powfin";
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '-') {
          id += d;
          take();
        } else {
          break;
        }
      }
      if (id == "x") {
        cur_.type = Token::Type::Punct;
        cur_.punct = 'x';
      } else {
        cur_.type = Token::Type::Ident;
        cur_.text = id;
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        num += src_[pos_];
        take();
      }
      cur_.type = Token::Type::Number;
      cur_.text = num;
      return;
    }
    static const std::string puncts = "{}(),;=|&\\:x<";
    if (puncts.find(c) != std::string::npos) {
      cur_.type = Token::Type::Punct;
      cur_.punct = c;
      take();
      return;
    }
    throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  bool match(const std::string& lit) {
    if (src_.compare(pos_, lit.size(), lit) != 0) return false;
    for (std::size_t k = 0; k < lit.size(); ++k) take();
    return true;
  }

  void skipSpace() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  void take() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Script parse() {
    Script s;
    while (lex_.peek().type != Token::Type::End) s.commands.push_back(command());
    return s;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw SyntaxError(t.line, t.col, msg);
  }

  void expectPunct(char c) {
    Token t = lex_.next();
    if (t.type != Token::Type::Punct || t.punct != c)
      fail(t, std::string("expected '") + c + "'");
  }

  bool tryPunct(char c) {
    if (lex_.peek().type == Token::Type::Punct && lex_.peek().punct == c) {
      lex_.next();
      return true;
    }
    return false;
  }

  std::string ident(const char* what) {
    Token t = lex_.next();
    if (t.type != Token::Type::Ident) fail(t, std::string("expected ") + what);
    return t.text;
  }

  Nat number() {
    Token t = lex_.next();
    if (t.type != Token::Type::Number) fail(t, "expected a number");
    return Nat(t.text);
  }

  std::uint64_t smallNumber() {
    Token t = lex_.peek();
    Nat n = number();
    if (n > 1000000000) fail(t, "number too large here");
    return n.convert_to<std::uint64_t>();
  }

  Command command() {
    Token t = lex_.peek();
    std::string kw = ident("a statement keyword");
    Command c;
    if (kw == "set") {
      c.kind = Command::Kind::Define;
      c.name = ident("a set name");
      expectPunct('=');
      c.expr = expression();
    } else if (kw == "cmp") {
      c.kind = Command::Kind::Cmp;
      c.name = ident("a set name");
      c.name2 = ident("a set name");
    } else if (kw == "num") {
      c.kind = Command::Kind::Num;
      c.name = ident("a set name");
    } else if (kw == "witness") {
      c.kind = Command::Kind::Witness;
      c.name = ident("a set name");
      c.name2 = ident("a set name");
    } else if (kw == "axioms") {
      c.kind = Command::Kind::Axioms;
      c.axiom = ident("an axiom id");
      while (lex_.peek().type == Token::Type::Ident)
        c.argNames.push_back(ident("a set name"));
    } else if (kw == "scan") {
      c.kind = Command::Kind::Scan;
      c.name = ident("a set name");
      c.scanK = smallNumber();
    } else if (kw == "code") {
      c.kind = Command::Kind::Code;
      c.hfLiteral = hfLiteral();
    } else if (kw == "dump-chain") {
      c.kind = Command::Kind::DumpChain;
    } else if (kw == "config") {
      c.kind = Command::Kind::Config;
      c.key = ident("a config key");
      expectPunct('=');
      Token v = lex_.next();
      if (v.type != Token::Type::Ident && v.type != Token::Type::Number)
        fail(v, "expected a config value");
      c.value = v.text;
    } else {
      fail(t, "unknown statement '" + kw + "'");
    }
    expectPunct(';');
    return c;
  }

  // Raw braces text for an HF literal, rebalanced by brace depth.
  std::string hfLiteral() {
    Token t = lex_.peek();
    if (t.type != Token::Type::Punct || t.punct != '{')
      fail(t, "expected an HF literal");
    std::string out;
    int depth = 0;
    do {
      Token u = lex_.next();
      if (u.type == Token::Type::Punct && u.punct == '{') {
        ++depth;
        out += '{';
      } else if (u.type == Token::Type::Punct && u.punct == '}') {
        --depth;
        out += '}';
      } else if (u.type == Token::Type::Punct && u.punct == ',') {
        out += ',';
      } else {
        fail(u, "unexpected token in HF literal");
      }
    } while (depth > 0);
    return out;
  }

  std::shared_ptr<SynExpr> expression() {
    auto lhs = intersection();
    while (lex_.peek().type == Token::Type::Punct &&
           (lex_.peek().punct == '|' || lex_.peek().punct == '\\')) {
      char op = lex_.next().punct;
      auto e = std::make_shared<SynExpr>();
      e->kind = SynExpr::Kind::Binary;
      e->op = op;
      e->lhs = lhs;
      e->rhs = intersection();
      lhs = e;
    }
    return lhs;
  }

  std::shared_ptr<SynExpr> intersection() {
    auto lhs = product();
    while (lex_.peek().type == Token::Type::Punct && lex_.peek().punct == '&') {
      lex_.next();
      auto e = std::make_shared<SynExpr>();
      e->kind = SynExpr::Kind::Binary;
      e->op = '&';
      e->lhs = lhs;
      e->rhs = product();
      lhs = e;
    }
    return lhs;
  }

  std::shared_ptr<SynExpr> product() {
    auto lhs = primary();
    while (lex_.peek().type == Token::Type::Punct && lex_.peek().punct == 'x') {
      lex_.next();
      auto e = std::make_shared<SynExpr>();
      e->kind = SynExpr::Kind::Binary;
      e->op = 'x';
      e->lhs = lhs;
      e->rhs = primary();
      lhs = e;
    }
    return lhs;
  }

  std::shared_ptr<SynExpr> primary() {
    Token t = lex_.peek();
    if (t.type == Token::Type::Pow) {
      lex_.next();
      expectPunct('(');
      auto e = std::make_shared<SynExpr>();
      e->kind = SynExpr::Kind::Pow;
      e->inner = expression();
      expectPunct(')');
      return e;
    }
    if (t.type == Token::Type::Punct && t.punct == '(') {
      lex_.next();
      auto e = expression();
      expectPunct(')');
      return e;
    }
    if (t.type == Token::Type::Punct && t.punct == '{') return pointSet();
    if (t.type == Token::Type::Ident) {
      if (t.text == "prog") return progression();
      if (t.text == "rename") return renamed();
      lex_.next();
      auto e = std::make_shared<SynExpr>();
      e->kind = SynExpr::Kind::Name;
      e->name = t.text;
      return e;
    }
    fail(t, "expected an expression");
  }

  std::shared_ptr<SynExpr> pointSet() {
    expectPunct('{');
    auto e = std::make_shared<SynExpr>();
    e->kind = SynExpr::Kind::Points;
    if (tryPunct('}')) return e;
    while (true) {
      Point p;
      if (tryPunct('(')) {
        p.push_back(number());
        while (tryPunct(',')) p.push_back(number());
        expectPunct(')');
      } else {
        p.push_back(number());
      }
      e->points.push_back(std::move(p));
      if (tryPunct(',')) continue;
      expectPunct('}');
      break;
    }
    return e;
  }

  std::vector<Label> labelList() {
    std::vector<Label> out;
    expectPunct('{');
    if (tryPunct('}')) return out;
    out.push_back(number());
    while (tryPunct(',')) out.push_back(number());
    expectPunct('}');
    return out;
  }

  std::shared_ptr<SynExpr> progression() {
    lex_.next();  // prog
    expectPunct('(');
    auto e = std::make_shared<SynExpr>();
    e->kind = SynExpr::Kind::Prog;
    Token mt = lex_.peek();
    e->m = smallNumber();
    expectPunct(',');
    e->r = smallNumber();
    if (e->m < 1 || e->r >= e->m) fail(mt, "progression requires 0 <= r < m, m >= 1");
    while (tryPunct(',')) {
      Token t = lex_.peek();
      if (t.type == Token::Type::Number) {
        if (e->hasStart) fail(t, "duplicate start value");
        e->start = number();
        e->hasStart = true;
        continue;
      }
      std::string key = ident("start/plus/minus");
      expectPunct('=');
      if (key == "start") {
        if (e->hasStart) fail(t, "duplicate start value");
        e->start = number();
        e->hasStart = true;
      } else if (key == "plus") {
        if (e->hasPlus) fail(t, "duplicate plus list");
        e->plus = labelList();
        e->hasPlus = true;
      } else if (key == "minus") {
        if (e->hasMinus) fail(t, "duplicate minus list");
        e->minus = labelList();
        e->hasMinus = true;
      } else {
        fail(t, "unknown progression option '" + key + "'");
      }
    }
    expectPunct(')');
    return e;
  }

  std::shared_ptr<SynExpr> renamed() {
    lex_.next();  // rename
    expectPunct('(');
    Token t = lex_.peek();
    std::string kind = ident("perm/regroup/relabel");
    auto e = std::make_shared<SynExpr>();
    e->kind = SynExpr::Kind::Rename;
    expectPunct('(');
    if (kind == "perm") {
      std::vector<std::size_t> perm;
      perm.push_back(static_cast<std::size_t>(smallNumber()));
      while (tryPunct(',')) perm.push_back(static_cast<std::size_t>(smallNumber()));
      expectPunct(')');
      e->tau = CongruenceSpec::componentPermutation(std::move(perm));
    } else if (kind == "regroup") {
      std::vector<std::size_t> groups;
      groups.push_back(static_cast<std::size_t>(smallNumber()));
      while (tryPunct(',')) groups.push_back(static_cast<std::size_t>(smallNumber()));
      expectPunct(')');
      e->tau = CongruenceSpec::regroup(std::move(groups));
    } else if (kind == "relabel") {
      std::vector<std::pair<Label, Label>> pairs;
      do {
        Label from = number();
        expectPunct(':');
        Label to = number();
        pairs.emplace_back(std::move(from), std::move(to));
      } while (tryPunct(','));
      expectPunct(')');
      e->tau = CongruenceSpec::finiteRelabel(std::move(pairs));
    } else {
      fail(t, "unknown congruence '" + kind + "'");
    }
    expectPunct(',');
    e->inner = expression();
    expectPunct(')');
    return e;
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Builder: syntax -> engine expressions

SetExpr build(const SynExpr& e, const std::map<std::string, SetExpr>& env) {
  switch (e.kind) {
    case SynExpr::Kind::Name: {
      auto it = env.find(e.name);
      if (it == env.end())
        throw EngineError(ErrorCode::UndefinedName, "undefined set '" + e.name + "'");
      return it->second;
    }
    case SynExpr::Kind::Points:
      if (e.points.empty()) return makeEmpty();
      return makeFinite(e.points);
    case SynExpr::Kind::Prog:
      return makeProgression(e.m, e.r, e.hasStart ? e.start : Label(0), e.plus,
                             e.minus);
    case SynExpr::Kind::Pow:
      return makeFinPowerset(build(*e.inner, env));
    case SynExpr::Kind::Rename:
      return makeRenamed(e.tau, build(*e.inner, env));
    case SynExpr::Kind::Binary: {
      SetExpr l = build(*e.lhs, env), r = build(*e.rhs, env);
      switch (e.op) {
        case '|': return makeUnion(l, r);
        case '&': return makeIntersect(l, r);
        case '\\': return makeDifference(l, r);
        case 'x': return makeProduct(l, r);
      }
      throw EngineError(ErrorCode::UnsupportedExpression, "bad operator");
    }
  }
  throw EngineError(ErrorCode::UnsupportedExpression, "bad expression node");
}

std::string labelListStr(const std::vector<Label>& xs) {
  std::string s = "{";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += ",";
    s += xs[k].str();
  }
  return s + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// Printers

std::string SynExpr::str() const {
  switch (kind) {
    case Kind::Name:
      return name;
    case Kind::Points: {
      std::string s = "{";
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (k) s += ",";
        s += pointStr(points[k]);
      }
      return s + "}";
    }
    case Kind::Prog: {
      std::string s = "prog(" + std::to_string(m) + "," + std::to_string(r);
      if (hasStart) s += ",start=" + start.str();
      if (hasPlus) s += ",plus=" + labelListStr(plus);
      if (hasMinus) s += ",minus=" + labelListStr(minus);
      return s + ")";
    }
    case Kind::Pow:
      return "powfin(" + inner->str() + ")";
    case Kind::Rename: {
      std::string s = "rename(";
      switch (tau.kind) {
        case CongruenceSpec::Kind::ComponentPermutation: {
          s += "perm(";
          for (std::size_t k = 0; k < tau.permutation.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(tau.permutation[k]);
          }
          s += ")";
          break;
        }
        case CongruenceSpec::Kind::Regroup: {
          s += "regroup(";
          for (std::size_t k = 0; k < tau.groups.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(tau.groups[k]);
          }
          s += ")";
          break;
        }
        case CongruenceSpec::Kind::FiniteRelabel: {
          s += "relabel(";
          for (std::size_t k = 0; k < tau.relabel.size(); ++k) {
            if (k) s += ",";
            s += tau.relabel[k].first.str() + ":" + tau.relabel[k].second.str();
          }
          s += ")";
          break;
        }
      }
      return s + "," + inner->str() + ")";
    }
    case Kind::Binary:
      return "(" + lhs->str() + " " + std::string(1, op) + " " + rhs->str() + ")";
  }
  return "?";
}

std::string Command::str() const {
  switch (kind) {
    case Kind::Define: return "set " + name + " = " + expr->str() + ";";
    case Kind::Cmp: return "cmp " + name + " " + name2 + ";";
    case Kind::Num: return "num " + name + ";";
    case Kind::Witness: return "witness " + name + " " + name2 + ";";
    case Kind::Axioms: {
      std::string s = "axioms " + axiom;
      for (const std::string& n : argNames) s += " " + n;
      return s + ";";
    }
    case Kind::Scan: return "scan " + name + " " + std::to_string(scanK) + ";";
    case Kind::Code: return "code " + hfLiteral + ";";
    case Kind::DumpChain: return "dump-chain;";
    case Kind::Config: return "config " + key + " = " + value + ";";
  }
  return ";";
}

std::string Script::str() const {
  std::string s;
  for (const Command& c : commands) {
    s += c.str();
    s += "\n";
  }
  return s;
}

Script parseScript(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Runner

namespace {

std::string natStr(const Nat& n) { return n.str(); }

struct Runner {
  RunConfig cfg;
  std::unique_ptr<OracleState> oracle;
  std::map<std::string, SetExpr> env;
  std::string transcript;
  std::string jsonLines;

  OracleState& theOracle() {
    if (!oracle) {
      OracleConfig oc;
      oc.budget = cfg.budget;
      oc.residuePreference = cfg.residuePreference;
      oc.chainStages = cfg.chainStages;
      oracle = std::make_unique<OracleState>(oc);
    }
    return *oracle;
  }

  const SetExpr& lookup(const std::string& name) {
    auto it = env.find(name);
    if (it == env.end())
      throw EngineError(ErrorCode::UndefinedName, "undefined set '" + name + "'");
    return it->second;
  }

  void emit(const json& j) {
    jsonLines += j.dump();
    jsonLines += "\n";
  }

  void say(const std::string& line) {
    transcript += line;
    transcript += "\n";
  }

  void run(std::size_t idx, const Command& c) {
    json j;
    j["schema"] = "numeros/1";
    j["cmd"] = idx;
    switch (c.kind) {
      case Command::Kind::Define: {
        SetExpr e = build(*c.expr, env);
        env.insert_or_assign(c.name, e);
        j["kind"] = "set";
        j["name"] = c.name;
        j["expr"] = e.str();
        say("[" + std::to_string(idx) + "] set " + c.name + " = " + e.str());
        break;
      }
      case Command::Kind::Cmp: {
        const SetExpr& a = lookup(c.name);
        const SetExpr& b = lookup(c.name2);
        CompareResult r = theOracle().compare(a, b);
        j["kind"] = "cmp";
        j["a"] = c.name;
        j["b"] = c.name2;
        j["result"] = orderingName(r.ordering);
        j["evidenceStage"] = r.evidenceStage;
        j["commitments"] = theOracle().commitments().size();
        say("[" + std::to_string(idx) + "] cmp " + c.name + " " + c.name2 +
            " -> " + orderingName(r.ordering) + " (stage " +
            std::to_string(r.evidenceStage) + ")");
        break;
      }
      case Command::Kind::Num: {
        Numerosity n = num(theOracle(), lookup(c.name));
        std::optional<Nat> v = toNatural(n);
        j["kind"] = "num";
        j["name"] = c.name;
        if (v)
          j["value"] = natStr(*v);
        else
          j["value"] = nullptr;
        say("[" + std::to_string(idx) + "] num " + c.name + " -> " +
            (v ? natStr(*v) : std::string("NotFinite")));
        break;
      }
      case Command::Kind::Witness: {
        const SetExpr& a = lookup(c.name);
        const SetExpr& b = lookup(c.name2);
        SetExpr w = subWitness(theOracle(), a, b);
        auto sched = w.witnessSchedule();
        // verify the advertised identity along the configured depth
        std::size_t from = sched->commitStage();
        std::size_t verified = 0;
        for (std::size_t k = from; k < from + cfg.chainStages; ++k) {
          const Index& i = theOracle().chainAt(k);
          if (censusAt(a, i) + censusAt(w, i) != censusAt(b, i))
            throw EngineError(ErrorCode::InconsistentCommitment,
                              "witness census mismatch at stage " +
                                  std::to_string(k));
          ++verified;
        }
        j["kind"] = "witness";
        j["a"] = c.name;
        j["b"] = c.name2;
        j["commitStage"] = from;
        j["arity"] = sched->arity();
        j["verifiedStages"] = verified;
        std::string sched_text = sched->exportText();
        j["schedule"] = sched_text;
        say("[" + std::to_string(idx) + "] witness " + c.name + " " + c.name2 +
            " -> commit stage " + std::to_string(from) + ", verified " +
            std::to_string(verified) + " stages");
        break;
      }
      case Command::Kind::Axioms: {
        std::optional<AxiomId> id = axiomFromName(c.axiom);
        if (!id)
          throw EngineError(ErrorCode::UnsupportedExpression,
                            "unknown axiom '" + c.axiom + "'");
        std::vector<SetExpr> inst;
        for (const std::string& n : c.argNames) inst.push_back(lookup(n));
        AxiomReport rep = checkAxiom(theOracle(), *id, {inst});
        j["kind"] = "axioms";
        j["axiom"] = c.axiom;
        j["checked"] = rep.checked;
        j["vacuous"] = rep.vacuous;
        j["unsupported"] = rep.unsupported;
        j["failed"] = rep.failed;
        j["pass"] = rep.pass();
        say("[" + std::to_string(idx) + "] axioms " + c.axiom + " -> " +
            (rep.pass() ? "pass" : "FAIL"));
        break;
      }
      case Command::Kind::Scan: {
        const SetExpr& a = lookup(c.name);
        if (c.scanK > 16)
          throw EngineError(ErrorCode::BudgetExceeded, "scan ground set too large");
        std::size_t full = std::size_t(1) << c.scanK;
        std::vector<Nat> psi(full);
        for (std::size_t m = 0; m < full; ++m) {
          std::vector<Label> xs;
          for (std::size_t b = 0; b < c.scanK; ++b)
            if (m & (std::size_t(1) << b)) xs.emplace_back(b);
          psi[m] = censusAt(a, Index(std::move(xs)));
        }
        PartitionScanReport rep =
            theOracle().partitionScan(psi, c.scanK, 200000000);
        j["kind"] = "scan";
        j["name"] = c.name;
        j["groundSize"] = c.scanK;
        j["maxZeroChainLength"] = rep.maxZeroChainLength;
        j["maxDescentsOnMaximalChain"] = rep.maxDescentsOnMaximalChain;
        j["wellFounded"] = rep.wellFounded;
        j["homogeneousCofinal"] = rep.homogeneousCofinal.has_value();
        say("[" + std::to_string(idx) + "] scan " + c.name + " -> 0-chain " +
            std::to_string(rep.maxZeroChainLength) + ", descents " +
            std::to_string(rep.maxDescentsOnMaximalChain));
        break;
      }
      case Command::Kind::Code: {
        HFSet x = HFSet::parse(c.hfLiteral);
        Nat code = ackermannCode(x);
        bool roundtrip = ackermannDecode(code) == x;
        j["kind"] = "code";
        j["hf"] = x.str();
        j["code"] = natStr(code);
        j["roundtrip"] = roundtrip;
        say("[" + std::to_string(idx) + "] code " + x.str() + " -> " + natStr(code));
        break;
      }
      case Command::Kind::DumpChain: {
        OracleState& o = theOracle();
        j["kind"] = "dump-chain";
        j["chainLength"] = o.chainLength();
        std::vector<std::string> sizes;
        for (std::size_t k = 0; k < o.chainLength(); ++k)
          sizes.push_back(natStr(o.chainSizeAt(k)));
        j["sizes"] = sizes;
        std::vector<std::string> lines;
        for (const Commitment& cm : o.commitments()) lines.push_back(cm.str());
        j["commitments"] = lines;
        say("[" + std::to_string(idx) + "] dump-chain (" +
            std::to_string(o.chainLength()) + " stages, " +
            std::to_string(lines.size()) + " commitments)");
        for (const std::string& l : lines) say("  " + l);
        break;
      }
      case Command::Kind::Config: {
        if (oracle)
          throw EngineError(ErrorCode::UnsupportedExpression,
                            "config must precede the first query");
        if (c.key == "budget") {
          cfg.budget = std::stoul(c.value);
        } else if (c.key == "residue-preference") {
          if (c.value == "lowest")
            cfg.residuePreference = OracleConfig::ResiduePreference::Lowest;
          else if (c.value == "highest")
            cfg.residuePreference = OracleConfig::ResiduePreference::Highest;
          else
            throw EngineError(ErrorCode::UnsupportedExpression,
                              "residue-preference must be lowest or highest");
        } else if (c.key == "chain-stages") {
          cfg.chainStages = std::stoul(c.value);
        } else {
          throw EngineError(ErrorCode::UnsupportedExpression,
                            "unknown config key '" + c.key + "'");
        }
        j["kind"] = "config";
        j["key"] = c.key;
        j["value"] = c.value;
        say("[" + std::to_string(idx) + "] config " + c.key + " = " + c.value);
        break;
      }
    }
    emit(j);
  }
};

}  // namespace

RunResult runScript(const Script& script, const RunConfig& config) {
  Runner runner;
  runner.cfg = config;
  RunResult result;
  for (std::size_t idx = 0; idx < script.commands.size(); ++idx) {
    try {
      runner.run(idx, script.commands[idx]);
    } catch (const EngineError& e) {
      json j;
      j["schema"] = "numeros/1";
      j["cmd"] = idx;
      j["kind"] = "error";
      j["code"] = errorCodeName(e.code());
      j["message"] = e.what();
      runner.emit(j);
      runner.say("[" + std::to_string(idx) + "] error: " + e.what());
      result.exitCode = static_cast<int>(idx % 100) + 1;
      break;
    }
  }
  result.transcript = std::move(runner.transcript);
  result.jsonLines = std::move(runner.jsonLines);
  return result;
}

}  // namespace numeros
