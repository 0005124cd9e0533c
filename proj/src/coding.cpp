#include "numeros/coding.hpp"

#include <algorithm>
#include <cctype>

#include "numeros/errors.hpp"

namespace numeros {

HFSet::HFSet(std::vector<HFSet> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (const HFSet& m : members_) {
    if (m.code_ > 200000)
      throw EngineError(ErrorCode::BudgetExceeded,
                        "member code too large to exponentiate");
    code_ += Nat(1) << m.code_.convert_to<unsigned>();
  }
}

std::size_t HFSet::rank() const {
  std::size_t r = 0;
  for (const HFSet& m : members_) r = std::max(r, m.rank() + 1);
  return r;
}

HFSet HFSet::decode(const Nat& n) {
  std::vector<HFSet> members;
  Nat rest = n;
  while (rest != 0) {
    unsigned p = boost::multiprecision::lsb(rest);
    members.push_back(decode(Nat(p)));
    boost::multiprecision::bit_unset(rest, p);
  }
  return HFSet(std::move(members));
}

namespace {

HFSet parseAt(const std::string& s, std::size_t& pos) {
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip();
  if (pos >= s.size() || s[pos] != '{')
    throw EngineError(ErrorCode::MalformedAtom, "expected '{' in HF literal");
  ++pos;
  std::vector<HFSet> members;
  skip();
  if (pos < s.size() && s[pos] == '}') {
    ++pos;
    return HFSet(std::move(members));
  }
  while (true) {
    members.push_back(parseAt(s, pos));
    skip();
    if (pos < s.size() && s[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < s.size() && s[pos] == '}') {
      ++pos;
      return HFSet(std::move(members));
    }
    throw EngineError(ErrorCode::MalformedAtom, "expected ',' or '}' in HF literal");
  }
}

}  // namespace

HFSet HFSet::parse(const std::string& text) {
  std::size_t pos = 0;
  HFSet out = parseAt(text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
    ++pos;
  if (pos != text.size())
    throw EngineError(ErrorCode::MalformedAtom, "trailing input after HF literal");
  return out;
}

std::string HFSet::str() const {
  std::string s = "{";
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k) s += ",";
    s += members_[k].str();
  }
  return s + "}";
}

SetExpr codeSet(const std::vector<HFSet>& X) {
  std::vector<Point> pts;
  for (const HFSet& x : X) pts.push_back(Point{x.code()});
  if (pts.empty()) return makeEmpty();
  return makeFinite(std::move(pts));
}

DoubletonProduct doubletonProduct(const std::vector<HFSet>& X,
                                  const std::vector<HFSet>& Y) {
  DoubletonProduct out;
  std::vector<Nat> codes;
  for (const HFSet& x : X)
    for (const HFSet& y : Y) {
      ++out.pairsConsidered;
      Nat code;
      if (x == y) {
        ++out.degeneratePairs;
        code = HFSet({x}).code();  // {x,x} = {x}
      } else {
        code = HFSet({x, y}).code();
      }
      codes.push_back(std::move(code));
    }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  out.distinctCodes = codes.size();
  std::vector<Point> pts;
  for (const Nat& c : codes) pts.push_back(Point{c});
  out.expr = pts.empty() ? makeEmpty() : makeFinite(std::move(pts));
  return out;
}

Index pairClosedIndex(const std::vector<HFSet>& X, const std::vector<HFSet>& Y) {
  std::vector<Label> xs;
  for (const HFSet& x : X) xs.push_back(x.code());
  for (const HFSet& y : Y) xs.push_back(y.code());
  for (const HFSet& x : X)
    for (const HFSet& y : Y)
      xs.push_back(x == y ? HFSet({x}).code() : HFSet({x, y}).code());
  return Index(std::move(xs));
}

}  // namespace numeros
