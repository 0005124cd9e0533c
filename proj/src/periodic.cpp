#include "numeros/periodic.hpp"

#include <algorithm>
#include <numeric>

#include "numeros/errors.hpp"

namespace numeros {

namespace {

std::uint64_t residueOf(const Label& x, std::uint64_t m) {
  return static_cast<std::uint64_t>(x % m);
}

}  // namespace

bool PeriodicSet::base(const Label& x) const {
  return residues_[residueOf(x, modulus_)];
}

bool PeriodicSet::hasEdit(const Label& x) const {
  return std::binary_search(edits_.begin(), edits_.end(), x);
}

bool PeriodicSet::contains(const Label& x) const { return base(x) != hasEdit(x); }

PeriodicSet PeriodicSet::finite(std::vector<Label> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  PeriodicSet s;
  s.edits_ = std::move(xs);
  return s;
}

PeriodicSet PeriodicSet::progression(std::uint64_t m, std::uint64_t r, const Label& start,
                                     const std::vector<Label>& plus,
                                     const std::vector<Label>& minus) {
  if (m < 1 || r >= m)
    throw EngineError(ErrorCode::MalformedAtom,
                      "progression requires m >= 1 and 0 <= r < m");
  PeriodicSet s;
  s.modulus_ = m;
  s.residues_.assign(m, false);
  s.residues_[r] = true;
  // Members of the residue class below `start` are edited out.
  for (Label x = r; x < start; x += m) s.edits_.push_back(x);
  for (const Label& p : plus)
    for (const Label& q : minus)
      if (p == q)
        throw EngineError(ErrorCode::MalformedAtom, "plus and minus overlap");
  for (const Label& p : plus)
    if (!(p >= start && residueOf(p, m) == r)) s.edits_.push_back(p);
  for (const Label& q : minus)
    if (q >= start && residueOf(q, m) == r) s.edits_.push_back(q);
  std::sort(s.edits_.begin(), s.edits_.end());
  s.edits_.erase(std::unique(s.edits_.begin(), s.edits_.end()), s.edits_.end());
  s.canonicalize();
  return s;
}

void PeriodicSet::canonicalize() {
  // Reduce the modulus when the residue pattern repeats with a shorter period.
  for (std::uint64_t d = 1; d < modulus_; ++d) {
    if (modulus_ % d != 0) continue;
    bool repeats = true;
    for (std::uint64_t k = 0; k < modulus_ && repeats; ++k)
      repeats = residues_[k] == residues_[k % d];
    if (repeats) {
      residues_.resize(d);
      modulus_ = d;
      break;
    }
  }
}

PeriodicSet PeriodicSet::complement() const {
  PeriodicSet s = *this;
  for (std::size_t k = 0; k < s.residues_.size(); ++k)
    s.residues_[k] = !s.residues_[k];
  return s;
}

PeriodicSet PeriodicSet::intersect(const PeriodicSet& other) const {
  PeriodicSet out;
  out.modulus_ = std::lcm(modulus_, other.modulus_);
  out.residues_.assign(out.modulus_, false);
  for (std::uint64_t k = 0; k < out.modulus_; ++k)
    out.residues_[k] = residues_[k % modulus_] && other.residues_[k % other.modulus_];
  std::vector<Label> cand = edits_;
  cand.insert(cand.end(), other.edits_.begin(), other.edits_.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (const Label& x : cand) {
    bool want = contains(x) && other.contains(x);
    bool have = out.residues_[residueOf(x, out.modulus_)];
    if (want != have) out.edits_.push_back(x);
  }
  out.canonicalize();
  return out;
}

PeriodicSet PeriodicSet::unite(const PeriodicSet& other) const {
  return complement().intersect(other.complement()).complement();
}

PeriodicSet PeriodicSet::subtract(const PeriodicSet& other) const {
  return intersect(other.complement());
}

PeriodicSet PeriodicSet::relabel(
    const std::vector<std::pair<Label, Label>>& pairs) const {
  PeriodicSet out = *this;
  for (const auto& [from, to] : pairs) {
    if (from == to) continue;
    bool memberFrom = contains(from);
    // Remove `to`'s old status, give it `from`'s; and vice versa is handled
    // by the pair (to, x) elsewhere in a full permutation.  Here we only
    // transfer membership of `from` onto `to`.
    if (out.contains(to) != memberFrom) {
      // flip `to`
      auto it = std::lower_bound(out.edits_.begin(), out.edits_.end(), to);
      if (it != out.edits_.end() && *it == to)
        out.edits_.erase(it);
      else
        out.edits_.insert(it, to);
    }
  }
  return out;
}

bool PeriodicSet::isFinite() const {
  return std::none_of(residues_.begin(), residues_.end(), [](bool b) { return b; });
}

bool PeriodicSet::isEmpty() const {
  if (!isFinite()) return false;
  for (const Label& x : edits_)
    if (contains(x)) return false;
  return true;
}

std::size_t PeriodicSet::residueCount() const {
  return std::count(residues_.begin(), residues_.end(), true);
}

Nat PeriodicSet::countBelow(const Label& n) const {
  Nat total = 0;
  Nat q = n / modulus_;
  std::uint64_t rem = static_cast<std::uint64_t>(n % modulus_);
  for (std::uint64_t r = 0; r < modulus_; ++r)
    if (residues_[r]) total += q + (r < rem ? 1 : 0);
  for (const Label& x : edits_) {
    if (x >= n) break;
    total += base(x) ? -1 : 1;
  }
  return total;
}

Nat PeriodicSet::countIn(const Index& i) const {
  Nat total = 0;
  for (const Label& x : i)
    if (contains(x)) ++total;
  return total;
}

std::vector<Label> PeriodicSet::elementsBelow(const Label& n) const {
  std::vector<Label> out;
  for (Label x = 0; x < n; ++x)
    if (contains(x)) out.push_back(x);
  return out;
}

std::string PeriodicSet::str() const {
  std::string s = "periodic(m=" + std::to_string(modulus_) + ",R={";
  bool first = true;
  for (std::uint64_t r = 0; r < modulus_; ++r)
    if (residues_[r]) {
      if (!first) s += ",";
      s += std::to_string(r);
      first = false;
    }
  s += "},X={";
  for (std::size_t k = 0; k < edits_.size(); ++k) {
    if (k) s += ",";
    s += edits_[k].str();
  }
  return s + "})";
}

}  // namespace numeros
