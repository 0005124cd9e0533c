#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "numeros/nat.hpp"

namespace numeros {

// A point of the space U_n L^n: a flat tuple of line labels.  The empty
// tuple is reserved for the distinguished empty-subset member of finite
// powersets; ordinary atoms never contain it.
using Point = std::vector<Label>;

// A finite subset of the line, canonically sorted and duplicate-free.
// Indices play the role of the "local windows" along which sets are counted.
class Index {
 public:
  Index() = default;
  explicit Index(std::vector<Label> elements) : elems_(std::move(elements)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  static Index ofRange(std::uint64_t n) {
    std::vector<Label> v;
    v.reserve(n);
    for (std::uint64_t x = 0; x < n; ++x) v.emplace_back(x);
    Index i;
    i.elems_ = std::move(v);  // already sorted/unique
    return i;
  }

  bool contains(const Label& x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
  }
  bool containsAll(const Index& other) const {
    return std::includes(elems_.begin(), elems_.end(), other.elems_.begin(),
                         other.elems_.end());
  }
  Index unionWith(const Index& other) const {
    std::vector<Label> out;
    out.reserve(elems_.size() + other.elems_.size());
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(),
                   other.elems_.end(), std::back_inserter(out));
    Index i;
    i.elems_ = std::move(out);
    return i;
  }
  Index minus(const Index& other) const {
    std::vector<Label> out;
    std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(),
                        other.elems_.end(), std::back_inserter(out));
    Index i;
    i.elems_ = std::move(out);
    return i;
  }
  void insert(const Label& x) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
    if (it == elems_.end() || *it != x) elems_.insert(it, x);
  }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<Label>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool operator==(const Index&) const = default;
  auto operator<=>(const Index&) const = default;

  std::size_t hash() const {
    std::size_t seed = elems_.size();
    for (const auto& e : elems_) hashCombine(seed, hashNat(e));
    return seed;
  }

  std::string str() const;

 private:
  std::vector<Label> elems_;
};

// supp(a_1,...,a_n) = {a_1,...,a_n}: the components as a set.
inline Index supportOf(const Point& p) {
  return Index(std::vector<Label>(p.begin(), p.end()));
}

inline std::string pointStr(const Point& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) s += ",";
    s += p[k].str();
  }
  return s + ")";
}

inline std::string Index::str() const {
  std::string s = "{";
  for (std::size_t k = 0; k < elems_.size(); ++k) {
    if (k) s += ",";
    s += elems_[k].str();
  }
  return s + "}";
}

struct IndexHash {
  std::size_t operator()(const Index& i) const { return i.hash(); }
};

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::size_t seed = p.size();
    for (const auto& e : p) hashCombine(seed, hashNat(e));
    return seed;
  }
};

}  // namespace numeros
