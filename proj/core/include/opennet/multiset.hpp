#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "opennet/error.hpp"

namespace opennet {

using Count = std::uint64_t;

namespace detail {
inline Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::CountOverflow, "multiset count overflow");
  return r;
}
inline Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::CountOverflow, "multiset count overflow");
  return r;
}
}  // namespace detail

// Finite multiset in canonical form: items with count 0 are never stored,
// so the defaulted comparisons are extensional.
template <class T>
class Multiset {
 public:
  using map_type = std::map<T, Count>;
  using const_iterator = typename map_type::const_iterator;

  Multiset() = default;
  Multiset(std::initializer_list<std::pair<const T, Count>> init) {
    for (const auto& [x, n] : init) add(x, n);
  }

  static Multiset singleton(const T& x, Count n = 1) {
    Multiset m;
    m.add(x, n);
    return m;
  }

  Count count(const T& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? 0 : it->second;
  }
  Count operator()(const T& x) const { return count(x); }

  Multiset& add(const T& x, Count n = 1) {
    if (n == 0) return *this;
    auto [it, inserted] = entries_.try_emplace(x, 0);
    it->second = detail::checked_add(it->second, n);
    return *this;
  }

  // Removes n copies of x; throws if fewer are present.
  Multiset& remove(const T& x, Count n = 1) {
    if (n == 0) return *this;
    auto it = entries_.find(x);
    if (it == entries_.end() || it->second < n)
      throw Error(ErrorCode::NotSubmultiset, "cannot remove more copies than present");
    it->second -= n;
    if (it->second == 0) entries_.erase(it);
    return *this;
  }

  Multiset& operator+=(const Multiset& o) {
    for (const auto& [x, n] : o.entries_) add(x, n);
    return *this;
  }
  friend Multiset operator+(Multiset a, const Multiset& b) { return a += b; }

  Multiset scaled(Count k) const {
    Multiset r;
    if (k == 0) return r;
    for (const auto& [x, n] : entries_) r.entries_.emplace(x, detail::checked_mul(n, k));
    return r;
  }

  bool empty() const noexcept { return entries_.empty(); }
  // Total number of copies, |u|.
  Count size() const {
    Count s = 0;
    for (const auto& [x, n] : entries_) s = detail::checked_add(s, n);
    return s;
  }
  std::set<T> support() const {
    std::set<T> s;
    for (const auto& [x, n] : entries_) s.insert(x);
    return s;
  }
  const map_type& entries() const noexcept { return entries_; }
  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }

  auto operator<=>(const Multiset&) const = default;
  bool operator==(const Multiset&) const = default;

 private:
  map_type entries_;
};

template <class T>
Multiset<T> sum(const Multiset<T>& u, const Multiset<T>& v) {
  return u + v;
}

template <class T>
bool leq(const Multiset<T>& u, const Multiset<T>& v) {
  for (const auto& [x, n] : u)
    if (v.count(x) < n) return false;
  return true;
}

// v ⊖ u, defined only when u ≤ v.
template <class T>
Multiset<T> diff(const Multiset<T>& v, const Multiset<T>& u) {
  if (!leq(u, v)) throw Error(ErrorCode::NotSubmultiset, "difference of a non-submultiset");
  Multiset<T> w = v;
  for (const auto& [x, n] : u) w.remove(x, n);
  return w;
}

// project(f, u)(x) = u(f(x)) for every x in the domain of f.
template <class X, class Y>
Multiset<X> project(const std::map<X, Y>& f, const Multiset<Y>& u) {
  Multiset<X> r;
  if (u.empty()) return r;
  for (const auto& [x, y] : f) r.add(x, u.count(y));
  return r;
}

// image(f, u)(y) = sum of u(x) over f(x) = y.
template <class X, class Y>
Multiset<Y> image(const std::map<X, Y>& f, const Multiset<X>& u) {
  Multiset<Y> r;
  for (const auto& [x, n] : u) {
    auto it = f.find(x);
    if (it == f.end()) throw Error(ErrorCode::DomainMismatch, "image: map undefined on an item of the multiset");
    r.add(it->second, n);
  }
  return r;
}

// A pushout of sets S1 <-f1- S0 -f2-> S2 with legs alpha1, alpha2 into S3.
template <class S0, class S1, class S2, class S3>
struct SetPushout {
  std::map<S0, S1> f1;
  std::map<S0, S2> f2;
  std::map<S1, S3> alpha1;
  std::map<S2, S3> alpha2;
};

// The unique u3 with project(alpha_i, u3) = u_i, provided u1 and u2 agree on S0.
template <class S0, class S1, class S2, class S3>
Multiset<S3> join(const Multiset<S1>& u1, const Multiset<S2>& u2, const SetPushout<S0, S1, S2, S3>& d) {
  if (project(d.f1, u1) != project(d.f2, u2))
    throw Error(ErrorCode::ProjectionMismatch, "markings disagree on the shared part");
  std::map<S3, Count> acc;
  for (const auto& [s, n] : u1) acc[d.alpha1.at(s)] = n;
  for (const auto& [s, n] : u2) acc[d.alpha2.at(s)] = n;
  Multiset<S3> r;
  for (const auto& [s, n] : acc) r.add(s, n);
  return r;
}

// "2*s + t", or "0" for the empty multiset. `name` renders one item.
template <class T, class F>
std::string to_string(const Multiset<T>& u, F name) {
  if (u.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, n] : u) {
    if (!first) os << " + ";
    first = false;
    if (n != 1) os << n << '*';
    os << name(x);
  }
  return os.str();
}

inline std::string to_string(const Multiset<std::string>& u) {
  return to_string(u, [](const std::string& s) { return s; });
}

}  // namespace opennet
