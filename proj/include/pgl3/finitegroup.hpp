#pragma once

// Explicit finite subgroups of PGL_3 stored as element sets.
//
// Groups here have at most a few hundred elements, so closure, subgroup
// searches, normalizers and conjugacy tests are plain enumeration over the
// ambient group with exact hashing on canonical scalings.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pgl3/error.hpp"
#include "pgl3/projlinear.hpp"

namespace pgl3 {

inline constexpr std::size_t kDefaultClosureCap = 400;

struct GroupFingerprint {
  std::size_t order = 0;
  std::map<int, int> order_histogram;
  bool abelian = true;

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

class FiniteSubgroup {
public:
  /// Breadth-first product closure of the generators.
  static FiniteSubgroup closure(std::vector<ProjElement> gens,
                                std::size_t cap = kDefaultClosureCap) {
    if (cap < 1) fail(ErrorKind::InvalidInput, "closure cap must be >= 1");
    long n = 1;
    for (const auto& g : gens) n = lcm_conductor(n, g.conductor());
    for (auto& g : gens) g = g.embedded(n);

    FiniteSubgroup grp;
    grp.gens_ = gens;
    grp.insert(ProjElement::identity(n));
    for (std::size_t head = 0; head < grp.elems_.size(); ++head) {
      for (const auto& g : gens) {
        ProjElement y = grp.elems_[head] * g;
        if (grp.contains(y)) continue;
        if (grp.elems_.size() >= cap)
          fail(ErrorKind::ClosureExceedsCap,
               "closure exceeds " + std::to_string(cap) + " elements");
        grp.insert(std::move(y));
      }
    }
    return grp;
  }

  /// Subgroup from a set already known to be closed; generators are picked
  /// greedily from it and the closure is checked against the set.
  static FiniteSubgroup from_elements(const std::vector<ProjElement>& elems) {
    if (elems.empty()) fail(ErrorKind::InvalidInput, "empty element set");
    const std::size_t cap = elems.size() + 1;
    FiniteSubgroup acc = closure({ProjElement::identity(elems.front().conductor())}, cap);
    std::vector<ProjElement> gens;
    for (const auto& e : elems) {
      if (acc.contains(e)) continue;
      gens.push_back(e);
      acc = closure(gens, cap);
    }
    if (acc.order() != elems.size())
      fail(ErrorKind::InvalidInput, "element set is not a subgroup");
    return acc;
  }

  const std::vector<ProjElement>& generators() const { return gens_; }
  const std::vector<ProjElement>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  long conductor() const { return elems_.front().conductor(); }

  bool contains(const ProjElement& g) const {
    if (g.conductor() == conductor()) return index_.count(g.key()) != 0;
    const long n = lcm_conductor(g.conductor(), conductor());
    if (n == conductor()) return index_.count(g.embedded(n).key()) != 0;
    return std::any_of(elems_.begin(), elems_.end(),
                       [&](const ProjElement& e) { return e == g; });
  }

  bool is_subset_of(const FiniteSubgroup& other) const {
    return std::all_of(elems_.begin(), elems_.end(),
                       [&](const ProjElement& e) { return other.contains(e); });
  }

  friend bool operator==(const FiniteSubgroup& a, const FiniteSubgroup& b) {
    return a.order() == b.order() && a.is_subset_of(b);
  }

  /// Embed every element into Q(zeta_n).
  FiniteSubgroup embedded(long n) const {
    FiniteSubgroup r;
    for (const auto& g : gens_) r.gens_.push_back(g.embedded(n));
    for (const auto& e : elems_) r.insert(e.embedded(n));
    return r;
  }

  /// psi^-1 G psi, elementwise.
  FiniteSubgroup conjugated_by(const ProjElement& psi) const {
    const ProjElement inv = psi.inverse();
    FiniteSubgroup r;
    for (const auto& g : gens_) r.gens_.push_back(inv * g * psi);
    for (const auto& e : elems_) r.insert(inv * e * psi);
    return r;
  }

  /// Order of an element, bounded by the group order.
  int element_order(const ProjElement& g) const {
    return proj_order(g, static_cast<int>(order()));
  }

  /// Every element order divides the group order.
  bool satisfies_lagrange() const {
    for (const auto& e : elems_)
      if (order() % static_cast<std::size_t>(element_order(e)) != 0) return false;
    return true;
  }

  /// Closed under products and inverses, contains the identity.
  bool is_closed() const {
    if (!contains(ProjElement::identity(conductor()))) return false;
    for (const auto& e : elems_) {
      if (!contains(e.inverse())) return false;
      for (const auto& g : gens_)
        if (!contains(e * g)) return false;
    }
    return true;
  }

private:
  FiniteSubgroup() = default;

  void insert(ProjElement e) {
    index_.emplace(e.key(), elems_.size());
    elems_.push_back(std::move(e));
  }

  std::vector<ProjElement> gens_;
  std::vector<ProjElement> elems_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline FiniteSubgroup closure(const std::vector<ProjElement>& gens,
                              std::size_t cap = kDefaultClosureCap) {
  return FiniteSubgroup::closure(gens, cap);
}

inline GroupFingerprint fingerprint(const FiniteSubgroup& g) {
  GroupFingerprint fp;
  fp.order = g.order();
  for (const auto& e : g.elements()) ++fp.order_histogram[g.element_order(e)];
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size() && fp.abelian; ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) {
        fp.abelian = false;
        break;
      }
  return fp;
}

/// Elementwise Galois image.
inline FiniteSubgroup sigma_image(const FiniteSubgroup& g) {
  std::vector<ProjElement> gens, elems;
  for (const auto& x : g.generators()) gens.push_back(x.sigma());
  for (const auto& x : g.elements()) elems.push_back(x.sigma());
  // sigma maps a closed set onto a closed set; rebuild from the generators
  // and confirm the element sets agree.
  FiniteSubgroup r = FiniteSubgroup::closure(gens, g.order() + 1);
  for (const auto& e : elems)
    if (!r.contains(e)) fail(ErrorKind::InvalidInput, "sigma image is not closed");
  return r;
}

/// A commuting pair of order-3 elements generating C3 x C3, if any.
inline std::optional<std::pair<ProjElement, ProjElement>> find_subgroup_C3xC3(const FiniteSubgroup& g) {
  std::vector<ProjElement> threes;
  for (const auto& e : g.elements())
    if (!e.is_identity() && e.pow(3).is_identity()) threes.push_back(e);
  for (std::size_t i = 0; i < threes.size(); ++i) {
    const ProjElement sq = threes[i] * threes[i];
    for (std::size_t j = i + 1; j < threes.size(); ++j) {
      const auto& x = threes[i];
      const auto& y = threes[j];
      if (y == sq) continue;  // same cyclic subgroup
      if (x * y != y * x) continue;
      if (closure({x, y}, 10).order() == 9) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

namespace detail {

inline void require_subgroup(const FiniteSubgroup& h, const FiniteSubgroup& ambient, const char* what) {
  if (!h.is_subset_of(ambient))
    fail(ErrorKind::NotSubgroupOfAmbient, std::string(what) + " is not contained in the ambient group");
}

// psi^-1 H psi == K, testing generator images only (|H| == |K| is checked).
inline bool conjugates_onto(const FiniteSubgroup& h, const FiniteSubgroup& k, const ProjElement& psi) {
  if (h.order() != k.order()) return false;
  const ProjElement inv = psi.inverse();
  for (const auto& g : h.generators())
    if (!k.contains(inv * g * psi)) return false;
  return true;
}

} // namespace detail

/// Some psi in the ambient group with psi^-1 H psi = K, by exhaustion.
inline std::optional<ProjElement> subgroup_conjugacy_search(const FiniteSubgroup& h,
                                                            const FiniteSubgroup& k,
                                                            const FiniteSubgroup& ambient) {
  detail::require_subgroup(h, ambient, "H");
  detail::require_subgroup(k, ambient, "K");
  if (h.order() != k.order()) return std::nullopt;
  for (const auto& psi : ambient.elements())
    if (detail::conjugates_onto(h, k, psi)) {
      if (!(h.conjugated_by(psi) == k))
        fail(ErrorKind::InvalidInput, "conjugator failed setwise recheck");
      return psi;
    }
  return std::nullopt;
}

/// {g in ambient : g^-1 H g = H}
inline FiniteSubgroup normalizer_in(const FiniteSubgroup& h, const FiniteSubgroup& ambient) {
  detail::require_subgroup(h, ambient, "H");
  std::vector<ProjElement> norm;
  for (const auto& g : ambient.elements())
    if (detail::conjugates_onto(h, h, g)) norm.push_back(g);
  return FiniteSubgroup::from_elements(norm);
}

} // namespace pgl3
