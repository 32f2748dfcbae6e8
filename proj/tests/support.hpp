// Test-only helpers: exhaustive bispan isomorphism search.
#pragma once

#include <optional>
#include <vector>

#include "wittkit/category.hpp"

namespace wittkit::testsupport {

// backtracking search for a poset isomorphism P -> Q subject to per-element
// candidate filters supplied by the caller
inline bool extend_iso(const TruncationPoset& P, const TruncationPoset& Q,
                       std::vector<Elem>& phi, std::vector<bool>& used, size_t at,
                       const std::function<bool(Elem, Elem)>& admissible) {
  if (at == P.size()) return true;
  Elem a = static_cast<Elem>(at);
  for (Elem b = 0; b < static_cast<Elem>(Q.size()); ++b) {
    if (used[b]) continue;
    if (P.norm(a) != Q.norm(b)) continue;
    if (!admissible(a, b)) continue;
    bool ok = true;
    for (Elem prev = 0; prev < a && ok; ++prev) {
      if (P.divides(prev, a) != Q.divides(phi[prev], b)) ok = false;
      if (P.divides(a, prev) != Q.divides(b, phi[prev])) ok = false;
    }
    if (!ok) continue;
    phi[a] = b;
    used[b] = true;
    if (extend_iso(P, Q, phi, used, at + 1, admissible)) return true;
    used[b] = false;
  }
  return false;
}

// bispans S <- A -> B -> T and S <- A' -> B' -> T are isomorphic when poset
// isomorphisms A ~ A' and B ~ B' commute with all three legs
inline bool bispans_isomorphic(const Bispan& x, const Bispan& y) {
  const TruncationPoset& A = *x.r.source();
  const TruncationPoset& A2 = *y.r.source();
  const TruncationPoset& B = *x.n.target();
  const TruncationPoset& B2 = *y.n.target();
  if (x.from()->canonical_key() != y.from()->canonical_key()) return false;
  if (x.to()->canonical_key() != y.to()->canonical_key()) return false;
  if (A.size() != A2.size() || B.size() != B2.size()) return false;

  // enumerate isomorphisms phi_B first (they must commute with t), then for
  // each, look for a compatible phi_A
  std::vector<Elem> phiB(B.size());
  std::vector<bool> usedB(B2.size(), false);
  std::function<bool(size_t)> searchB = [&](size_t at) -> bool {
    if (at == B.size()) {
      std::vector<Elem> phiA(A.size());
      std::vector<bool> usedA(A2.size(), false);
      auto admissibleA = [&](Elem a, Elem b) {
        return y.r(b) == x.r(a) && y.n(b) == phiB[x.n(a)];
      };
      return extend_iso(A, A2, phiA, usedA, 0, admissibleA);
    }
    Elem b = static_cast<Elem>(at);
    for (Elem c = 0; c < static_cast<Elem>(B2.size()); ++c) {
      if (usedB[c]) continue;
      if (B.norm(b) != B2.norm(c)) continue;
      if (y.t(c) != x.t(b)) continue;
      bool ok = true;
      for (Elem prev = 0; prev < b && ok; ++prev) {
        if (B.divides(prev, b) != B2.divides(phiB[prev], c)) ok = false;
        if (B.divides(b, prev) != B2.divides(c, phiB[prev])) ok = false;
      }
      if (!ok) continue;
      phiB[b] = c;
      usedB[c] = true;
      if (searchB(at + 1)) return true;
      usedB[c] = false;
    }
    return false;
  };
  return searchB(0);
}

}  // namespace wittkit::testsupport
