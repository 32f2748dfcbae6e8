#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wittkit/maps.hpp"
#include "wittkit/poset.hpp"
#include "wittkit/ring.hpp"

namespace wittkit {

struct WittVector {
  PosetPtr poset;
  RingPtr ring;
  std::vector<RingElement> coords;  // indexed by poset element

  static WittVector make(PosetPtr p, RingPtr r, std::vector<RingElement> c);
  bool operator==(const WittVector& o) const;
};

struct GhostVector {
  PosetPtr poset;
  RingPtr ring;
  std::vector<RingElement> coords;

  static GhostVector make(PosetPtr p, RingPtr r, std::vector<RingElement> c);
  bool operator==(const GhostVector& o) const;
};

// x_s = sum over t | s of |t| * a_t^(|s|/|t|)
GhostVector ghost(const WittVector& v);

// inverse of the ghost map; torsion-free rings, fails when g is not in the
// image (reported with the offending element)
WittVector unghost(const GhostVector& g);
std::optional<WittVector> try_unghost(const GhostVector& g);

struct DworkReport {
  bool ok = true;
  int64_t prime = 0;       // first failing prime, when !ok
  Elem element = -1;       // first failing element, when !ok
  std::string detail;
};
// Dwork's congruence criterion for membership in the ghost image
DworkReport dwork_check(const GhostVector& g);

// ghost-coordinate forms of the three induced operations
GhostVector ghost_pull(const PosetMap& f, const GhostVector& g);      // over target -> source
GhostVector ghost_transfer(const PosetMap& f, const GhostVector& g);  // over source -> target
GhostVector ghost_norm(const PosetMap& f, const GhostVector& g);      // over source -> target

enum class OpKind { Pull, Transfer, Norm };
const char* op_kind_name(OpKind k);

/// Witt-coordinate polynomials for an induced operation, computed once over
/// the universal coefficient ring Z[a_s] and evaluated in any ring.
struct UniversalFormula {
  PosetMap map;
  OpKind kind;
  PosetPtr input, output;
  RingPtr poly_ring;                // one variable "a_<id>" per input element
  std::vector<RingElement> polys;   // indexed by output element
};

std::shared_ptr<const UniversalFormula> universal(const PosetMap& f, OpKind kind);

// the induced operations on Witt coordinates
WittVector pull(const PosetMap& f, const WittVector& v);      // v over target
WittVector transfer(const PosetMap& f, const WittVector& v);  // v over source
WittVector norm_op(const PosetMap& f, const WittVector& v);   // v over source
WittVector apply_op(const PosetMap& f, OpKind kind, const WittVector& v);

// classical operations on ordinary truncation sets (addition and
// multiplication work over any truncation poset)
WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_zero(PosetPtr p, RingPtr r);
WittVector witt_one(PosetPtr p, RingPtr r);
WittVector restrict_to(const WittVector& v, PosetPtr sub);
WittVector frobenius(const WittVector& v, int64_t n);      // W_S -> W_{S/n}
WittVector verschiebung(const WittVector& v, int64_t n);   // W_S -> W_{<n>S}
WittVector norm_n(const WittVector& v, int64_t n);         // W_S -> W_{<n>S}

// coordinatewise coefficient reduction W_S(Z) -> W_S(Z/m)
WittVector reduce_mod(const WittVector& v, const BigInt& m);

}  // namespace wittkit
