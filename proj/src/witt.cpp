#include "wittkit/witt.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "wittkit/bigint.hpp"
#include "wittkit/config.hpp"
#include "wittkit/error.hpp"

namespace wittkit {

WittVector WittVector::make(PosetPtr p, RingPtr r, std::vector<RingElement> c) {
  if (c.size() != p->size()) fail_argument("witt vector: coordinate count mismatch");
  for (auto& x : c)
    if (!x.ring()->same(*r)) fail_argument("witt vector: coordinate ring mismatch");
  return WittVector{std::move(p), std::move(r), std::move(c)};
}

bool WittVector::operator==(const WittVector& o) const {
  if (poset->canonical_key() != o.poset->canonical_key()) return false;
  return coords == o.coords;
}

GhostVector GhostVector::make(PosetPtr p, RingPtr r, std::vector<RingElement> c) {
  if (c.size() != p->size()) fail_argument("ghost vector: coordinate count mismatch");
  for (auto& x : c)
    if (!x.ring()->same(*r)) fail_argument("ghost vector: coordinate ring mismatch");
  return GhostVector{std::move(p), std::move(r), std::move(c)};
}

bool GhostVector::operator==(const GhostVector& o) const {
  if (poset->canonical_key() != o.poset->canonical_key()) return false;
  return coords == o.coords;
}

// ---------------------------------------------------------------------------

GhostVector ghost(const WittVector& v) {
  const TruncationPoset& P = *v.poset;
  std::vector<RingElement> out;
  out.reserve(P.size());
  for (Elem s = 0; s < static_cast<Elem>(P.size()); ++s) {
    RingElement x = RingElement::zero(v.ring);
    for (Elem t : P.divisors(s)) {
      uint64_t e = static_cast<uint64_t>(P.norm(s) / P.norm(t));
      x = x + v.coords[t].pow(e).times(P.norm(t));
    }
    out.push_back(std::move(x));
  }
  return GhostVector{v.poset, v.ring, std::move(out)};
}

namespace {

// ghost inversion by induction on the norm; the canonical element order puts
// divisors first. On failure the offending element index lands in *failed_at.
std::optional<WittVector> invert_ghost(const GhostVector& g, Elem* failed_at,
                                       std::string* why) {
  if (!g.ring->torsion_free()) fail_argument("unghost: ring is not torsion-free");
  const TruncationPoset& P = *g.poset;
  std::vector<RingElement> a(P.size(), RingElement::zero(g.ring));
  for (Elem s = 0; s < static_cast<Elem>(P.size()); ++s) {
    RingElement rest = RingElement::zero(g.ring);
    for (Elem t : P.divisors(s)) {
      if (t == s) continue;
      uint64_t e = static_cast<uint64_t>(P.norm(s) / P.norm(t));
      rest = rest + a[t].pow(e).times(P.norm(t));
    }
    RingElement num = g.coords[s] - rest;
    try {
      a[s] = num.div_exact(BigInt(P.norm(s)));
    } catch (const Error& err) {
      if (failed_at) *failed_at = s;
      if (why) *why = err.what();
      return std::nullopt;
    }
  }
  return WittVector{g.poset, g.ring, std::move(a)};
}

}  // namespace

std::optional<WittVector> try_unghost(const GhostVector& g) {
  return invert_ghost(g, nullptr, nullptr);
}

WittVector unghost(const GhostVector& g) {
  Elem failed = -1;
  std::string why;
  auto w = invert_ghost(g, &failed, &why);
  if (!w)
    fail_validation("not in the image of the ghost map at element " +
                    g.poset->label(failed) + ": " + why);
  return std::move(*w);
}

DworkReport dwork_check(const GhostVector& g) {
  if (!g.ring->has_frobenius_lifts())
    fail_argument("dwork_check: ring has no Frobenius lifts");
  const TruncationPoset& P = *g.poset;
  for (Elem s = 0; s < static_cast<Elem>(P.size()); ++s) {
    for (int64_t p : distinct_prime_factors(P.norm(s))) {
      Elem sp = P.divisor_of_norm(s, P.norm(s) / p);
      BigInt mod = bigint_pow(BigInt(p), static_cast<uint64_t>(vp(P.norm(s), p)));
      if (!g.coords[s].congruent(g.coords[sp].frobenius_lift(p), mod)) {
        DworkReport r;
        r.ok = false;
        r.prime = p;
        r.element = s;
        r.detail = "x_" + P.label(s) + " != phi_" + std::to_string(p) + "(x_" +
                   P.label(sp) + ") mod " + mod.get_str();
        return r;
      }
    }
  }
  return DworkReport{};
}

// ---------------------------------------------------------------------------
// Ghost-coordinate operations

GhostVector ghost_pull(const PosetMap& f, const GhostVector& g) {
  if (g.poset->canonical_key() != f.target()->canonical_key())
    fail_argument("ghost_pull: vector is not over the map target");
  std::vector<RingElement> out;
  out.reserve(f.source()->size());
  for (Elem s = 0; s < static_cast<Elem>(f.source()->size()); ++s)
    out.push_back(g.coords[f(s)]);
  return GhostVector{f.source(), g.ring, std::move(out)};
}

GhostVector ghost_transfer(const PosetMap& f, const GhostVector& g) {
  if (!f.is_t()) fail_validation("ghost_transfer: not a T-map");
  if (g.poset->canonical_key() != f.source()->canonical_key())
    fail_argument("ghost_transfer: vector is not over the map source");
  const TruncationPoset& T = *f.target();
  std::vector<RingElement> out;
  out.reserve(T.size());
  for (Elem t = 0; t < static_cast<Elem>(T.size()); ++t) {
    RingElement y = RingElement::zero(g.ring);  // empty fiber contributes 0
    for (Elem s : f.fiber(t)) {
      int64_t c = T.norm(t) / f.source()->norm(s);
      if (T.norm(t) % f.source()->norm(s) != 0)
        fail_internal("transfer coefficient not integral");
      y = y + g.coords[s].times(c);
    }
    out.push_back(std::move(y));
  }
  return GhostVector{f.target(), g.ring, std::move(out)};
}

GhostVector ghost_norm(const PosetMap& f, const GhostVector& g) {
  if (!f.is_n()) fail_validation("ghost_norm: not an N-map");
  if (g.poset->canonical_key() != f.source()->canonical_key())
    fail_argument("ghost_norm: vector is not over the map source");
  const TruncationPoset& T = *f.target();
  std::vector<RingElement> out;
  out.reserve(T.size());
  for (Elem t = 0; t < static_cast<Elem>(T.size()); ++t) {
    RingElement y = RingElement::one(g.ring);  // empty minimal fiber contributes 1
    for (Elem s : f.minimal_fiber(t)) {
      if (T.norm(t) % f.source()->norm(s) != 0)
        fail_internal("norm exponent not integral");
      uint64_t e = static_cast<uint64_t>(T.norm(t) / f.source()->norm(s));
      y = y * g.coords[s].pow(e);
    }
    out.push_back(std::move(y));
  }
  return GhostVector{f.target(), g.ring, std::move(out)};
}

// ---------------------------------------------------------------------------
// Universal formulas

const char* op_kind_name(OpKind k) {
  switch (k) {
    case OpKind::Pull: return "pull";
    case OpKind::Transfer: return "transfer";
    case OpKind::Norm: return "norm";
  }
  return "?";
}

namespace {

struct FormulaCache {
  std::shared_mutex mu;
  std::unordered_map<std::string, std::shared_ptr<const UniversalFormula>> entries;
};

FormulaCache& formula_cache() {
  static FormulaCache c;
  return c;
}

}  // namespace

std::shared_ptr<const UniversalFormula> universal(const PosetMap& f, OpKind kind) {
  switch (kind) {
    case OpKind::Pull: break;
    case OpKind::Transfer:
      if (!f.is_t()) fail_validation("universal: transfer needs a T-map");
      break;
    case OpKind::Norm:
      if (!f.is_n()) fail_validation("universal: norm needs an N-map");
      break;
  }
  std::string key = f.canonical_key() + "#" + op_kind_name(kind);
  {
    std::shared_lock lock(formula_cache().mu);
    auto it = formula_cache().entries.find(key);
    if (it != formula_cache().entries.end()) return it->second;
  }

  PosetPtr input = (kind == OpKind::Pull) ? f.target() : f.source();
  PosetPtr output = (kind == OpKind::Pull) ? f.source() : f.target();
  std::vector<std::string> vars;
  vars.reserve(input->size());
  for (Elem e = 0; e < static_cast<Elem>(input->size()); ++e)
    vars.push_back("a_" + std::to_string(input->id(e)));
  RingPtr R = RingHandle::poly(std::move(vars));

  std::vector<RingElement> univ;
  univ.reserve(input->size());
  for (uint32_t i = 0; i < input->size(); ++i)
    univ.push_back(RingElement::variable(R, i));
  WittVector u{input, R, std::move(univ)};

  GhostVector gu = ghost(u);
  GhostVector image = (kind == OpKind::Pull)       ? ghost_pull(f, gu)
                      : (kind == OpKind::Transfer) ? ghost_transfer(f, gu)
                                                   : ghost_norm(f, gu);
  std::optional<WittVector> w = try_unghost(image);
  if (!w)
    fail_internal("universal: ghost image of the universal vector failed to invert");
  if (!(ghost(*w) == image))
    fail_internal("universal: polynomials do not reproduce the ghost formula");

  auto formula = std::make_shared<UniversalFormula>(
      UniversalFormula{f, kind, input, output, R, std::move(w->coords)});

  std::unique_lock lock(formula_cache().mu);
  auto [it, inserted] = formula_cache().entries.emplace(key, formula);
  return it->second;
}

// ---------------------------------------------------------------------------
// Witt-coordinate operations

namespace {

GhostVector ghost_level_op(const PosetMap& f, OpKind kind, const GhostVector& g) {
  switch (kind) {
    case OpKind::Pull: return ghost_pull(f, g);
    case OpKind::Transfer: return ghost_transfer(f, g);
    case OpKind::Norm: return ghost_norm(f, g);
  }
  fail_internal("bad op kind");
}

WittVector evaluate_universal(const UniversalFormula& formula, const WittVector& v) {
  std::map<uint32_t, RingElement> bindings;
  for (uint32_t i = 0; i < v.coords.size(); ++i) bindings.emplace(i, v.coords[i]);
  std::vector<RingElement> out;
  out.reserve(formula.polys.size());
  for (const auto& poly : formula.polys)
    out.push_back(poly.evaluate(v.ring, bindings));
  return WittVector{formula.output, v.ring, std::move(out)};
}

// universal polynomials over large pullback posets explode combinatorially;
// keep the symbolic route for the sizes where it is the right tool
bool universal_affordable(const PosetMap& f, OpKind kind) {
  const TruncationPoset& in = (kind == OpKind::Pull) ? *f.target() : *f.source();
  const TruncationPoset& out = (kind == OpKind::Pull) ? *f.source() : *f.target();
  if (in.size() > 12) return false;
  for (Elem e = 0; e < static_cast<Elem>(out.size()); ++e)
    if (out.norm(e) > 16) return false;
  return true;
}

}  // namespace

WittVector apply_op(const PosetMap& f, OpKind kind, const WittVector& v) {
  PosetPtr expected = (kind == OpKind::Pull) ? f.target() : f.source();
  if (v.poset->canonical_key() != expected->canonical_key())
    fail_argument(std::string(op_kind_name(kind)) + ": vector poset mismatch");

  if (!v.ring->torsion_free()) {
    // the unique functorial extension to rings with torsion goes through the
    // universal Witt-coordinate polynomials
    return evaluate_universal(*universal(f, kind), v);
  }

  GhostVector image = ghost_level_op(f, kind, ghost(v));
  std::optional<WittVector> result = try_unghost(image);
  if (!result)
    fail_internal("ghost image of an induced operation failed to invert");

  if (limits().cross_check_torsion_free && universal_affordable(f, kind)) {
    WittVector via_universal = evaluate_universal(*universal(f, kind), v);
    if (!(via_universal == *result))
      fail_internal("universal-polynomial route disagrees with the ghost route");
  }
  return *result;
}

WittVector pull(const PosetMap& f, const WittVector& v) {
  return apply_op(f, OpKind::Pull, v);
}

WittVector transfer(const PosetMap& f, const WittVector& v) {
  if (!f.is_t()) fail_validation("transfer: not a T-map");
  return apply_op(f, OpKind::Transfer, v);
}

WittVector norm_op(const PosetMap& f, const WittVector& v) {
  if (!f.is_n()) fail_validation("norm: not an N-map");
  return apply_op(f, OpKind::Norm, v);
}

// ---------------------------------------------------------------------------
// Classical wrappers

namespace {

// embed a pair of vectors over S into one over S ⊔ S along the fold source
WittVector pair_over_fold(const PosetMap& fold_map, const WittVector& a,
                          const WittVector& b) {
  auto co = TruncationPoset::coproduct(*a.poset, *a.poset);
  // fold_map.source() was built the same deterministic way; reuse its poset
  std::vector<RingElement> coords(fold_map.source()->size(),
                                  RingElement::zero(a.ring));
  for (size_t i = 0; i < a.poset->size(); ++i) {
    coords[co.left[i]] = a.coords[i];
    coords[co.right[i]] = b.coords[i];
  }
  return WittVector{fold_map.source(), a.ring, std::move(coords)};
}

}  // namespace

WittVector witt_add(const WittVector& a, const WittVector& b) {
  if (a.poset->canonical_key() != b.poset->canonical_key())
    fail_argument("witt_add: posets differ");
  if (!a.ring->same(*b.ring)) fail_argument("witt_add: rings differ");
  PosetMap f = PosetMap::fold(a.poset);
  return transfer(f, pair_over_fold(f, a, b));
}

WittVector witt_mul(const WittVector& a, const WittVector& b) {
  if (a.poset->canonical_key() != b.poset->canonical_key())
    fail_argument("witt_mul: posets differ");
  if (!a.ring->same(*b.ring)) fail_argument("witt_mul: rings differ");
  PosetMap f = PosetMap::fold(a.poset);
  return norm_op(f, pair_over_fold(f, a, b));
}

WittVector witt_zero(PosetPtr p, RingPtr r) {
  std::vector<RingElement> c(p->size(), RingElement::zero(r));
  return WittVector{std::move(p), std::move(r), std::move(c)};
}

WittVector witt_one(PosetPtr p, RingPtr r) {
  // ghost coordinates of 1 are all 1: a_root = 1, everything else 0
  WittVector v = witt_zero(p, r);
  for (size_t c = 0; c < v.poset->component_count(); ++c)
    v.coords[v.poset->component_root(static_cast<int>(c))] = RingElement::one(v.ring);
  return v;
}

WittVector restrict_to(const WittVector& v, PosetPtr sub) {
  return pull(PosetMap::inclusion(std::move(sub), v.poset), v);
}

WittVector frobenius(const WittVector& v, int64_t n) {
  return pull(PosetMap::mult_from_quotient(v.poset, n), v);
}

WittVector verschiebung(const WittVector& v, int64_t n) {
  return transfer(PosetMap::mult_into(v.poset, n), v);
}

WittVector norm_n(const WittVector& v, int64_t n) {
  return norm_op(PosetMap::mult_into(v.poset, n), v);
}

WittVector reduce_mod(const WittVector& v, const BigInt& m) {
  if (v.ring->kind() != RingKind::Integers)
    fail_argument("reduce_mod: integer vectors only");
  RingPtr R = RingHandle::modular(m);
  std::vector<RingElement> out;
  out.reserve(v.coords.size());
  for (const auto& x : v.coords)
    out.push_back(RingElement::integer(R, x.int_value()));
  return WittVector{v.poset, R, std::move(out)};
}

}  // namespace wittkit
