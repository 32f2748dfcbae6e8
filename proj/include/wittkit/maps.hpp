#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wittkit/poset.hpp"

namespace wittkit {

/// A norm-compatible monotone map of truncation posets. Always an R-map once
/// constructed; the T and N conditions are decided eagerly by enumeration.
class PosetMap {
 public:
  static PosetMap make(PosetPtr src, PosetPtr tgt, std::vector<Elem> assign);
  static PosetMap identity(PosetPtr p);

  // fold: S ⊔ S -> S
  static PosetMap fold(PosetPtr s);
  // inclusion of ordinary truncation sets, matched by value
  static PosetMap inclusion(PosetPtr sub, PosetPtr super);
  // multiplication by n: S/n -> S (a T-map; transfer gives Verschiebung)
  static PosetMap mult_from_quotient(PosetPtr s, int64_t n);
  // multiplication by n: S -> <n>S (an N-map; norm gives the classical norm)
  static PosetMap mult_into(PosetPtr s, int64_t n);

  const PosetPtr& source() const { return src_; }
  const PosetPtr& target() const { return tgt_; }
  Elem operator()(Elem s) const { return assign_[s]; }
  const std::vector<Elem>& assign() const { return assign_; }

  bool is_t() const { return is_t_; }
  bool is_n() const { return is_n_; }

  std::vector<Elem> fiber(Elem t) const;          // f^{-1}(t)
  std::vector<Elem> minimal_fiber(Elem t) const;  // minimal {s : t | f(s)}

  // g after f; f: S->A, g: A->B gives S->B. For composable N-maps the
  // hatted-inverse composition law is asserted on every target element.
  static PosetMap compose(const PosetMap& f, const PosetMap& g);

  struct ComponentPart {
    int source_component;
    int target_component;
    int64_t n;  // norm of the image of the component root
  };
  // per-source-component description of a T-map (V/n -> V form) or an
  // N-map (U -> <n>U form)
  std::vector<ComponentPart> decompose() const;

  std::string canonical_key() const;
  std::string describe() const;

 private:
  PosetMap() = default;
  PosetPtr src_, tgt_;
  std::vector<Elem> assign_;
  bool is_t_ = false, is_n_ = false;
};

}  // namespace wittkit
