#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittkit/bigint.hpp"

namespace wittkit {

enum class RingKind { Integers, Modular, Poly };

class RingHandle;
using RingPtr = std::shared_ptr<const RingHandle>;

/// Coefficient rings for Witt computation: Z, Z/m, and multivariate Z[vars].
/// Handles are immutable; elements carry a handle and compare/combine only
/// within the same handle.
class RingHandle {
 public:
  static RingPtr integers();
  static RingPtr modular(BigInt m);                    // m >= 2
  static RingPtr poly(std::vector<std::string> vars);  // distinct names

  RingKind kind() const { return kind_; }
  bool torsion_free() const { return kind_ != RingKind::Modular; }
  bool has_frobenius_lifts() const { return kind_ != RingKind::Modular; }
  const BigInt& modulus() const { return modulus_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::optional<uint32_t> var_index(const std::string& name) const;
  bool same(const RingHandle& o) const;
  std::string describe() const;

 private:
  RingHandle() = default;
  RingKind kind_ = RingKind::Integers;
  BigInt modulus_;
  std::vector<std::string> vars_;
  std::map<std::string, uint32_t> var_lookup_;
};

// Sparse exponent vector: (variable index, exponent) pairs, sorted by
// variable, exponents > 0. Empty monomial is the constant 1.
using Monomial = std::vector<std::pair<uint32_t, uint32_t>>;

int64_t total_degree(const Monomial& m);
// graded lex, true iff a sorts strictly before b (leading terms first)
bool monomial_before(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  BigInt coeff;
};

class RingElement {
 public:
  RingElement();  // zero of Z

  static RingElement integer(RingPtr ring, BigInt v);  // canonical embedding
  static RingElement variable(RingPtr ring, uint32_t var);
  static RingElement zero(RingPtr ring);
  static RingElement one(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const;
  bool is_one() const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement operator-() const;
  RingElement pow(uint64_t e) const;
  RingElement times(const BigInt& n) const;  // integer scalar multiple
  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  // y with n*y = *this; torsion-free handles only
  RingElement div_exact(const BigInt& n) const;

  // phi_p with phi_p(x) == x^p mod p: identity on Z, v -> v^p on Z[vars]
  RingElement frobenius_lift(int64_t p) const;

  // Evaluate a polynomial into ring K, mapping integer coefficients
  // canonically. All variables occurring in *this must be bound.
  RingElement evaluate(const RingPtr& K,
                       const std::map<uint32_t, RingElement>& bindings) const;

  // coefficientwise congruence mod m (Z and Poly handles)
  bool congruent(const RingElement& o, const BigInt& m) const;

  const BigInt& int_value() const;  // Integers/Modular only
  const std::vector<Term>& terms() const { return terms_; }
  int64_t degree() const;  // total degree; 0 for scalars, -1 for zero

  std::string to_text() const;
  static RingElement parse(const RingPtr& ring, const std::string& text);

 private:
  RingPtr ring_;
  BigInt z_;                 // Integers / Modular payload
  std::vector<Term> terms_;  // Poly payload, sorted graded-lex descending
  void canonicalize();
};

}  // namespace wittkit
