#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wittkit {

using Elem = int32_t;  // index into a poset's canonical element order

struct ElementInfo {
  int64_t id = 0;
  int64_t norm = 1;
  std::string label;
};

// Untrusted poset data: explicit divisibility pairs by id, reflexive pairs
// omitted, transitive closure taken on load.
struct RawPoset {
  std::vector<ElementInfo> elements;
  std::vector<std::pair<int64_t, int64_t>> divides;
};

// axiom 0 = "divides is not a partial order", 1..4 = the four norm axioms
struct AxiomWitness {
  int axiom = 0;
  std::string message;
};

class TruncationPoset;
using PosetPtr = std::shared_ptr<const TruncationPoset>;
struct PosetCoproduct;
struct ScaleQuotient;

/// A finite poset with divisibility relation and multiplicative norm,
/// validated at construction. Immutable afterwards. Elements are addressed
/// by index in a canonical order (norm, label, id).
class TruncationPoset {
 public:
  static std::variant<TruncationPoset, AxiomWitness> check(RawPoset raw);
  static TruncationPoset validate(RawPoset raw);  // throws on violation
  static PosetPtr validate_shared(RawPoset raw);

  // constructors for the stock examples
  static TruncationPoset divisor_poset(int64_t n);
  static TruncationPoset from_set(std::vector<int64_t> values);
  static TruncationPoset empty();
  static PosetCoproduct coproduct(const TruncationPoset& p, const TruncationPoset& q);
  static TruncationPoset gcd_poset(std::vector<std::vector<int64_t>> tuples,
                                   std::optional<std::vector<int64_t>> weights);
  static TruncationPoset word_poset(std::vector<std::string> words, int letters,
                                    int block);

  size_t size() const { return elems_.size(); }
  bool is_empty() const { return elems_.empty(); }
  const ElementInfo& info(Elem e) const { return elems_[e]; }
  int64_t norm(Elem e) const { return elems_[e].norm; }
  int64_t id(Elem e) const { return elems_[e].id; }
  const std::string& label(Elem e) const { return elems_[e].label; }
  std::optional<Elem> index_of_id(int64_t id) const;

  bool divides(Elem a, Elem b) const;
  const std::vector<Elem>& divisors(Elem e) const { return down_[e]; }   // incl. e
  const std::vector<Elem>& multiples(Elem e) const { return up_[e]; }    // incl. e
  const std::vector<Elem>& covers(Elem e) const { return covers_[e]; }   // Hasse, upward

  // axiom 3: the unique divisor of e with the given norm (norm | norm(e))
  Elem divisor_of_norm(Elem e, int64_t norm) const;
  // axiom 4: the at-most-one multiple of e with the given norm
  std::optional<Elem> multiple_of_norm(Elem e, int64_t norm) const;

  int component_of(Elem e) const { return comp_of_[e]; }
  Elem root_of(Elem e) const { return comp_root_[comp_of_[e]]; }
  size_t component_count() const { return comps_.size(); }
  const std::vector<std::vector<Elem>>& components() const { return comps_; }
  Elem component_root(int c) const { return comp_root_[c]; }

  bool has_joins() const;
  // norm is injective and the order coincides with norm divisibility:
  // the poset *is* an ordinary truncation set (elements = norm values)
  bool is_ordinary() const;
  std::vector<int64_t> values() const;  // norm image, ascending (ordinary use)

  ScaleQuotient scale_quotient(int64_t n) const;  // ordinary posets only

  bool isomorphic_as_labeled(const TruncationPoset& o) const;  // same norms/divides
  std::string canonical_key() const;  // deterministic serialization (memo keys)
  std::string show_hasse() const;

 private:
  TruncationPoset() = default;
  static TruncationPoset build_ordinary(const std::vector<int64_t>& values);
  std::vector<ElementInfo> elems_;
  std::vector<std::vector<Elem>> up_, down_, covers_;
  std::vector<int> comp_of_;
  std::vector<std::vector<Elem>> comps_;
  std::vector<Elem> comp_root_;
};

struct PosetCoproduct {
  TruncationPoset poset;
  std::vector<Elem> left;  // old index -> new index
  std::vector<Elem> right;
};

struct ScaleQuotient {
  TruncationPoset quotient;  // S/n
  TruncationPoset scaled;    // <n>S
};

}  // namespace wittkit
