#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wittkit/maps.hpp"
#include "wittkit/poset.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

// One element (s, t, xi) of an additive or multiplicative pullback.
struct PullbackElement {
  Elem s;
  Elem t;
  int64_t xi;  // in [0, m), m = gcd(|f(s)|/|s|, |g(t)|/|t|)
  int64_t m;
};

struct SpanResult {
  PosetPtr pullback;
  PosetMap to_source;  // g' : P -> S, an R-map
  PosetMap to_other;   // f' : P -> T, a T-map (additive) or N-map (multiplicative)
  std::vector<PullbackElement> elements;  // indexed by pullback element
};

// commute an R-map past a T-map: f a T-map S->A, g an R-map T->A
SpanResult additive_pullback(const PosetMap& f, const PosetMap& g);

struct MultPullbackObstruction {
  std::string witness;  // the Definition-5.4 pair that fails
};

// commute an R-map past an N-map: f an N-map S->A, g an R-map T->A;
// the pullback need not exist (see the worked {1,3} -> {1,2,3,6} example)
std::variant<SpanResult, MultPullbackObstruction> mult_pullback(const PosetMap& f,
                                                                const PosetMap& g);

// One D-element of an exponential diagram: the canonical representative of a
// C_t-orbit of choice tuples (s_{a,xi}, zeta_{a,xi}).
struct ExpDElement {
  Elem t;
  // flattened over slots (a in ghat^{-1}(t), xi in [0, |t|/|a|)); per slot a
  // choice (s in f^{-1}(a), zeta in [0, |a|/|s|))
  std::vector<std::pair<Elem, int64_t>> choices;
  int64_t orbit_size = 1;
};

struct ExpEElement {
  Elem b;       // in A
  int64_t xi;   // in [0, |g(b)|/|b|)
  std::vector<std::pair<Elem, int64_t>> choices;  // over D'_{g(b)}
  int64_t orbit_size = 1;
};

struct ExponentialDiagram {
  PosetMap f;  // T-map S -> A
  PosetMap g;  // N-map A -> T
  PosetPtr E, D;
  PosetMap r;  // E -> S, R-map
  PosetMap n;  // E -> D, N-map
  PosetMap t;  // D -> T, T-map
  std::vector<ExpDElement> d_elements;  // indexed by D element
  std::vector<ExpEElement> e_elements;  // indexed by E element
};

ExponentialDiagram exponential_diagram(const PosetMap& f, const PosetMap& g);

// A bispan S <-r- A -n-> B -t-> T with r an R-map, n an N-map, t a T-map.
struct Bispan {
  PosetMap r, n, t;

  static Bispan make(PosetMap r, PosetMap n, PosetMap t);
  static Bispan identity(PosetPtr p);
  const PosetPtr& from() const { return r.target(); }
  const PosetPtr& to() const { return t.target(); }
};

// composition in the join subcategory (every poset must have joins)
Bispan compose_bispans(const Bispan& b1, const Bispan& b2);

struct MorphismLeg {
  OpKind kind;  // Pull = R*, Transfer = T_plus, Norm = N_times
  PosetMap map;
};

// left-to-right application of a word of tagged arrows
WittVector evaluate_word(const std::vector<MorphismLeg>& word, const WittVector& v);
WittVector evaluate_bispan(const Bispan& b, const WittVector& v);
std::vector<MorphismLeg> bispan_word(const Bispan& b);

struct LawReport {
  bool ok = true;
  std::string diagram;
  std::string counterexample;        // first failure, empty when ok
  std::vector<std::string> diffs;    // every differing coordinate
};

// the two composites of each commuting square, compared on ghost coordinates
// over the universal vector and on Witt coordinates over random integers
LawReport verify_rt_law(const PosetMap& f, const PosetMap& g, uint64_t seed = 1,
                        int witt_trials = 2);
LawReport verify_nr_law(const PosetMap& f, const PosetMap& g, uint64_t seed = 1,
                        int witt_trials = 2);
LawReport verify_tn_law(const PosetMap& f, const PosetMap& g, uint64_t seed = 1,
                        int witt_trials = 1);

}  // namespace wittkit
