#include "wittkit/maps.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "wittkit/bigint.hpp"
#include "wittkit/error.hpp"

namespace wittkit {

namespace {

bool fibration_condition(const TruncationPoset& S, const TruncationPoset& T,
                         const std::vector<Elem>& f) {
  // every divisibility out of f(s) lifts to one out of s
  for (Elem s = 0; s < static_cast<Elem>(S.size()); ++s)
    for (Elem t2 : T.multiples(f[s])) {
      bool hit = false;
      for (Elem s2 : S.multiples(s))
        if (f[s2] == t2) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
  return true;
}

bool strong_fibration_condition(const TruncationPoset& S, const TruncationPoset& T,
                                const std::vector<Elem>& f) {
  // every element of the component of f(s) divides the image of some element
  // of the component of s
  for (Elem s = 0; s < static_cast<Elem>(S.size()); ++s) {
    int tc = T.component_of(f[s]);
    for (Elem t2 : T.components()[tc]) {
      bool hit = false;
      for (Elem s2 : S.components()[S.component_of(s)])
        if (T.divides(t2, f[s2])) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
  }
  return true;
}

}  // namespace

PosetMap PosetMap::make(PosetPtr src, PosetPtr tgt, std::vector<Elem> assign) {
  if (!src || !tgt) fail_argument("make: null poset");
  if (assign.size() != src->size()) fail_argument("make: assignment not total");
  for (Elem t : assign)
    if (t < 0 || static_cast<size_t>(t) >= tgt->size())
      fail_argument("make: assignment out of range");

  const TruncationPoset& S = *src;
  const TruncationPoset& T = *tgt;
  for (Elem a = 0; a < static_cast<Elem>(S.size()); ++a)
    for (Elem b : S.multiples(a)) {
      if (a == b) continue;
      if (!T.divides(assign[a], assign[b]))
        fail_validation("not monotone: " + S.label(a) + " | " + S.label(b) +
                        " but f(" + S.label(a) + ")=" + T.label(assign[a]) +
                        " does not divide f(" + S.label(b) + ")=" + T.label(assign[b]));
      int64_t lhs = T.norm(assign[b]) / T.norm(assign[a]);
      int64_t rhs = S.norm(b) / S.norm(a);
      if (T.norm(assign[b]) % T.norm(assign[a]) != 0 || lhs != rhs)
        fail_validation("norm ratio mismatch on " + S.label(a) + " | " + S.label(b) +
                        ": |f| ratio " + std::to_string(lhs) + " vs " +
                        std::to_string(rhs));
    }

  PosetMap m;
  m.src_ = std::move(src);
  m.tgt_ = std::move(tgt);
  m.assign_ = std::move(assign);
  m.is_t_ = fibration_condition(S, T, m.assign_);
  m.is_n_ = strong_fibration_condition(S, T, m.assign_);
  if (m.is_n_ && !m.is_t_)
    fail_internal("N-map failed the T-map conditions: " + m.describe());
  return m;
}

PosetMap PosetMap::identity(PosetPtr p) {
  std::vector<Elem> a(p->size());
  for (size_t i = 0; i < p->size(); ++i) a[i] = static_cast<Elem>(i);
  return make(p, p, std::move(a));
}

PosetMap PosetMap::fold(PosetPtr s) {
  auto co = TruncationPoset::coproduct(*s, *s);
  auto src = std::make_shared<const TruncationPoset>(std::move(co.poset));
  std::vector<Elem> a(src->size());
  for (size_t i = 0; i < s->size(); ++i) {
    a[co.left[i]] = static_cast<Elem>(i);
    a[co.right[i]] = static_cast<Elem>(i);
  }
  return make(std::move(src), std::move(s), std::move(a));
}

PosetMap PosetMap::inclusion(PosetPtr sub, PosetPtr super) {
  if (!sub->is_ordinary() || !super->is_ordinary())
    fail_argument("inclusion: ordinary truncation sets required");
  std::vector<Elem> a(sub->size());
  for (Elem i = 0; i < static_cast<Elem>(sub->size()); ++i) {
    bool found = false;
    for (Elem j = 0; j < static_cast<Elem>(super->size()); ++j)
      if (super->norm(j) == sub->norm(i)) {
        a[i] = j;
        found = true;
        break;
      }
    if (!found)
      fail_validation("inclusion: value " + std::to_string(sub->norm(i)) +
                      " missing from the superset");
  }
  return make(std::move(sub), std::move(super), std::move(a));
}

static Elem ordinary_index_of_value(const TruncationPoset& p, int64_t v) {
  for (Elem i = 0; i < static_cast<Elem>(p.size()); ++i)
    if (p.norm(i) == v) return i;
  fail_internal("ordinary poset is missing value " + std::to_string(v));
}

PosetMap PosetMap::mult_from_quotient(PosetPtr s, int64_t n) {
  auto sq = s->scale_quotient(n);
  auto quot = std::make_shared<const TruncationPoset>(std::move(sq.quotient));
  std::vector<Elem> a(quot->size());
  for (Elem i = 0; i < static_cast<Elem>(quot->size()); ++i)
    a[i] = ordinary_index_of_value(*s, quot->norm(i) * n);
  return make(std::move(quot), std::move(s), std::move(a));
}

PosetMap PosetMap::mult_into(PosetPtr s, int64_t n) {
  auto sq = s->scale_quotient(n);
  auto scaled = std::make_shared<const TruncationPoset>(std::move(sq.scaled));
  std::vector<Elem> a(s->size());
  for (Elem i = 0; i < static_cast<Elem>(s->size()); ++i)
    a[i] = ordinary_index_of_value(*scaled, s->norm(i) * n);
  return make(std::move(s), std::move(scaled), std::move(a));
}

std::vector<Elem> PosetMap::fiber(Elem t) const {
  std::vector<Elem> out;
  for (Elem s = 0; s < static_cast<Elem>(src_->size()); ++s)
    if (assign_[s] == t) out.push_back(s);
  return out;
}

std::vector<Elem> PosetMap::minimal_fiber(Elem t) const {
  std::vector<Elem> pool;
  for (Elem s = 0; s < static_cast<Elem>(src_->size()); ++s)
    if (tgt_->divides(t, assign_[s])) pool.push_back(s);
  std::vector<Elem> out;
  for (Elem s : pool) {
    bool minimal = true;
    for (Elem s2 : pool)
      if (s2 != s && src_->divides(s2, s)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(s);
  }
  return out;
}

PosetMap PosetMap::compose(const PosetMap& f, const PosetMap& g) {
  if (f.tgt_->canonical_key() != g.src_->canonical_key())
    fail_validation("compose: target of the first map differs from source of the second");
  std::vector<Elem> a(f.src_->size());
  for (size_t i = 0; i < a.size(); ++i) a[i] = g.assign_[f.assign_[i]];
  PosetMap h = make(f.src_, g.tgt_, std::move(a));

  if (f.is_n() && g.is_n()) {
    // hatted inverses compose: (g∘f)^ = f^ ∘ g^ pointwise on target elements
    const TruncationPoset& U = *g.tgt_;
    for (Elem u = 0; u < static_cast<Elem>(U.size()); ++u) {
      std::set<Elem> via;
      for (Elem t : g.minimal_fiber(u))
        for (Elem s : f.minimal_fiber(t)) via.insert(s);
      auto direct = h.minimal_fiber(u);
      std::set<Elem> direct_set(direct.begin(), direct.end());
      if (via != direct_set)
        fail_internal("hatted-inverse composition law failed at " + U.label(u));
    }
  }
  return h;
}

std::vector<PosetMap::ComponentPart> PosetMap::decompose() const {
  if (!is_t_ && !is_n_)
    fail_validation("decompose: map is neither a T-map nor an N-map");
  std::vector<ComponentPart> parts;
  for (size_t c = 0; c < src_->component_count(); ++c) {
    Elem root = src_->component_root(static_cast<int>(c));
    Elem img = assign_[root];
    parts.push_back({static_cast<int>(c), tgt_->component_of(img), tgt_->norm(img)});
  }
  return parts;
}

std::string PosetMap::canonical_key() const {
  std::ostringstream os;
  os << src_->canonical_key() << "->" << tgt_->canonical_key() << "[";
  for (Elem t : assign_) os << t << ",";
  os << "]";
  return os.str();
}

std::string PosetMap::describe() const {
  std::ostringstream os;
  os << "map on " << src_->size() << " elements (R";
  if (is_t_) os << ",T";
  if (is_n_) os << ",N";
  os << ")";
  return os.str();
}

}  // namespace wittkit
