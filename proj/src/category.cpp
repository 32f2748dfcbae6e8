#include "wittkit/category.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "wittkit/bigint.hpp"
#include "wittkit/config.hpp"
#include "wittkit/error.hpp"
#include "wittkit/random.hpp"

namespace wittkit {

namespace {

std::string pe_label(const TruncationPoset& S, const TruncationPoset& T,
                     const PullbackElement& e) {
  return "(" + S.label(e.s) + "," + T.label(e.t) + ";" + std::to_string(e.xi) + ")";
}

SpanResult build_span(const PosetMap& f, const PosetMap& g,
                      std::vector<PullbackElement> elements, bool multiplicative) {
  const TruncationPoset& S = *f.source();
  const TruncationPoset& T = *g.source();
  RawPoset raw;
  for (size_t i = 0; i < elements.size(); ++i)
    raw.elements.push_back({static_cast<int64_t>(i),
                            gcd64(S.norm(elements[i].s), T.norm(elements[i].t)),
                            pe_label(S, T, elements[i])});
  for (size_t i = 0; i < elements.size(); ++i)
    for (size_t j = 0; j < elements.size(); ++j) {
      if (i == j) continue;
      const auto& a = elements[i];
      const auto& b = elements[j];
      if (S.divides(a.s, b.s) && T.divides(a.t, b.t) && a.xi == b.xi)
        raw.divides.emplace_back(static_cast<int64_t>(i), static_cast<int64_t>(j));
    }
  PosetPtr P;
  try {
    P = TruncationPoset::validate_shared(std::move(raw));
  } catch (const Error& e) {
    fail_internal(std::string("pullback is not a truncation poset: ") + e.what());
  }
  // construction index -> canonical index
  std::vector<Elem> reindex(elements.size());
  for (size_t i = 0; i < elements.size(); ++i)
    reindex[i] = *P->index_of_id(static_cast<int64_t>(i));
  std::vector<PullbackElement> sorted(elements.size());
  std::vector<Elem> to_s(elements.size()), to_t(elements.size());
  for (size_t i = 0; i < elements.size(); ++i) {
    sorted[reindex[i]] = elements[i];
    to_s[reindex[i]] = elements[i].s;
    to_t[reindex[i]] = elements[i].t;
  }
  PosetMap gp = PosetMap::make(P, f.source(), std::move(to_s));
  PosetMap fp = PosetMap::make(P, g.source(), std::move(to_t));
  if (multiplicative && !fp.is_n())
    fail_internal("projection of a multiplicative pullback is not an N-map");
  if (!multiplicative && !fp.is_t())
    fail_internal("projection of an additive pullback is not a T-map");
  return SpanResult{P, std::move(gp), std::move(fp), std::move(sorted)};
}

}  // namespace

SpanResult additive_pullback(const PosetMap& f, const PosetMap& g) {
  if (!f.is_t()) fail_validation("additive_pullback: f must be a T-map");
  if (f.target()->canonical_key() != g.target()->canonical_key())
    fail_validation("additive_pullback: maps must share a target");
  const TruncationPoset& S = *f.source();
  const TruncationPoset& A = *f.target();
  const TruncationPoset& T = *g.source();

  std::vector<PullbackElement> elements;
  for (Elem s = 0; s < static_cast<Elem>(S.size()); ++s)
    for (Elem t = 0; t < static_cast<Elem>(T.size()); ++t) {
      if (f(s) != g(t)) continue;
      int64_t m = gcd64(A.norm(f(s)) / S.norm(s), A.norm(g(t)) / T.norm(t));
      for (int64_t xi = 0; xi < m; ++xi) elements.push_back({s, t, xi, m});
    }
  return build_span(f, g, std::move(elements), /*multiplicative=*/false);
}

std::variant<SpanResult, MultPullbackObstruction> mult_pullback(const PosetMap& f,
                                                                const PosetMap& g) {
  if (!f.is_n()) fail_validation("mult_pullback: f must be an N-map");
  if (f.target()->canonical_key() != g.target()->canonical_key())
    fail_validation("mult_pullback: maps must share a target");
  const TruncationPoset& S = *f.source();
  const TruncationPoset& A = *f.target();
  const TruncationPoset& T = *g.source();

  // pairs (s, t): g(t) | f(s), s minimal for its t, t maximal for its s
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem t = 0; t < static_cast<Elem>(T.size()); ++t) {
    std::vector<Elem> smin = f.minimal_fiber(g(t));
    for (Elem s : smin) {
      bool t_maximal = true;
      for (Elem t2 : T.multiples(t))
        if (t2 != t && A.divides(g(t2), f(s))) {
          t_maximal = false;
          break;
        }
      if (t_maximal) pairs.emplace_back(s, t);
    }
  }

  // existence (the cross-component proportionality condition)
  for (auto& [s1, t1] : pairs)
    for (auto& [s2, t2] : pairs) {
      if (S.component_of(s1) != S.component_of(s2)) continue;
      if (T.component_of(t1) != T.component_of(t2)) continue;
      if (S.norm(s1) * T.norm(t2) != S.norm(s2) * T.norm(t1)) {
        std::ostringstream os;
        os << "|" << S.label(s1) << "||" << T.label(t2) << "| = "
           << S.norm(s1) * T.norm(t2) << " but |" << S.label(s2) << "||"
           << T.label(t1) << "| = " << S.norm(s2) * T.norm(t1);
        return MultPullbackObstruction{os.str()};
      }
    }

  std::vector<PullbackElement> elements;
  for (auto& [s, t] : pairs) {
    int64_t m = gcd64(A.norm(f(s)) / S.norm(s), A.norm(g(t)) / T.norm(t));
    for (int64_t xi = 0; xi < m; ++xi) elements.push_back({s, t, xi, m});
  }
  return build_span(f, g, std::move(elements), /*multiplicative=*/true);
}

// ---------------------------------------------------------------------------
// Exponential diagrams

namespace {

using Tuple = std::vector<std::pair<Elem, int64_t>>;  // (s, zeta) per slot

// layout of the choice tuples over a fixed target element t
struct SlotPlan {
  std::vector<Elem> ahat;          // ghat^{-1}(t), ascending
  std::vector<int64_t> q;          // |t|/|a| per a
  std::vector<size_t> base;        // slot offset per a
  size_t total_slots = 0;
  std::vector<std::vector<std::pair<Elem, int64_t>>> choices;  // per a: (s, zeta)
  int64_t tuple_count = 1;         // product of choice counts over all slots
};

SlotPlan make_plan(const PosetMap& f, const PosetMap& g, Elem t) {
  const TruncationPoset& A = *g.source();
  const TruncationPoset& T = *g.target();
  SlotPlan plan;
  plan.ahat = g.minimal_fiber(t);
  for (Elem a : plan.ahat) {
    if (T.norm(t) % A.norm(a) != 0)
      fail_internal("minimal fiber norm does not divide the target norm");
    plan.base.push_back(plan.total_slots);
    int64_t qa = T.norm(t) / A.norm(a);
    plan.q.push_back(qa);
    plan.total_slots += static_cast<size_t>(qa);
    std::vector<std::pair<Elem, int64_t>> ch;
    for (Elem s : f.fiber(a)) {
      int64_t zmax = A.norm(a) / f.source()->norm(s);
      for (int64_t z = 0; z < zmax; ++z) ch.emplace_back(s, z);
    }
    plan.choices.push_back(std::move(ch));
  }
  for (size_t i = 0; i < plan.ahat.size(); ++i)
    for (int64_t j = 0; j < plan.q[i]; ++j) {
      if (plan.choices[i].empty()) {
        plan.tuple_count = 0;
        return plan;
      }
      plan.tuple_count *= static_cast<int64_t>(plan.choices[i].size());
      if (plan.tuple_count > limits().max_tuples)
        fail_validation("exponential diagram size cap exceeded");
    }
  return plan;
}

std::vector<Tuple> enumerate_tuples(const SlotPlan& plan) {
  std::vector<Tuple> out;
  if (plan.tuple_count == 0) return out;
  Tuple current(plan.total_slots);
  std::vector<size_t> odo(plan.total_slots, 0);
  // slot i belongs to block a(i)
  std::vector<size_t> block_of(plan.total_slots);
  for (size_t i = 0; i < plan.ahat.size(); ++i)
    for (int64_t j = 0; j < plan.q[i]; ++j) block_of[plan.base[i] + j] = i;
  while (true) {
    for (size_t i = 0; i < plan.total_slots; ++i)
      current[i] = plan.choices[block_of[i]][odo[i]];
    out.push_back(current);
    size_t k = 0;
    while (k < plan.total_slots) {
      if (++odo[k] < plan.choices[block_of[k]].size()) break;
      odo[k] = 0;
      ++k;
    }
    if (k == plan.total_slots) break;
  }
  return out;
}

// the C_t generator: rotate each a-block forward by one, twisting the wrapped
// entry's zeta by one
Tuple sigma(const PosetMap& f, const PosetMap& g, const SlotPlan& plan,
            const Tuple& x) {
  const TruncationPoset& A = *g.source();
  Tuple out(x.size());
  for (size_t i = 0; i < plan.ahat.size(); ++i) {
    size_t base = plan.base[i];
    int64_t qa = plan.q[i];
    for (int64_t j = 1; j < qa; ++j) out[base + j] = x[base + j - 1];
    auto last = x[base + qa - 1];
    int64_t zmax = A.norm(plan.ahat[i]) / f.source()->norm(last.first);
    last.second = (last.second + 1) % zmax;
    out[base] = last;
  }
  return out;
}

std::vector<Tuple> orbit_of(const PosetMap& f, const PosetMap& g,
                            const SlotPlan& plan, const Tuple& x) {
  std::vector<Tuple> orbit{x};
  Tuple cur = sigma(f, g, plan, x);
  while (cur != x) {
    orbit.push_back(cur);
    cur = sigma(f, g, plan, cur);
  }
  return orbit;
}

// divisibility of representatives over t | t', via the unique-multiple
// correspondence between the minimal fibers
struct FiberCorrespondence {
  std::vector<size_t> to_prime;  // position in ahat(t') per position in ahat(t)
};

FiberCorrespondence correspond(const PosetMap& g, const SlotPlan& pt,
                               const SlotPlan& ptp) {
  const TruncationPoset& A = *g.source();
  FiberCorrespondence c;
  std::vector<bool> used(ptp.ahat.size(), false);
  for (Elem a : pt.ahat) {
    int found = -1;
    for (size_t j = 0; j < ptp.ahat.size(); ++j)
      if (A.divides(a, ptp.ahat[j])) {
        if (found >= 0) fail_internal("minimal-fiber multiple is not unique");
        found = static_cast<int>(j);
      }
    if (found < 0) fail_internal("minimal-fiber multiple is missing");
    if (used[found]) fail_internal("minimal-fiber correspondence is not injective");
    used[found] = true;
    c.to_prime.push_back(static_cast<size_t>(found));
  }
  for (bool u : used)
    if (!u) fail_internal("minimal-fiber correspondence is not surjective");
  return c;
}

// Representative-level divisibility over t | t'. The slot index and the
// cyclic bookkeeping element form a mixed-radix counter mu = xi + q*zeta in
// Z_{q*z} (z = |a|/|s|); the canonical identification reduces the finer
// counter mod the coarser one, which unwinds to a wrap-count correction.
bool rep_divides(const TruncationPoset& S, const TruncationPoset& A,
                 const SlotPlan& pt, const Tuple& x, const SlotPlan& ptp,
                 const Tuple& xp, const FiberCorrespondence& c) {
  for (size_t i = 0; i < pt.ahat.size(); ++i) {
    size_t ip = c.to_prime[i];
    int64_t q = pt.q[i];
    int64_t qp = ptp.q[ip];
    if (qp % q != 0)
      fail_internal("cyclic group sizes do not divide along the correspondence");
    for (int64_t jp = 0; jp < qp; ++jp) {
      int64_t j = jp % q;
      int64_t wrap = jp / q;
      auto [s, zeta] = x[pt.base[i] + static_cast<size_t>(j)];
      auto [sp, zetap] = xp[ptp.base[ip] + static_cast<size_t>(jp)];
      if (!S.divides(s, sp)) return false;
      int64_t z = A.norm(pt.ahat[i]) / S.norm(s);
      if (A.norm(ptp.ahat[ip]) / S.norm(sp) != z)
        fail_internal("cyclic bookkeeping groups differ along a divisibility");
      if (((wrap + (qp / q) * zetap) % z) != zeta) return false;
    }
  }
  return true;
}

}  // namespace

ExponentialDiagram exponential_diagram(const PosetMap& f, const PosetMap& g) {
  if (!f.is_t()) fail_validation("exponential_diagram: f must be a T-map");
  if (!g.is_n()) fail_validation("exponential_diagram: g must be an N-map");
  if (f.target()->canonical_key() != g.source()->canonical_key())
    fail_validation("exponential_diagram: target of f must be the source of g");

  const TruncationPoset& S = *f.source();
  const TruncationPoset& A = *g.source();
  const TruncationPoset& T = *g.target();

  std::vector<SlotPlan> plans;
  plans.reserve(T.size());
  int64_t total = 0;
  for (Elem t = 0; t < static_cast<Elem>(T.size()); ++t) {
    plans.push_back(make_plan(f, g, t));
    total += plans.back().tuple_count;
    if (total > limits().max_tuples)
      fail_validation("exponential diagram size cap exceeded");
  }

  // D_t = D'_t / C_t, canonical representative per orbit
  struct DClass {
    Elem t;
    Tuple rep;
    std::vector<Tuple> orbit;
  };
  std::vector<DClass> dclasses;
  std::map<std::pair<Elem, Tuple>, Elem> class_index;  // by construction index
  for (Elem t = 0; t < static_cast<Elem>(T.size()); ++t) {
    std::set<Tuple> seen;
    for (const Tuple& x : enumerate_tuples(plans[t])) {
      if (seen.count(x)) continue;
      auto orbit = orbit_of(f, g, plans[t], x);
      Tuple rep = *std::min_element(orbit.begin(), orbit.end());
      for (auto& m : orbit) seen.insert(m);
      class_index[{t, rep}] = static_cast<Elem>(dclasses.size());
      dclasses.push_back({t, rep, std::move(orbit)});
      if (static_cast<int64_t>(dclasses.size()) > limits().max_diagram_elements)
        fail_validation("exponential diagram size cap exceeded");
    }
  }

  // divisibility between classes: some pair of representatives is related;
  // correspondences between minimal fibers are cached per (t, t') pair
  std::map<std::pair<Elem, Elem>, FiberCorrespondence> corr_cache;
  auto correspondence = [&](Elem ta, Elem tb) -> const FiberCorrespondence& {
    auto it = corr_cache.find({ta, tb});
    if (it == corr_cache.end())
      it = corr_cache.emplace(std::make_pair(ta, tb), correspond(g, plans[ta], plans[tb]))
               .first;
    return it->second;
  };
  // the relation commutes with the simultaneous generator action, so one
  // side can stay pinned at its canonical representative
  auto class_divides = [&](const DClass& a, const DClass& b) {
    if (a.t == b.t) return a.rep == b.rep;
    if (!T.divides(a.t, b.t)) return false;
    const FiberCorrespondence& c = correspondence(a.t, b.t);
    for (const Tuple& xb : b.orbit)
      if (rep_divides(S, A, plans[a.t], a.rep, plans[b.t], xb, c)) return true;
    return false;
  };

  std::vector<std::vector<bool>> ddiv(dclasses.size(),
                                      std::vector<bool>(dclasses.size(), false));
  for (size_t i = 0; i < dclasses.size(); ++i)
    for (size_t j = 0; j < dclasses.size(); ++j)
      if (i != j) ddiv[i][j] = class_divides(dclasses[i], dclasses[j]);

  RawPoset draw;
  for (size_t i = 0; i < dclasses.size(); ++i) {
    // norm: the largest d such that some class over t/d divides this one
    const DClass& dc = dclasses[i];
    int64_t nrm = 1;
    for (size_t j = 0; j < dclasses.size(); ++j)
      if (ddiv[j][i]) nrm = std::max(nrm, T.norm(dc.t) / T.norm(dclasses[j].t));
    if (static_cast<int64_t>(dc.orbit.size()) * nrm != T.norm(dc.t))
      fail_internal("orbit size times norm differs from |t| on a D-element");
    draw.elements.push_back({static_cast<int64_t>(i), nrm,
                             "d" + std::to_string(i) + "@" + T.label(dc.t)});
  }
  for (size_t i = 0; i < dclasses.size(); ++i)
    for (size_t j = 0; j < dclasses.size(); ++j)
      if (ddiv[i][j])
        draw.divides.emplace_back(static_cast<int64_t>(i), static_cast<int64_t>(j));

  PosetPtr D;
  try {
    D = TruncationPoset::validate_shared(std::move(draw));
  } catch (const Error& e) {
    fail_internal(std::string("D is not a truncation poset: ") + e.what());
  }

  // E: triples (b, xi, tuple over D'_{g(b)}) modulo the diagonal C_{g(b)} action
  struct EClass {
    Elem b;
    int64_t xi;
    Tuple rep;
    std::vector<std::pair<int64_t, Tuple>> orbit;
  };
  std::vector<EClass> eclasses;
  int64_t etotal = 0;
  for (Elem b = 0; b < static_cast<Elem>(A.size()); ++b) {
    Elem tb = g(b);
    const SlotPlan& plan = plans[tb];
    if (T.norm(tb) % A.norm(b) != 0) fail_internal("|b| does not divide |g(b)|");
    int64_t rb = T.norm(tb) / A.norm(b);
    etotal += rb * plan.tuple_count;
    if (etotal > limits().max_tuples)
      fail_validation("exponential diagram size cap exceeded");
    std::set<std::pair<int64_t, Tuple>> seen;
    for (int64_t xi = 0; xi < rb; ++xi) {
      for (const Tuple& x : enumerate_tuples(plan)) {
        std::pair<int64_t, Tuple> start{xi, x};
        if (seen.count(start)) continue;
        // diagonal orbit
        std::vector<std::pair<int64_t, Tuple>> orbit{start};
        std::pair<int64_t, Tuple> cur{(xi + 1) % rb, sigma(f, g, plan, x)};
        while (cur != start) {
          orbit.push_back(cur);
          cur = {(cur.first + 1) % rb, sigma(f, g, plan, cur.second)};
        }
        auto rep = *std::min_element(orbit.begin(), orbit.end());
        for (auto& m : orbit) seen.insert(m);
        eclasses.push_back({b, rep.first, rep.second, std::move(orbit)});
        if (static_cast<int64_t>(eclasses.size()) > limits().max_diagram_elements)
          fail_validation("exponential diagram size cap exceeded");
      }
    }
  }

  auto eclass_divides = [&](const EClass& a, const EClass& b) {
    if (a.b == b.b)
      return a.xi == b.xi && a.rep == b.rep;
    if (!A.divides(a.b, b.b)) return false;
    Elem ta = g(a.b), tb2 = g(b.b);
    const FiberCorrespondence& c = correspondence(ta, tb2);
    int64_t ra = T.norm(ta) / A.norm(a.b);
    int64_t rb2 = T.norm(tb2) / A.norm(b.b);
    if (ra != rb2) fail_internal("component ratio changed along divisibility in E");
    for (auto& [xb, tb_] : b.orbit)
      if (a.xi == xb && rep_divides(S, A, plans[ta], a.rep, plans[tb2], tb_, c))
        return true;
    return false;
  };

  std::vector<std::vector<bool>> ediv(eclasses.size(),
                                      std::vector<bool>(eclasses.size(), false));
  for (size_t i = 0; i < eclasses.size(); ++i)
    for (size_t j = 0; j < eclasses.size(); ++j)
      if (i != j) ediv[i][j] = eclass_divides(eclasses[i], eclasses[j]);

  RawPoset eraw;
  for (size_t i = 0; i < eclasses.size(); ++i) {
    const EClass& ec = eclasses[i];
    int64_t nrm = 1;
    for (size_t j = 0; j < eclasses.size(); ++j)
      if (ediv[j][i]) nrm = std::max(nrm, A.norm(ec.b) / A.norm(eclasses[j].b));
    eraw.elements.push_back({static_cast<int64_t>(i), nrm,
                             "e" + std::to_string(i) + "@" + A.label(ec.b)});
  }
  for (size_t i = 0; i < eclasses.size(); ++i)
    for (size_t j = 0; j < eclasses.size(); ++j)
      if (ediv[i][j])
        eraw.divides.emplace_back(static_cast<int64_t>(i), static_cast<int64_t>(j));

  PosetPtr E;
  try {
    E = TruncationPoset::validate_shared(std::move(eraw));
  } catch (const Error& e) {
    fail_internal(std::string("E is not a truncation poset: ") + e.what());
  }

  // assemble the three maps (indices must follow the canonical element order)
  std::vector<Elem> t_assign(dclasses.size());
  std::vector<ExpDElement> d_elements(dclasses.size());
  for (size_t i = 0; i < dclasses.size(); ++i) {
    Elem idx = *D->index_of_id(static_cast<int64_t>(i));
    t_assign[idx] = dclasses[i].t;
    d_elements[idx] = ExpDElement{dclasses[i].t, dclasses[i].rep,
                                  static_cast<int64_t>(dclasses[i].orbit.size())};
  }
  std::vector<Elem> r_assign(eclasses.size()), n_assign(eclasses.size());
  std::vector<ExpEElement> e_elements(eclasses.size());
  for (size_t i = 0; i < eclasses.size(); ++i) {
    Elem idx = *E->index_of_id(static_cast<int64_t>(i));
    const EClass& ec = eclasses[i];
    const SlotPlan& plan = plans[g(ec.b)];
    // position of b inside ghat^{-1}(g(b))
    auto pos = std::find(plan.ahat.begin(), plan.ahat.end(), ec.b);
    if (pos == plan.ahat.end())
      fail_internal("b is not minimal over g(b)");
    size_t bi = static_cast<size_t>(pos - plan.ahat.begin());
    r_assign[idx] = ec.rep[plan.base[bi] + static_cast<size_t>(ec.xi)].first;
    // the underlying D class of the tuple part
    auto dorbit = orbit_of(f, g, plan, ec.rep);
    Tuple drep = *std::min_element(dorbit.begin(), dorbit.end());
    auto it = class_index.find({g(ec.b), drep});
    if (it == class_index.end()) fail_internal("missing D class for an E element");
    n_assign[idx] = *D->index_of_id(it->second);
    e_elements[idx] = ExpEElement{ec.b, ec.xi, ec.rep,
                                  static_cast<int64_t>(ec.orbit.size())};
  }

  std::optional<PosetMap> rmap, nmap, tmap;
  try {
    rmap = PosetMap::make(E, f.source(), std::move(r_assign));
    nmap = PosetMap::make(E, D, std::move(n_assign));
    tmap = PosetMap::make(D, g.target(), std::move(t_assign));
  } catch (const Error& e) {
    fail_internal(std::string("exponential diagram leg is not an R-map: ") + e.what());
  }
  if (!nmap->is_n()) fail_internal("exponential diagram: n is not an N-map");
  if (!tmap->is_t()) fail_internal("exponential diagram: t is not a T-map");
  return ExponentialDiagram{f,
                            g,
                            E,
                            D,
                            std::move(*rmap),
                            std::move(*nmap),
                            std::move(*tmap),
                            std::move(d_elements),
                            std::move(e_elements)};
}

// ---------------------------------------------------------------------------
// Bispans

Bispan Bispan::make(PosetMap r, PosetMap n, PosetMap t) {
  if (r.source()->canonical_key() != n.source()->canonical_key())
    fail_validation("bispan: R and N legs must share their source");
  if (n.target()->canonical_key() != t.source()->canonical_key())
    fail_validation("bispan: N target must be the T source");
  if (!n.is_n()) fail_validation("bispan: middle leg is not an N-map");
  if (!t.is_t()) fail_validation("bispan: last leg is not a T-map");
  return Bispan{std::move(r), std::move(n), std::move(t)};
}

Bispan Bispan::identity(PosetPtr p) {
  PosetMap id = PosetMap::identity(std::move(p));
  return Bispan{id, id, id};
}

std::vector<MorphismLeg> bispan_word(const Bispan& b) {
  return {{OpKind::Pull, b.r}, {OpKind::Norm, b.n}, {OpKind::Transfer, b.t}};
}

WittVector evaluate_word(const std::vector<MorphismLeg>& word, const WittVector& v) {
  WittVector cur = v;
  for (size_t i = 0; i < word.size(); ++i) {
    const MorphismLeg& leg = word[i];
    PosetPtr expected =
        (leg.kind == OpKind::Pull) ? leg.map.target() : leg.map.source();
    if (cur.poset->canonical_key() != expected->canonical_key())
      fail_validation("word leg " + std::to_string(i) + " is not composable");
    try {
      cur = apply_op(leg.map, leg.kind, cur);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Validation)
        fail_validation("word leg " + std::to_string(i) + ": " + e.what());
      throw;
    }
  }
  return cur;
}

WittVector evaluate_bispan(const Bispan& b, const WittVector& v) {
  return evaluate_word(bispan_word(b), v);
}

namespace {

void require_joins(const PosetPtr& p, const char* where) {
  if (!p->has_joins())
    fail_validation(std::string("joins required: poset in ") + where +
                    " does not have joins");
}

// merge adjacent legs of the same kind
bool merge_step(std::vector<MorphismLeg>& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i].kind != w[i + 1].kind) continue;
    if (w[i].kind == OpKind::Pull) {
      // f* then g* is (f o g)*
      w[i] = {OpKind::Pull, PosetMap::compose(w[i + 1].map, w[i].map)};
    } else {
      w[i] = {w[i].kind, PosetMap::compose(w[i].map, w[i + 1].map)};
    }
    w.erase(w.begin() + static_cast<long>(i) + 1);
    return true;
  }
  return false;
}

bool rewrite_step(std::vector<MorphismLeg>& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    OpKind a = w[i].kind, b = w[i + 1].kind;
    if (a == OpKind::Transfer && b == OpKind::Pull) {
      SpanResult span = additive_pullback(w[i].map, w[i + 1].map);
      w[i] = {OpKind::Pull, span.to_source};
      w[i + 1] = {OpKind::Transfer, span.to_other};
      return true;
    }
    if (a == OpKind::Norm && b == OpKind::Pull) {
      auto res = mult_pullback(w[i].map, w[i + 1].map);
      auto* span = std::get_if<SpanResult>(&res);
      if (!span)
        fail_internal("multiplicative pullback missing in the join subcategory: " +
                      std::get<MultPullbackObstruction>(res).witness);
      w[i] = {OpKind::Pull, span->to_source};
      w[i + 1] = {OpKind::Norm, span->to_other};
      return true;
    }
    if (a == OpKind::Transfer && b == OpKind::Norm) {
      ExponentialDiagram ed = exponential_diagram(w[i].map, w[i + 1].map);
      w[i] = {OpKind::Pull, ed.r};
      w[i + 1] = {OpKind::Norm, ed.n};
      w.insert(w.begin() + static_cast<long>(i) + 2, {OpKind::Transfer, ed.t});
      return true;
    }
  }
  return false;
}

}  // namespace

Bispan compose_bispans(const Bispan& b1, const Bispan& b2) {
  if (b1.to()->canonical_key() != b2.from()->canonical_key())
    fail_validation("compose_bispans: target of the first differs from source of the second");
  for (const Bispan* b : {&b1, &b2}) {
    require_joins(b->r.target(), "bispan");
    require_joins(b->r.source(), "bispan");
    require_joins(b->n.target(), "bispan");
    require_joins(b->t.target(), "bispan");
  }

  std::vector<MorphismLeg> word = bispan_word(b1);
  auto w2 = bispan_word(b2);
  word.insert(word.end(), w2.begin(), w2.end());

  int guard = 0;
  while (true) {
    if (merge_step(word)) continue;
    if (rewrite_step(word)) {
      if (++guard > 1000) fail_internal("bispan rewriting did not terminate");
      continue;
    }
    break;
  }

  // word is now ordered [R?][N?][T?]; pad the missing legs with identities
  PosetPtr source = b1.from();
  std::optional<PosetMap> r, n, t;
  size_t i = 0;
  if (i < word.size() && word[i].kind == OpKind::Pull) r = word[i++].map;
  if (i < word.size() && word[i].kind == OpKind::Norm) n = word[i++].map;
  if (i < word.size() && word[i].kind == OpKind::Transfer) t = word[i++].map;
  if (i != word.size()) fail_internal("bispan normal form has unexpected shape");
  if (!r) r = PosetMap::identity(source);
  if (!n) n = PosetMap::identity(r->source());
  if (!t) t = PosetMap::identity(n->target());
  return Bispan::make(std::move(*r), std::move(*n), std::move(*t));
}

// ---------------------------------------------------------------------------
// Law verification

namespace {

RingPtr ghost_symbol_ring(const TruncationPoset& S) {
  std::vector<std::string> vars;
  vars.reserve(S.size());
  for (Elem s = 0; s < static_cast<Elem>(S.size()); ++s)
    vars.push_back("x_" + std::to_string(S.id(s)));
  return RingHandle::poly(std::move(vars));
}

GhostVector ghost_symbols(PosetPtr p) {
  RingPtr R = ghost_symbol_ring(*p);
  std::vector<RingElement> coords;
  for (uint32_t i = 0; i < p->size(); ++i)
    coords.push_back(RingElement::variable(R, i));
  return GhostVector{std::move(p), R, std::move(coords)};
}

std::vector<std::string> coordinate_diffs(const TruncationPoset& P,
                                          const std::vector<RingElement>& a,
                                          const std::vector<RingElement>& b,
                                          const char* side) {
  std::vector<std::string> out;
  for (Elem e = 0; e < static_cast<Elem>(P.size()); ++e)
    if (!(a[e] == b[e]))
      out.push_back(std::string(side) + " coordinate " + P.label(e) + ": " +
                    a[e].to_text() + " vs " + b[e].to_text());
  return out;
}

LawReport law_failure(std::string diagram, std::vector<std::string> diffs) {
  LawReport rep;
  rep.ok = false;
  rep.diagram = std::move(diagram);
  rep.counterexample = diffs.empty() ? "" : diffs.front();
  rep.diffs = std::move(diffs);
  return rep;
}

}  // namespace

LawReport verify_rt_law(const PosetMap& f, const PosetMap& g, uint64_t seed,
                        int witt_trials) {
  LawReport rep;
  rep.diagram = "RT-pullback";
  SpanResult span = additive_pullback(f, g);

  GhostVector xs = ghost_symbols(f.source());
  GhostVector lhs = ghost_pull(g, ghost_transfer(f, xs));
  GhostVector rhs = ghost_transfer(span.to_other, ghost_pull(span.to_source, xs));
  auto diffs = coordinate_diffs(*g.source(), lhs.coords, rhs.coords, "ghost");
  if (!diffs.empty()) return law_failure(rep.diagram, std::move(diffs));

  RandomSource rng(seed);
  for (int i = 0; i < witt_trials; ++i) {
    WittVector v = random_witt_vector(rng, f.source(), -9, 9);
    WittVector wl = pull(g, transfer(f, v));
    WittVector wr = transfer(span.to_other, pull(span.to_source, v));
    auto wd = coordinate_diffs(*g.source(), wl.coords, wr.coords, "Witt");
    if (!wd.empty()) return law_failure(rep.diagram, std::move(wd));
  }
  return rep;
}

LawReport verify_nr_law(const PosetMap& f, const PosetMap& g, uint64_t seed,
                        int witt_trials) {
  LawReport rep;
  rep.diagram = "NR-pullback";
  auto res = mult_pullback(f, g);
  if (auto* obstruction = std::get_if<MultPullbackObstruction>(&res))
    return law_failure(rep.diagram, {"DoesNotExist: " + obstruction->witness});
  SpanResult& span = std::get<SpanResult>(res);

  GhostVector xs = ghost_symbols(f.source());
  GhostVector lhs = ghost_pull(g, ghost_norm(f, xs));
  GhostVector rhs = ghost_norm(span.to_other, ghost_pull(span.to_source, xs));
  auto diffs = coordinate_diffs(*g.source(), lhs.coords, rhs.coords, "ghost");
  if (!diffs.empty()) return law_failure(rep.diagram, std::move(diffs));

  RandomSource rng(seed);
  for (int i = 0; i < witt_trials; ++i) {
    WittVector v = random_witt_vector(rng, f.source(), -9, 9);
    WittVector wl = pull(g, norm_op(f, v));
    WittVector wr = norm_op(span.to_other, pull(span.to_source, v));
    auto wd = coordinate_diffs(*g.source(), wl.coords, wr.coords, "Witt");
    if (!wd.empty()) return law_failure(rep.diagram, std::move(wd));
  }
  return rep;
}

LawReport verify_tn_law(const PosetMap& f, const PosetMap& g, uint64_t seed,
                        int witt_trials) {
  LawReport rep;
  rep.diagram = "TN-exponential";
  ExponentialDiagram ed = exponential_diagram(f, g);

  // orbit count times norm recovers |t| for every D element
  for (Elem d = 0; d < static_cast<Elem>(ed.D->size()); ++d) {
    int64_t tnorm = ed.t.target()->norm(ed.t(d));
    if (ed.d_elements[d].orbit_size * ed.D->norm(d) != tnorm)
      return law_failure(rep.diagram,
                         {"orbit size * norm != |t| at D element " + ed.D->label(d)});
  }

  GhostVector xs = ghost_symbols(f.source());
  GhostVector lhs = ghost_norm(g, ghost_transfer(f, xs));
  GhostVector rhs = ghost_transfer(ed.t, ghost_norm(ed.n, ghost_pull(ed.r, xs)));
  auto diffs = coordinate_diffs(*g.target(), lhs.coords, rhs.coords, "ghost");
  if (!diffs.empty()) return law_failure(rep.diagram, std::move(diffs));

  RandomSource rng(seed);
  for (int i = 0; i < witt_trials; ++i) {
    WittVector v = random_witt_vector(rng, f.source(), -9, 9);
    WittVector wl = norm_op(g, transfer(f, v));
    WittVector wr = transfer(ed.t, norm_op(ed.n, pull(ed.r, v)));
    auto wd = coordinate_diffs(*g.target(), wl.coords, wr.coords, "Witt");
    if (!wd.empty()) return law_failure(rep.diagram, std::move(wd));
  }
  return rep;
}

}  // namespace wittkit
