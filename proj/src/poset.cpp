#include "wittkit/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "wittkit/bigint.hpp"
#include "wittkit/config.hpp"
#include "wittkit/error.hpp"

namespace wittkit {

namespace {

std::string elem_desc(const ElementInfo& e) {
  std::ostringstream os;
  os << "'" << (e.label.empty() ? std::to_string(e.id) : e.label) << "' (id " << e.id
     << ", norm " << e.norm << ")";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation

std::variant<TruncationPoset, AxiomWitness> TruncationPoset::check(RawPoset raw) {
  const size_t n = raw.elements.size();
  if (static_cast<int64_t>(n) > limits().max_poset_elements)
    fail_validation("poset size cap exceeded: " + std::to_string(n) + " > " +
                    std::to_string(limits().max_poset_elements));

  for (auto& e : raw.elements) {
    if (e.norm < 1)
      return AxiomWitness{0, "element id " + std::to_string(e.id) +
                                 " has non-positive norm " + std::to_string(e.norm)};
    if (e.label.empty()) e.label = std::to_string(e.id);
  }

  // canonical order: (norm, label, id)
  std::sort(raw.elements.begin(), raw.elements.end(),
            [](const ElementInfo& a, const ElementInfo& b) {
              if (a.norm != b.norm) return a.norm < b.norm;
              if (a.label != b.label) return a.label < b.label;
              return a.id < b.id;
            });

  std::map<int64_t, Elem> by_id;
  for (size_t i = 0; i < n; ++i) {
    if (!by_id.emplace(raw.elements[i].id, static_cast<Elem>(i)).second)
      fail_validation("duplicate element id " + std::to_string(raw.elements[i].id));
  }

  std::vector<std::vector<uint8_t>> rel(n, std::vector<uint8_t>(n, 0));
  for (size_t i = 0; i < n; ++i) rel[i][i] = 1;
  for (auto& [a, b] : raw.divides) {
    auto ia = by_id.find(a), ib = by_id.find(b);
    if (ia == by_id.end() || ib == by_id.end())
      fail_validation("divides pair references unknown id (" + std::to_string(a) +
                      "," + std::to_string(b) + ")");
    rel[ia->second][ib->second] = 1;
  }
  // transitive closure
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (rel[i][k])
        for (size_t j = 0; j < n; ++j)
          if (rel[k][j]) rel[i][j] = 1;

  // antisymmetry
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (rel[i][j] && rel[j][i])
        return AxiomWitness{0, "antisymmetry fails: " + elem_desc(raw.elements[i]) +
                                   " and " + elem_desc(raw.elements[j]) +
                                   " divide each other"};

  auto nrm = [&](size_t i) { return raw.elements[i].norm; };

  // axiom 1: s | t implies |s| divides |t|
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (rel[i][j] && nrm(j) % nrm(i) != 0)
        return AxiomWitness{1, elem_desc(raw.elements[i]) + " divides " +
                                   elem_desc(raw.elements[j]) +
                                   " but the norms do not divide"};

  // axiom 2: multiplicativity of the norm ratios along chains (automatic for
  // integer ratios, asserted anyway to catch malformed norm data)
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!rel[i][j]) continue;
      for (size_t k = 0; k < n; ++k) {
        if (!rel[j][k]) continue;
        if (nrm(j) % nrm(i) || nrm(k) % nrm(j) || nrm(k) % nrm(i) ||
            (nrm(k) / nrm(i)) != (nrm(k) / nrm(j)) * (nrm(j) / nrm(i)))
          return AxiomWitness{2, "ratio chain fails through " +
                                     elem_desc(raw.elements[i]) + " | " +
                                     elem_desc(raw.elements[j]) + " | " +
                                     elem_desc(raw.elements[k])};
      }
    }

  // axiom 3: unique divisor of each norm dividing |s|
  for (size_t i = 0; i < n; ++i) {
    for (int64_t d : divisors_of(nrm(i))) {
      int64_t want = nrm(i) / d;
      int found = 0;
      for (size_t j = 0; j < n; ++j)
        if (rel[j][i] && nrm(j) == want) ++found;
      if (found != 1)
        return AxiomWitness{3, elem_desc(raw.elements[i]) + " has " +
                                   std::to_string(found) + " divisors of norm " +
                                   std::to_string(want) + " (needs exactly one)"};
    }
  }

  // axiom 4: multiples of s have pairwise distinct norms
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k)
        if (rel[i][j] && rel[i][k] && nrm(j) == nrm(k))
          return AxiomWitness{4, elem_desc(raw.elements[i]) +
                                     " has two multiples of norm " +
                                     std::to_string(nrm(j)) + ": " +
                                     elem_desc(raw.elements[j]) + " and " +
                                     elem_desc(raw.elements[k])};

  TruncationPoset p;
  p.elems_ = std::move(raw.elements);
  p.up_.assign(n, {});
  p.down_.assign(n, {});
  p.covers_.assign(n, {});
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (rel[i][j]) {
        p.up_[i].push_back(static_cast<Elem>(j));
        p.down_[j].push_back(static_cast<Elem>(i));
      }
  for (size_t i = 0; i < n; ++i)
    for (Elem j : p.up_[i]) {
      if (static_cast<size_t>(j) == i) continue;
      bool direct = true;
      for (Elem m : p.up_[i]) {
        if (m == static_cast<Elem>(i) || m == j) continue;
        if (rel[m][j]) {
          direct = false;
          break;
        }
      }
      if (direct) p.covers_[i].push_back(j);
    }

  // components, rooted at the norm-1 elements (axiom 3 gives each element a
  // unique norm-1 divisor)
  p.comp_of_.assign(n, -1);
  for (size_t i = 0; i < n; ++i) {
    if (p.elems_[i].norm != 1) continue;
    int c = static_cast<int>(p.comp_root_.size());
    p.comp_root_.push_back(static_cast<Elem>(i));
    p.comps_.emplace_back();
    for (Elem j : p.up_[i]) {
      p.comp_of_[j] = c;
      p.comps_[c].push_back(j);
    }
  }
  for (size_t i = 0; i < n; ++i)
    if (p.comp_of_[i] < 0) fail_internal("element with no component root");

  return p;
}

TruncationPoset TruncationPoset::validate(RawPoset raw) {
  auto r = check(std::move(raw));
  if (auto* w = std::get_if<AxiomWitness>(&r))
    fail_validation((w->axiom == 0 ? "not a partial order: "
                                   : "axiom " + std::to_string(w->axiom) + " violated: ") +
                    w->message);
  return std::get<TruncationPoset>(std::move(r));
}

PosetPtr TruncationPoset::validate_shared(RawPoset raw) {
  return std::make_shared<const TruncationPoset>(validate(std::move(raw)));
}

// ---------------------------------------------------------------------------
// Queries

std::optional<Elem> TruncationPoset::index_of_id(int64_t id) const {
  for (size_t i = 0; i < elems_.size(); ++i)
    if (elems_[i].id == id) return static_cast<Elem>(i);
  return std::nullopt;
}

bool TruncationPoset::divides(Elem a, Elem b) const {
  const auto& ups = up_[a];
  return std::find(ups.begin(), ups.end(), b) != ups.end();
}

Elem TruncationPoset::divisor_of_norm(Elem e, int64_t want) const {
  for (Elem d : down_[e])
    if (elems_[d].norm == want) return d;
  fail_internal("axiom-3 divisor lookup failed for norm " + std::to_string(want));
}

std::optional<Elem> TruncationPoset::multiple_of_norm(Elem e, int64_t want) const {
  for (Elem m : up_[e])
    if (elems_[m].norm == want) return m;
  return std::nullopt;
}

bool TruncationPoset::has_joins() const {
  // pairs in one component always share the root as common divisor, so the
  // condition reduces to: each in-component pair has a common multiple
  for (const auto& comp : comps_)
    for (Elem a : comp)
      for (Elem b : comp) {
        if (a > b) continue;
        bool ok = false;
        for (Elem u : up_[a])
          if (divides(b, u)) {
            ok = true;
            break;
          }
        if (!ok) return false;
      }
  return true;
}

bool TruncationPoset::is_ordinary() const {
  for (size_t i = 0; i < elems_.size(); ++i)
    for (size_t j = 0; j < elems_.size(); ++j) {
      if (i != j && elems_[i].norm == elems_[j].norm) return false;
      bool nd = elems_[j].norm % elems_[i].norm == 0;
      if (divides(static_cast<Elem>(i), static_cast<Elem>(j)) != nd) return false;
    }
  return true;
}

std::vector<int64_t> TruncationPoset::values() const {
  std::vector<int64_t> v;
  v.reserve(elems_.size());
  for (auto& e : elems_) v.push_back(e.norm);
  std::sort(v.begin(), v.end());
  return v;
}

// ---------------------------------------------------------------------------
// Constructors

TruncationPoset TruncationPoset::build_ordinary(const std::vector<int64_t>& values) {
  RawPoset raw;
  for (int64_t v : values)
    raw.elements.push_back({v, v, std::to_string(v)});
  for (int64_t a : values)
    for (int64_t b : values)
      if (a != b && b % a == 0) raw.divides.emplace_back(a, b);
  return validate(std::move(raw));
}

TruncationPoset TruncationPoset::divisor_poset(int64_t n) {
  if (n < 1) fail_argument("divisor_poset: n >= 1 required");
  return build_ordinary(divisors_of(n));
}

TruncationPoset TruncationPoset::from_set(std::vector<int64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::set<int64_t> have(values.begin(), values.end());
  for (int64_t v : values) {
    if (v < 1) fail_validation("not a truncation set: non-positive member");
    for (int64_t d : divisors_of(v))
      if (!have.count(d))
        fail_validation("not division closed: " + std::to_string(v) +
                        " present but its divisor " + std::to_string(d) + " missing");
  }
  return build_ordinary(values);
}

TruncationPoset TruncationPoset::empty() { return build_ordinary({}); }

PosetCoproduct TruncationPoset::coproduct(const TruncationPoset& p,
                                                      const TruncationPoset& q) {
  RawPoset raw;
  int64_t next = 0;
  std::vector<int64_t> pid(p.size()), qid(q.size());
  for (size_t i = 0; i < p.size(); ++i) {
    pid[i] = next++;
    raw.elements.push_back({pid[i], p.elems_[i].norm, "0:" + p.elems_[i].label});
  }
  for (size_t i = 0; i < q.size(); ++i) {
    qid[i] = next++;
    raw.elements.push_back({qid[i], q.elems_[i].norm, "1:" + q.elems_[i].label});
  }
  for (size_t i = 0; i < p.size(); ++i)
    for (Elem j : p.up_[i])
      if (static_cast<size_t>(j) != i) raw.divides.emplace_back(pid[i], pid[j]);
  for (size_t i = 0; i < q.size(); ++i)
    for (Elem j : q.up_[i])
      if (static_cast<size_t>(j) != i) raw.divides.emplace_back(qid[i], qid[j]);

  PosetCoproduct out{validate(std::move(raw)), {}, {}};
  out.left.resize(p.size());
  out.right.resize(q.size());
  for (size_t i = 0; i < p.size(); ++i)
    out.left[i] = *out.poset.index_of_id(pid[i]);
  for (size_t i = 0; i < q.size(); ++i)
    out.right[i] = *out.poset.index_of_id(qid[i]);
  return out;
}

TruncationPoset TruncationPoset::gcd_poset(std::vector<std::vector<int64_t>> tuples,
                                           std::optional<std::vector<int64_t>> weights) {
  if (tuples.empty()) return empty();
  const size_t k = tuples[0].size();
  if (k == 0) fail_argument("gcd_poset: empty tuples");
  for (auto& t : tuples)
    if (t.size() != k) fail_argument("gcd_poset: mixed tuple arities");
  std::vector<int64_t> w(k, 1);
  if (weights) {
    if (weights->size() != k) fail_argument("gcd_poset: weight arity mismatch");
    w = *weights;
    for (int64_t a : w)
      if (a < 1) fail_argument("gcd_poset: weights must be positive");
  }

  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  std::set<std::vector<int64_t>> have(tuples.begin(), tuples.end());

  auto reduced = [&](const std::vector<int64_t>& t) {
    std::vector<int64_t> u(k);
    for (size_t i = 0; i < k; ++i) {
      if (t[i] < 1) fail_validation("gcd_poset: non-positive coordinate");
      if (t[i] % w[i] != 0)
        fail_validation("weight violation: coordinate " + std::to_string(t[i]) +
                        " not divisible by weight " + std::to_string(w[i]));
      u[i] = t[i] / w[i];
    }
    return u;
  };
  auto tuple_norm = [&](const std::vector<int64_t>& t) {
    auto u = reduced(t);
    int64_t g = 0;
    for (int64_t x : u) g = gcd64(g, x);
    return g;
  };
  auto render = [&](const std::vector<int64_t>& t) {
    std::string s = "(";
    for (size_t i = 0; i < k; ++i) {
      if (i) s += ",";
      s += std::to_string(t[i]);
    }
    return s + ")";
  };

  // closure under scalar division (of the weight-reduced tuple)
  for (auto& t : tuples) {
    int64_t g = tuple_norm(t);
    for (int64_t d : divisors_of(g)) {
      std::vector<int64_t> down(k);
      for (size_t i = 0; i < k; ++i) down[i] = t[i] / d;
      if (!have.count(down))
        fail_validation("not division closed: " + render(t) + " / " +
                        std::to_string(d) + " = " + render(down) + " missing");
    }
  }

  RawPoset raw;
  for (size_t i = 0; i < tuples.size(); ++i)
    raw.elements.push_back({static_cast<int64_t>(i), tuple_norm(tuples[i]),
                            render(tuples[i])});
  for (size_t i = 0; i < tuples.size(); ++i)
    for (size_t j = 0; j < tuples.size(); ++j) {
      if (i == j) continue;
      // s | t iff t = d*s componentwise for one scalar d
      if (tuples[j][0] % tuples[i][0] != 0) continue;
      int64_t d = tuples[j][0] / tuples[i][0];
      bool ok = true;
      for (size_t c = 0; c < k; ++c)
        if (tuples[j][c] != d * tuples[i][c]) {
          ok = false;
          break;
        }
      if (ok) raw.divides.emplace_back(static_cast<int64_t>(i), static_cast<int64_t>(j));
    }
  return validate(std::move(raw));
}

namespace {

// lexicographically least rotation by whole blocks of `a` characters
std::string canonical_block_rotation(const std::string& w, int a) {
  const int blocks = static_cast<int>(w.size()) / a;
  std::string best = w;
  for (int r = 1; r < blocks; ++r) {
    std::string rot = w.substr(static_cast<size_t>(r) * a) +
                      w.substr(0, static_cast<size_t>(r) * a);
    if (rot < best) best = rot;
  }
  return best;
}

// smallest p dividing the block count such that w is (first p blocks)^(m/p)
int primitive_block_period(const std::string& w, int a) {
  const int m = static_cast<int>(w.size()) / a;
  for (int p : divisors_of(m)) {
    std::string root = w.substr(0, static_cast<size_t>(p) * a);
    std::string rep;
    for (int i = 0; i < m / p; ++i) rep += root;
    if (rep == w) return static_cast<int>(p);
  }
  return m;
}

}  // namespace

TruncationPoset TruncationPoset::word_poset(std::vector<std::string> words,
                                            int letters, int block) {
  if (letters < 1 || letters > 26) fail_argument("word_poset: letters in 1..26");
  if (block < 1) fail_argument("word_poset: block >= 1 required");
  std::set<std::string> classes;
  for (auto& w : words) {
    if (w.empty()) fail_validation("word_poset: empty word");
    if (static_cast<int>(w.size()) % block != 0)
      fail_validation("word length not divisible by block: '" + w + "'");
    for (char c : w)
      if (c < 'a' || c >= 'a' + letters)
        fail_validation("word '" + w + "' uses a letter outside the alphabet");
    classes.insert(canonical_block_rotation(w, block));
  }

  // norm of a class: block count / primitive block period (the root must
  // itself have length divisible by the block size, which whole-block
  // periods guarantee)
  auto class_norm = [&](const std::string& w) {
    int m = static_cast<int>(w.size()) / block;
    return static_cast<int64_t>(m / primitive_block_period(w, block));
  };
  auto class_power = [&](const std::string& w, int64_t d) {
    std::string out;
    for (int64_t i = 0; i < d; ++i) out += w;
    return canonical_block_rotation(out, block);
  };
  auto class_root = [&](const std::string& w) {
    int p = primitive_block_period(w, block);
    return canonical_block_rotation(w.substr(0, static_cast<size_t>(p) * block), block);
  };

  for (const auto& w : classes) {
    int64_t nw = class_norm(w);
    std::string root = class_root(w);
    for (int64_t d : divisors_of(nw)) {
      std::string down = class_power(root, d);
      if (!classes.count(down))
        fail_validation("not division closed: '" + w + "' present but '" + down +
                        "' missing");
    }
  }

  std::vector<std::string> list(classes.begin(), classes.end());
  RawPoset raw;
  for (size_t i = 0; i < list.size(); ++i)
    raw.elements.push_back({static_cast<int64_t>(i), class_norm(list[i]), list[i]});
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = 0; j < list.size(); ++j) {
      if (i == j) continue;
      if (list[j].size() % list[i].size() != 0) continue;
      int64_t d = static_cast<int64_t>(list[j].size() / list[i].size());
      if (class_power(list[i], d) == list[j])
        raw.divides.emplace_back(static_cast<int64_t>(i), static_cast<int64_t>(j));
    }
  return validate(std::move(raw));
}

ScaleQuotient TruncationPoset::scale_quotient(int64_t n) const {
  if (n < 1) fail_argument("scale_quotient: n >= 1 required");
  if (!is_ordinary()) fail_argument("scale_quotient: poset is not an ordinary truncation set");
  std::vector<int64_t> vals = values();
  std::vector<int64_t> quot;
  for (int64_t v : vals)
    if (v % n == 0) quot.push_back(v / n);
  std::set<int64_t> scaled_set;
  for (int64_t v : vals)
    for (int64_t e : divisors_of(n)) scaled_set.insert(e * v);
  std::vector<int64_t> scaled(scaled_set.begin(), scaled_set.end());

  ScaleQuotient out{from_set(quot), from_set(scaled)};
  // (<n>S)/n = S
  std::vector<int64_t> back;
  for (int64_t v : scaled)
    if (v % n == 0) back.push_back(v / n);
  if (back != vals) fail_internal("(<n>S)/n != S");
  return out;
}

bool TruncationPoset::isomorphic_as_labeled(const TruncationPoset& o) const {
  if (size() != o.size()) return false;
  for (size_t i = 0; i < size(); ++i) {
    if (elems_[i].norm != o.elems_[i].norm) return false;
    if (up_[i] != o.up_[i]) return false;
  }
  return true;
}

std::string TruncationPoset::canonical_key() const {
  std::ostringstream os;
  os << "P" << size() << "{";
  for (size_t i = 0; i < size(); ++i)
    os << elems_[i].id << ":" << elems_[i].norm << ";";
  os << "|";
  for (size_t i = 0; i < size(); ++i)
    for (Elem j : up_[i])
      if (static_cast<size_t>(j) != i) os << i << ">" << j << ";";
  os << "}";
  return os.str();
}

std::string TruncationPoset::show_hasse() const {
  std::ostringstream os;
  if (is_empty()) return "(empty poset)\n";
  for (size_t c = 0; c < comps_.size(); ++c) {
    os << "component " << c << ":\n";
    for (Elem e : comps_[c]) {
      os << "  " << label(e) << "  |" << label(e) << "|=" << norm(e);
      if (!covers_[e].empty()) {
        os << "  -> ";
        for (size_t i = 0; i < covers_[e].size(); ++i) {
          if (i) os << ", ";
          os << label(covers_[e][i]);
        }
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace wittkit
