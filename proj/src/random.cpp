#include "wittkit/random.hpp"

#include <algorithm>
#include <set>

#include "wittkit/bigint.hpp"
#include "wittkit/error.hpp"

namespace wittkit {

std::vector<int64_t> random_truncation_set(RandomSource& rng, int64_t max_norm,
                                           int64_t max_size) {
  std::set<int64_t> vals{1};
  int attempts = static_cast<int>(rng.between(1, 4));
  for (int i = 0; i < attempts; ++i) {
    int64_t v = rng.between(1, max_norm);
    std::set<int64_t> trial = vals;
    for (int64_t d : divisors_of(v)) trial.insert(d);
    if (static_cast<int64_t>(trial.size()) <= max_size) vals = std::move(trial);
  }
  return {vals.begin(), vals.end()};
}

namespace {

PosetPtr poset_from_components(RandomSource& rng,
                               const std::vector<std::vector<int64_t>>& comps) {
  RawPoset raw;
  int64_t next_id = rng.between(0, 100);  // ids need not start at zero
  for (size_t c = 0; c < comps.size(); ++c)
    for (size_t i = 0; i < comps[c].size(); ++i) {
      raw.elements.push_back({next_id, comps[c][i],
                              "c" + std::to_string(c) + ":" + std::to_string(comps[c][i])});
      next_id += rng.between(1, 3);
    }
  size_t off = 0;
  for (const auto& comp : comps) {
    for (size_t i = 0; i < comp.size(); ++i)
      for (size_t j = 0; j < comp.size(); ++j)
        if (i != j && comp[j] % comp[i] == 0)
          raw.divides.emplace_back(raw.elements[off + i].id, raw.elements[off + j].id);
    off += comp.size();
  }
  return TruncationPoset::validate_shared(std::move(raw));
}

}  // namespace

PosetPtr random_poset(RandomSource& rng, int64_t max_elems, int64_t max_norm) {
  int ncomp = static_cast<int>(rng.between(1, 3));
  std::vector<std::vector<int64_t>> comps;
  int64_t left = std::max<int64_t>(max_elems, 1);
  for (int c = 0; c < ncomp && left > 0; ++c) {
    auto vals = random_truncation_set(rng, max_norm, left);
    left -= static_cast<int64_t>(vals.size());
    comps.push_back(std::move(vals));
  }
  return poset_from_components(rng, comps);
}

PosetPtr random_joins_poset(RandomSource& rng, int64_t max_elems, int64_t max_norm) {
  int ncomp = static_cast<int>(rng.between(1, 2));
  std::vector<std::vector<int64_t>> comps;
  int64_t left = std::max<int64_t>(max_elems, 1);
  for (int c = 0; c < ncomp && left > 0; ++c) {
    for (int tries = 0; tries < 20; ++tries) {
      int64_t n = rng.between(1, max_norm);
      auto vals = divisors_of(n);
      if (static_cast<int64_t>(vals.size()) <= left) {
        left -= static_cast<int64_t>(vals.size());
        comps.push_back(std::move(vals));
        break;
      }
    }
  }
  if (comps.empty()) comps.push_back({1});
  return poset_from_components(rng, comps);
}

WittVector random_witt_vector(RandomSource& rng, PosetPtr p, int64_t lo, int64_t hi) {
  RingPtr Z = RingHandle::integers();
  std::vector<RingElement> coords;
  coords.reserve(p->size());
  for (size_t i = 0; i < p->size(); ++i)
    coords.push_back(RingElement::integer(Z, BigInt(rng.between(lo, hi))));
  return WittVector{std::move(p), Z, std::move(coords)};
}

GhostVector random_ghost_vector(RandomSource& rng, PosetPtr p, int64_t lo, int64_t hi) {
  RingPtr Z = RingHandle::integers();
  std::vector<RingElement> coords;
  coords.reserve(p->size());
  for (size_t i = 0; i < p->size(); ++i)
    coords.push_back(RingElement::integer(Z, BigInt(rng.between(lo, hi))));
  return GhostVector{std::move(p), Z, std::move(coords)};
}

namespace {

// source components of a T-map into the component of `target` with values V:
// each source component is V/n for some n in V
struct PartPlan {
  std::vector<int64_t> values;  // source component value set
  int64_t n;                    // multiplier onto the target component
  int target_component;
};

PosetMap assemble_map(RandomSource& rng, PosetPtr target,
                      const std::vector<PartPlan>& parts) {
  RawPoset raw;
  std::vector<std::vector<int64_t>> ids;  // per part, per value position
  int64_t next_id = rng.between(0, 50);
  for (size_t pi = 0; pi < parts.size(); ++pi) {
    ids.emplace_back();
    for (int64_t v : parts[pi].values) {
      raw.elements.push_back({next_id, v,
                              "s" + std::to_string(pi) + ":" + std::to_string(v)});
      ids.back().push_back(next_id);
      next_id += rng.between(1, 2);
    }
  }
  for (size_t pi = 0; pi < parts.size(); ++pi)
    for (size_t i = 0; i < parts[pi].values.size(); ++i)
      for (size_t j = 0; j < parts[pi].values.size(); ++j)
        if (i != j && parts[pi].values[j] % parts[pi].values[i] == 0)
          raw.divides.emplace_back(ids[pi][i], ids[pi][j]);
  PosetPtr source = TruncationPoset::validate_shared(std::move(raw));

  std::vector<Elem> assign(source->size());
  for (size_t pi = 0; pi < parts.size(); ++pi)
    for (size_t i = 0; i < parts[pi].values.size(); ++i) {
      Elem se = *source->index_of_id(ids[pi][i]);
      int64_t want = parts[pi].values[i] * parts[pi].n;
      Elem found = -1;
      for (Elem te : target->components()[parts[pi].target_component])
        if (target->norm(te) == want) {
          found = te;
          break;
        }
      if (found < 0) fail_internal("random map: image value missing in target");
      assign[se] = found;
    }
  return PosetMap::make(std::move(source), std::move(target), std::move(assign));
}

std::vector<int64_t> component_values(const TruncationPoset& p, int c) {
  std::vector<int64_t> vals;
  for (Elem e : p.components()[c]) vals.push_back(p.norm(e));
  std::sort(vals.begin(), vals.end());
  return vals;
}

std::vector<int64_t> quotient_set(const std::vector<int64_t>& vals, int64_t n) {
  std::vector<int64_t> out;
  for (int64_t v : vals)
    if (v % n == 0) out.push_back(v / n);
  return out;
}

std::vector<int64_t> scaled_set(const std::vector<int64_t>& vals, int64_t n) {
  std::set<int64_t> out;
  for (int64_t v : vals)
    for (int64_t e : divisors_of(n)) out.insert(e * v);
  return {out.begin(), out.end()};
}

// random division-closed subset of a division-closed value set
std::vector<int64_t> random_downset(RandomSource& rng, const std::vector<int64_t>& vals) {
  std::set<int64_t> out;
  for (int64_t v : vals)
    if (rng.one_in(2))
      for (int64_t d : divisors_of(v))
        if (std::find(vals.begin(), vals.end(), d) != vals.end()) out.insert(d);
  if (out.empty()) out.insert(1);
  return {out.begin(), out.end()};
}

}  // namespace

PosetMap random_tmap_to(RandomSource& rng, PosetPtr target, int max_source_components,
                        int min_source_components) {
  std::vector<PartPlan> parts;
  int wanted = static_cast<int>(rng.between(min_source_components, max_source_components));
  for (int k = 0; k < wanted; ++k) {
    int c = static_cast<int>(rng.below(static_cast<int64_t>(target->component_count())));
    if (target->component_count() == 0) break;
    auto vals = component_values(*target, c);
    int64_t n = vals[static_cast<size_t>(rng.below(static_cast<int64_t>(vals.size())))];
    auto quot = quotient_set(vals, n);
    if (quot.empty()) continue;
    parts.push_back({quot, n, c});
  }
  return assemble_map(rng, std::move(target), parts);
}

PosetMap random_nmap_to(RandomSource& rng, PosetPtr target, int max_source_components,
                        int min_source_components) {
  std::vector<PartPlan> parts;
  int wanted = static_cast<int>(rng.between(min_source_components, max_source_components));
  for (int k = 0; k < wanted; ++k) {
    if (target->component_count() == 0) break;
    int c = static_cast<int>(rng.below(static_cast<int64_t>(target->component_count())));
    auto vals = component_values(*target, c);
    // need <n>(V/n) = V for the component map U -> <n>U to land onto V
    std::vector<int64_t> candidates;
    for (int64_t n : vals)
      if (scaled_set(quotient_set(vals, n), n) == vals) candidates.push_back(n);
    if (candidates.empty()) continue;
    int64_t n = candidates[static_cast<size_t>(
        rng.below(static_cast<int64_t>(candidates.size())))];
    parts.push_back({quotient_set(vals, n), n, c});
  }
  return assemble_map(rng, std::move(target), parts);
}

PosetMap random_rmap_to(RandomSource& rng, PosetPtr target, bool joins_source,
                        int max_source_components, int min_source_components) {
  std::vector<PartPlan> parts;
  int wanted = static_cast<int>(rng.between(min_source_components, max_source_components));
  for (int k = 0; k < wanted; ++k) {
    if (target->component_count() == 0) break;
    int c = static_cast<int>(rng.below(static_cast<int64_t>(target->component_count())));
    auto vals = component_values(*target, c);
    int64_t v0 = vals[static_cast<size_t>(rng.below(static_cast<int64_t>(vals.size())))];
    auto room = quotient_set(vals, v0);  // largest valid source component
    std::vector<int64_t> u;
    if (joins_source) {
      int64_t m = room[static_cast<size_t>(rng.below(static_cast<int64_t>(room.size())))];
      u = divisors_of(m);  // <m> has joins
    } else {
      u = random_downset(rng, room);
    }
    parts.push_back({u, v0, c});
  }
  return assemble_map(rng, std::move(target), parts);
}

PosetMap random_tmap_from(RandomSource& rng, PosetPtr source) {
  // per source component U pick n, target component <n>U; occasionally send
  // two identical source components to one target component (a fold)
  struct TargetComp {
    std::vector<int64_t> values;
  };
  std::vector<TargetComp> tcomps;
  std::vector<std::pair<int, int64_t>> part_of;  // per source comp: (tcomp, n)
  for (size_t c = 0; c < source->component_count(); ++c) {
    auto u = component_values(*source, static_cast<int>(c));
    int64_t n = rng.between(1, 4);
    // (<n>U)/n = U, so U -> <n>U is always a fibration
    auto v = scaled_set(u, n);
    bool merged = false;
    for (size_t tc = 0; tc < tcomps.size() && !merged; ++tc)
      if (tcomps[tc].values == v && rng.one_in(2)) {
        part_of.emplace_back(static_cast<int>(tc), n);
        merged = true;
      }
    if (!merged) {
      tcomps.push_back({v});
      part_of.emplace_back(static_cast<int>(tcomps.size() - 1), n);
    }
  }

  RawPoset raw;
  std::vector<std::vector<int64_t>> ids(tcomps.size());
  int64_t next_id = 0;
  for (size_t tc = 0; tc < tcomps.size(); ++tc)
    for (int64_t v : tcomps[tc].values) {
      raw.elements.push_back({next_id, v, "t" + std::to_string(tc) + ":" + std::to_string(v)});
      ids[tc].push_back(next_id);
      ++next_id;
    }
  for (size_t tc = 0; tc < tcomps.size(); ++tc)
    for (size_t i = 0; i < tcomps[tc].values.size(); ++i)
      for (size_t j = 0; j < tcomps[tc].values.size(); ++j)
        if (i != j && tcomps[tc].values[j] % tcomps[tc].values[i] == 0)
          raw.divides.emplace_back(ids[tc][i], ids[tc][j]);
  PosetPtr target = TruncationPoset::validate_shared(std::move(raw));

  std::vector<Elem> assign(source->size());
  for (size_t c = 0; c < source->component_count(); ++c) {
    auto [tc, n] = part_of[c];
    for (Elem se : source->components()[c]) {
      int64_t want = source->norm(se) * n;
      size_t pos =
          static_cast<size_t>(std::lower_bound(tcomps[tc].values.begin(),
                                               tcomps[tc].values.end(), want) -
                              tcomps[tc].values.begin());
      assign[se] = *target->index_of_id(ids[tc][pos]);
    }
  }
  return PosetMap::make(std::move(source), std::move(target), std::move(assign));
}

PosetMap random_nmap_from(RandomSource& rng, PosetPtr source) {
  // same shape as random_tmap_from, but U -> <n>U is always an N-map, so no
  // fibration adjustment is needed
  struct TargetComp {
    std::vector<int64_t> values;
  };
  std::vector<TargetComp> tcomps;
  std::vector<std::pair<int, int64_t>> part_of;
  for (size_t c = 0; c < source->component_count(); ++c) {
    auto u = component_values(*source, static_cast<int>(c));
    int64_t n = rng.between(1, 4);
    auto v = scaled_set(u, n);
    bool merged = false;
    for (size_t tc = 0; tc < tcomps.size() && !merged; ++tc)
      if (tcomps[tc].values == v && rng.one_in(2)) {
        part_of.emplace_back(static_cast<int>(tc), n);
        merged = true;
      }
    if (!merged) {
      tcomps.push_back({v});
      part_of.emplace_back(static_cast<int>(tcomps.size() - 1), n);
    }
  }

  RawPoset raw;
  std::vector<std::vector<int64_t>> ids(tcomps.size());
  int64_t next_id = 0;
  for (size_t tc = 0; tc < tcomps.size(); ++tc)
    for (int64_t v : tcomps[tc].values) {
      raw.elements.push_back({next_id, v, "t" + std::to_string(tc) + ":" + std::to_string(v)});
      ids[tc].push_back(next_id);
      ++next_id;
    }
  for (size_t tc = 0; tc < tcomps.size(); ++tc)
    for (size_t i = 0; i < tcomps[tc].values.size(); ++i)
      for (size_t j = 0; j < tcomps[tc].values.size(); ++j)
        if (i != j && tcomps[tc].values[j] % tcomps[tc].values[i] == 0)
          raw.divides.emplace_back(ids[tc][i], ids[tc][j]);
  PosetPtr target = TruncationPoset::validate_shared(std::move(raw));

  std::vector<Elem> assign(source->size());
  for (size_t c = 0; c < source->component_count(); ++c) {
    auto [tc, n] = part_of[c];
    for (Elem se : source->components()[c]) {
      int64_t want = source->norm(se) * n;
      size_t pos =
          static_cast<size_t>(std::lower_bound(tcomps[tc].values.begin(),
                                               tcomps[tc].values.end(), want) -
                              tcomps[tc].values.begin());
      assign[se] = *target->index_of_id(ids[tc][pos]);
    }
  }
  PosetMap m = PosetMap::make(std::move(source), std::move(target), std::move(assign));
  if (!m.is_n()) fail_internal("random_nmap_from produced a non-N map");
  return m;
}

}  // namespace wittkit
