#include "wittkit/verify.hpp"

#include <algorithm>

#include "wittkit/category.hpp"
#include "wittkit/config.hpp"
#include "wittkit/error.hpp"
#include "wittkit/random.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

namespace {

void record_failure(SuiteReport& rep, const std::string& what) {
  ++rep.failed;
  if (rep.first_counterexample.empty()) rep.first_counterexample = what;
}

SuiteReport run_dwork(uint64_t seed, int size, int trials) {
  SuiteReport rep;
  rep.suite = "dwork";
  rep.seed = seed;
  rep.size = size;
  rep.trials = trials;
  RandomSource rng(seed);
  for (int i = 0; i < trials; ++i) {
    PosetPtr p = random_poset(rng, size);
    for (int j = 0; j < 50; ++j) {
      GhostVector g = random_ghost_vector(rng, p, -20, 20);
      bool dwork_ok = dwork_check(g).ok;
      auto w = try_unghost(g);
      bool invertible = w.has_value();
      if (dwork_ok != invertible) {
        record_failure(rep, "dwork=" + std::to_string(dwork_ok) +
                                " but unghost=" + std::to_string(invertible) +
                                " on " + p->canonical_key());
        continue;
      }
      if (invertible && !(ghost(*w) == g)) {
        record_failure(rep, "ghost(unghost(g)) != g on " + p->canonical_key());
        continue;
      }
      ++rep.passed;
    }
  }
  return rep;
}

SuiteReport run_roundtrip(uint64_t seed, int size, int trials) {
  SuiteReport rep;
  rep.suite = "roundtrip";
  rep.seed = seed;
  rep.size = size;
  rep.trials = trials;
  RandomSource rng(seed);
  for (int i = 0; i < trials; ++i) {
    PosetPtr p = random_poset(rng, size);
    WittVector v = random_witt_vector(rng, p, -20, 20);
    auto w = try_unghost(ghost(v));
    if (!w || !(*w == v)) {
      record_failure(rep, "unghost(ghost(v)) != v on " + p->canonical_key());
      continue;
    }
    ++rep.passed;
  }
  return rep;
}

SuiteReport run_rt(uint64_t seed, int size, int trials) {
  SuiteReport rep;
  rep.suite = "rt";
  rep.seed = seed;
  rep.size = size;
  rep.trials = trials;
  RandomSource rng(seed);
  for (int i = 0; i < trials; ++i) {
    PosetPtr a = random_poset(rng, size);
    PosetMap f = random_tmap_to(rng, a, 3, 1);
    PosetMap g = random_rmap_to(rng, a, /*joins_source=*/false);
    LawReport law = verify_rt_law(f, g, rng.next(), 2);
    if (!law.ok)
      record_failure(rep, law.counterexample);
    else
      ++rep.passed;
  }
  return rep;
}

SuiteReport run_nr(uint64_t seed, int size, int trials) {
  SuiteReport rep;
  rep.suite = "nr";
  rep.seed = seed;
  rep.size = size;
  rep.trials = trials;

  // the worked obstruction: mult-2 {1,3} -> {1,2,3,6} against the inclusion
  // of {1,2,3}; here the multiplicative pullback cannot exist
  {
    auto s13 = std::make_shared<const TruncationPoset>(
        TruncationPoset::from_set({1, 3}));
    PosetMap f = PosetMap::mult_into(s13, 2);
    auto sub = std::make_shared<const TruncationPoset>(
        TruncationPoset::from_set({1, 2, 3}));
    PosetMap g = PosetMap::inclusion(sub, f.target());
    auto res = mult_pullback(f, g);
    if (std::holds_alternative<MultPullbackObstruction>(res)) {
      ++rep.expected_obstructions;
      ++rep.passed;
    } else {
      record_failure(rep, "the {1,3}->{1,2,3,6} obstruction was not detected");
    }
  }

  RandomSource rng(seed);
  for (int i = 0; i < trials; ++i) {
    PosetPtr a = random_poset(rng, size);
    PosetMap f = random_nmap_to(rng, a, 3, 1);
    PosetMap g = random_rmap_to(rng, a, /*joins_source=*/true);
    if (!g.source()->has_joins()) {
      record_failure(rep, "generator produced a joinless source");
      continue;
    }
    LawReport law = verify_nr_law(f, g, rng.next(), 2);
    if (!law.ok)
      record_failure(rep, law.counterexample);  // includes DoesNotExist, which
                                                // joins rule out
    else
      ++rep.passed;
  }
  return rep;
}

SuiteReport run_tn(uint64_t seed, int size, int trials) {
  SuiteReport rep;
  rep.suite = "tn";
  rep.seed = seed;
  rep.size = size;
  rep.trials = trials;
  RandomSource rng(seed);
  int done = 0;
  int attempts = 0;
  while (done < trials && attempts < trials * 20) {
    ++attempts;
    PosetPtr t = random_poset(rng, size, 8);
    PosetMap g = random_nmap_to(rng, t, 2, 1);
    PosetMap f = random_tmap_to(rng, g.source(), 3, 1);
    try {
      LawReport law = verify_tn_law(f, g, rng.next(), 1);
      if (!law.ok)
        record_failure(rep, law.counterexample);
      else
        ++rep.passed;
      ++done;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Validation) continue;  // size cap; try another
      record_failure(rep, e.what());
      ++done;
    }
  }
  rep.trials = done;
  return rep;
}

SuiteReport run_bispan(uint64_t seed, int size, int trials) {
  SuiteReport rep;
  rep.suite = "bispan";
  rep.seed = seed;
  rep.size = size;
  rep.trials = trials;
  RandomSource rng(seed);
  int done = 0;
  int attempts = 0;
  while (done < trials && attempts < trials * 20) {
    ++attempts;
    try {
      PosetPtr s = random_joins_poset(rng, size);
      auto make_bispan = [&](PosetPtr from) {
        PosetMap r = random_rmap_to(rng, std::move(from), /*joins_source=*/true, 2);
        PosetMap n = random_nmap_from(rng, r.source());
        PosetMap tt = random_tmap_from(rng, n.target());
        return Bispan::make(std::move(r), std::move(n), std::move(tt));
      };
      Bispan b1 = make_bispan(s);
      Bispan b2 = make_bispan(b1.to());
      Bispan c = compose_bispans(b1, b2);

      bool all_ok = true;
      for (int k = 0; k < 3; ++k) {
        WittVector v = random_witt_vector(rng, b1.from(), -6, 6);
        WittVector via = evaluate_bispan(b2, evaluate_bispan(b1, v));
        WittVector direct = evaluate_bispan(c, v);
        if (!(via == direct)) {
          record_failure(rep, "bispan composite disagrees with leg-by-leg evaluation");
          all_ok = false;
          break;
        }
      }
      if (all_ok) ++rep.passed;
      ++done;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Validation) continue;  // size caps; retry
      record_failure(rep, e.what());
      ++done;
    }
  }
  rep.trials = done;
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"rt", "nr", "tn", "bispan", "dwork", "roundtrip"};
}

SuiteReport run_suite(const std::string& name, uint64_t seed, int size, int trials) {
  if (size <= 0) size = 5;
  if (name == "dwork") return run_dwork(seed, size, trials > 0 ? trials : 40);
  if (name == "roundtrip") return run_roundtrip(seed, size, trials > 0 ? trials : 200);
  if (name == "rt") return run_rt(seed, size, trials > 0 ? trials : 50);
  if (name == "nr") return run_nr(seed, size, trials > 0 ? trials : 50);
  if (name == "tn") return run_tn(seed, size, trials > 0 ? trials : 25);
  if (name == "bispan") return run_bispan(seed, size, trials > 0 ? trials : 10);
  fail_argument("unknown suite '" + name + "' (expected rt|nr|tn|bispan|dwork|roundtrip)");
}

}  // namespace wittkit
