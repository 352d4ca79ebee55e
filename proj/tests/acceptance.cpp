// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polyverse/polyverse.hpp"

using namespace polyverse;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

std::size_t passed(const Report& r, const std::string& law) {
  std::size_t n = 0;
  for (const auto& rec : r.records) n += rec.law == law && rec.status == Status::pass ? 1 : 0;
  return n;
}

std::string first_failure(const Report& r) {
  for (const auto& rec : r.records)
    if (rec.status != Status::pass)
      return r.suite + " #" + std::to_string(rec.instance) + " " + rec.law + ": " + rec.detail;
  return "";
}

void clean(Outcome& o, const Report& r) {
  o.require(r.count(Status::fail) == 0 && r.count(Status::capped) == 0, first_failure(r));
}

void at_least(Outcome& o, const Report& r, const std::string& law, std::size_t n) {
  const std::size_t got = passed(r, law);
  o.require(got >= n, law + ": " + std::to_string(got) + " passing records, want " + std::to_string(n));
}

SuiteConfig config(std::uint64_t seed, std::size_t count, std::size_t max_size = 3) {
  SuiteConfig c;
  c.seed = seed;
  c.count = count;
  c.max_size = max_size;
  return c;
}

std::vector<NamedUniverse> builtins() { return {{"bool", mk_bool_universe()}, {"skewed", mk_skewed_universe()}}; }

// Reports produced by the criteria, re-run later for the determinism check.
std::vector<std::pair<Report, std::function<Report()>>> produced;

Report keep(std::function<Report()> run) {
  Report r = run();
  produced.emplace_back(r, std::move(run));
  return r;
}

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("threw: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && limit_s > 0 && secs >= limit_s) {
    o.ok = false;
    o.note = "took " + std::to_string(secs) + " s";
  }
  if (!o.ok) ++failures;
  std::printf("%s criterion %d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
              o.note.empty() ? "" : ": ", o.note.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "extension-composition", 60, [] {
    Outcome o;
    const Report r = keep([] { return extension_composition_suite(config(1, 50)); });
    clean(o, r);
    o.require(r.instances >= 50, "fewer than 50 instances");
    at_least(o, r, "extension.round-trip", 50 * 3);
    at_least(o, r, "extension.naturality", 50 * 2);
    return o;
  });

  criterion(2, "unique-adjustment", 30, [] {
    Outcome o;
    const Report r = keep([] { return unique_adjustment_suite(config(2, 100), 4); });
    clean(o, r);
    at_least(o, r, "adjustment.exactly-one", 100);
    at_least(o, r, "adjustment.closed-form", 100);
    return o;
  });

  criterion(3, "coherence", 120, [] {
    Outcome o;
    const Report r = keep([] { return coherence_suite(config(11, 20)); });
    clean(o, r);
    at_least(o, r, "codiscrete.pentagon", 20);
    at_least(o, r, "codiscrete.triangle", 20);
    return o;
  });

  criterion(4, "internal-category", 60, [] {
    Outcome o;
    const Report r = keep([] { return internal_equiv_suite(config(4, 20), 4); });
    clean(o, r);
    for (const char* law : {"functor.full-and-faithful", "functor.composite", "equivalence.same-sets",
                            "equivalence.unique", "equivalence.round-trip"})
      at_least(o, r, law, 20);
    std::size_t category = 0;
    for (const auto& rec : r.records) category += rec.law.rfind("category.", 0) == 0 ? 1 : 0;
    o.require(category >= 20, "no category-law records");
    return o;
  });

  criterion(5, "pseudomonad-and-pseudoalgebra", 30, [] {
    Outcome o;
    const Report m = keep([] { return pseudomonad_suite(config(5, 20)); });
    const Report a = keep([] { return pseudoalgebra_suite(config(5, 20)); });
    clean(o, m);
    clean(o, a);
    at_least(o, m, "pseudomonad.strict", 1);
    at_least(o, m, "pseudomonad.right-unit-not-strict", 1);
    at_least(o, a, "pseudoalgebra.strict", 1);
    at_least(o, a, "pseudoalgebra.tau-not-strict", 1);
    return o;
  });

  criterion(6, "type-isomorphisms", 10, [] {
    Outcome o;
    const Report r = keep([] { return type_isos_suite(config(6, 2), builtins()); });
    clean(o, r);
    for (const char* row : {"sigma-assoc", "sigma-right-unit", "sigma-left-unit", "pi-curry", "pi-left-unit"})
      at_least(o, r, std::string("type-iso.") + row, 2);
    at_least(o, r, "type-iso.all-strict", 1);
    at_least(o, r, "type-iso.some-non-identity", 1);
    return o;
  });

  criterion(7, "lift", 60, [] {
    Outcome o;
    const Report r = keep([] { return lift_suite(config(7, 30)); });
    clean(o, r);
    for (const char* law : {"lift.identity", "lift.composite", "lift.pullback", "lift.unit-pullback",
                            "lift.mult-pullback"})
      at_least(o, r, law, 30);
    return o;
  });

  criterion(8, "slice-reduction", 30, [] {
    Outcome o;
    const Report r = keep([] { return slice_reduction_suite(config(8, 30)); });
    clean(o, r);
    at_least(o, r, "slice.poly-round-trip", 30);
    at_least(o, r, "slice.cell-round-trip", 30);
    at_least(o, r, "slice.cartesian", 30);
    return o;
  });

  criterion(9, "determinism", 0, [] {
    Outcome o;
    for (const auto& [report, rerun] : produced) {
      const Report again = rerun();
      o.require(render_json(again) == render_json(report), report.suite + " json differs");
      o.require(render_text(again) == render_text(report), report.suite + " text differs");
    }
    o.require(produced.size() == 9, "expected nine reports");
    return o;
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
