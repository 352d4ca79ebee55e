#include <gtest/gtest.h>

#include "polyverse/interchange.hpp"
#include "polyverse/suites.hpp"
#include "support.hpp"

using namespace polyverse;
using testgen::Gen;

TEST(Interchange, PolynomialAndMorphismRoundTrip) {
  Gen g(71);
  for (int t = 0; t < 30; ++t) {
    const Polynomial G = g.poly(g.set("i", 1, 2), g.set("j", 1, 2), "G", 3, 2);
    EXPECT_EQ(io::poly_from_json(io::to_json(G)), G);
    const PolyMorphism psi = g.cartesian_into(G, "F", 3);
    EXPECT_EQ(io::morphism_from_json(io::to_json(psi)), psi);
    if (auto phi = g.morphism(psi.src(), G)) {
      // Text round trip through dump and parse.
      const std::string text = io::to_json(*phi).dump();
      EXPECT_EQ(io::morphism_from_json(io::json::parse(text)), *phi);
      EXPECT_EQ(io::to_json(io::morphism_from_json(io::json::parse(text))).dump(), text);
    }
  }
}

TEST(Interchange, UniverseRoundTrip) {
  Gen g(72);
  std::vector<Universe> us{mk_bool_universe(), mk_skewed_universe()};
  for (int t = 0; t < 10; ++t) us.push_back(g.universe());
  for (const auto& u : us) {
    const Universe back = io::universe_from_json(io::json::parse(io::to_json(u).dump()));
    EXPECT_EQ(back, u);
    for (const auto& c : check_universe(back)) EXPECT_TRUE(c.holds) << c.law << " " << c.detail;
  }
}

TEST(Interchange, MalformedInputIsAParseError) {
  auto kind_of = [](const char* text) {
    try {
      io::poly_from_json(io::json::parse(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::invalid;
  };
  EXPECT_EQ(kind_of(R"({"I": ["i"]})"), ErrorKind::parse);
  EXPECT_EQ(kind_of(R"({"I": ["i"], "B": ["b"], "A": ["a"], "J": ["j"], "s": [["b", "x"]], "f": [["b", "a"]],
                       "t": [["a", "j"]]})"),
            ErrorKind::parse);
  EXPECT_EQ(kind_of(R"({"I": ["i"], "B": ["b"], "A": ["a"], "J": ["j"], "s": [["b", "i"]], "f": [],
                       "t": [["a", "j"]]})"),
            ErrorKind::parse);
}

TEST(Interchange, LawBreakingMorphismKeepsItsKind) {
  const Polynomial two = from_map(FinMap::to_point(FinSet{"d1", "d2"}));
  io::json j = io::to_json(PolyMorphism::identity(two));
  // Send both vertex elements to d1: the lower square stops being a pullback.
  j["dst_leg"] = io::json::array({io::json::array({"d1", "d1"}), io::json::array({"d2", "d1"})});
  try {
    io::morphism_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(e.kind(), ErrorKind::parse);
  }
}

TEST(Generate, SameSeedSameInstances) {
  Gen a(5), b(5);
  for (int t = 0; t < 10; ++t) {
    EXPECT_EQ(io::to_json(a.universe()).dump(), io::to_json(b.universe()).dump());
    const Polynomial p = a.poly(a.set("i", 1, 2), a.set("j", 1, 2), "p", 3, 2);
    const Polynomial q = b.poly(b.set("i", 1, 2), b.set("j", 1, 2), "p", 3, 2);
    EXPECT_EQ(p, q);
  }
}

TEST(Generate, MorphismsValidateAfterSerialisation) {
  Gen g(73);
  for (int t = 0; t < 40; ++t) {
    const Polynomial G = g.poly(g.set("i", 1, 2), g.set("j", 1, 2), "G", 3, 2);
    const PolyMorphism psi = g.cartesian_into(G, "F", 3);
    EXPECT_NO_THROW(io::morphism_from_json(io::to_json(psi)));
    if (auto phi = g.morphism(psi.src(), G)) EXPECT_NO_THROW(io::morphism_from_json(io::to_json(*phi)));
  }
}

TEST(Reports, DeterministicAndConsistent) {
  SuiteConfig cfg;
  cfg.seed = 9;
  cfg.count = 5;
  for (const auto& name : suite_names()) {
    const Report a = run_suite(name, cfg);
    const Report b = run_suite(name, cfg);
    EXPECT_EQ(render_text(a), render_text(b)) << name;
    EXPECT_EQ(render_json(a), render_json(b)) << name;
    EXPECT_EQ(a.count(Status::pass) + a.count(Status::fail) + a.count(Status::capped), a.records.size());
    EXPECT_EQ(a.exit_code(), 0) << name << "\n" << render_text(a);
    for (const auto& r : a.records) EXPECT_FALSE(r.law.empty());
  }
}

TEST(Reports, JsonLinesParse) {
  SuiteConfig cfg;
  cfg.count = 3;
  const std::string text = render_json(run_suite("unique-adjustment", cfg));
  std::size_t lines = 0, start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    const auto j = io::json::parse(text.substr(start, end - start));
    EXPECT_TRUE(j.contains("law") || j.contains("summary"));
    start = end + 1;
    ++lines;
  }
  EXPECT_EQ(lines, 3 * 3 + 1u);
}

TEST(Reports, CorruptedUniverseListsWitnesses) {
  Universe u = mk_skewed_universe();
  const Label key = tup("code1b", Label::tuple({tup("b", "code1b")}));
  u.sigma[key] = Label("code0");
  u.pair[key] = FinMap(u.pair.at(key).dom(), u.el.dom(), {0});
  const Report r = type_isos_suite(SuiteConfig{}, {{"corrupt", u}});
  EXPECT_EQ(r.exit_code(), 1);
  ASSERT_GT(r.count(Status::fail), 0u);
  for (const auto& rec : r.records)
    if (rec.status == Status::fail) EXPECT_NE(rec.detail.find(key.str()), std::string::npos) << rec.detail;
}

TEST(Reports, CapExceededEverywhere) {
  SuiteConfig cfg;
  cfg.count = 3;
  cfg.cap = 1;
  const Report r = coherence_suite(cfg);
  EXPECT_EQ(r.count(Status::capped), 3u);
  EXPECT_EQ(r.exit_code(), 3);
}

TEST(Reports, UnknownSuite) { EXPECT_THROW(run_suite("nope", SuiteConfig{}), Error); }
