#include "manicoh/manifold.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace manicoh;
using namespace manicoh::testing;

namespace {

TorsionGroup tors(std::vector<PrimePower> f) { return TorsionGroup::of(std::move(f)); }

bool has_rule(const ValidationReport& r, const std::string& rule) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

Matrix reduce_mod(Matrix m, long long q) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = ((m(i, j) % q) + q) % q;
  return m;
}

FgAbGroup G(unsigned free, std::vector<Int> orders = {}) { return FgAbGroup::from_invariants(free, orders); }

}  // namespace

TEST(Validate, AcceptsOrdinaryDescriptor) {
  const auto d = make_descriptor(3, 2, 1, tors({{3, 1}}), true, 1);
  const auto r = validate(d);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Validate, RejectsTwoTorsion) {
  auto d = make_descriptor(3, 1, 1, {}, true, 0);
  d.torsion = tors({{2, 2}});
  const auto r = validate(d);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(has_rule(r, "T 2-torsion-free"));
  EXPECT_NE(r.violations.front().message.find("2-torsion"), std::string::npos);
  EXPECT_EQ(r.violations.front().path, "torsion[0]");
}

TEST(Validate, RejectsCAboveL) {
  auto d = make_descriptor(4, 1, 0, {}, true, 1);
  d.c = 2;
  const auto r = validate(d);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(has_rule(r, "c ≤ l"));
  EXPECT_NE(r.violations.front().message.find("c exceeds l"), std::string::npos);
}

TEST(Validate, RejectsOddKForNTwo) {
  auto d = make_descriptor(2, 1, 2, {}, false, 0);
  d.k = 3;
  EXPECT_TRUE(has_rule(validate(d), "k even for n = 2"));
}

TEST(Validate, RejectsNonPrimeFactor) {
  auto d = make_descriptor(3, 0, 0, {}, true, 0);
  d.torsion.factors = {{9, 1}};
  EXPECT_TRUE(has_rule(validate(d), "prime-power factor"));
}

TEST(Validate, SpinMatchesYBlockForNTwo) {
  auto d = make_descriptor(2, 2, 0, {}, false, 0);
  EXPECT_TRUE(validate(d).ok());
  d.attach.block("y").entries = {0, 0};
  EXPECT_TRUE(has_rule(validate(d), "y = 0 iff spin"));
  d.spin = true;
  EXPECT_TRUE(validate(d).ok());
  d.attach.block("y").entries = {1, 0};
  EXPECT_TRUE(has_rule(validate(d), "y = 0 iff spin"));
}

TEST(Validate, SchemaViolations) {
  auto d = make_descriptor(3, 1, 2, tors({{3, 1}}), true, 0);
  d.attach.block("x").entries.push_back(0);
  EXPECT_TRUE(has_rule(validate(d), "schema"));
  d = make_descriptor(3, 1, 2, tors({{3, 1}}), true, 0);
  d.attach.block("x").entries[0] = 24;
  EXPECT_TRUE(has_rule(validate(d), "reduced entry"));
}

TEST(Validate, NonspinAboveTwoOnlyWarns) {
  const auto d = make_descriptor(4, 1, 1, {}, false, 0);
  const auto r = validate(d);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Validate, SteenrodShapeAndCConsistency) {
  auto d = make_descriptor(3, 1, 0, {}, true, 0);
  SteenrodData s;
  s.sq2[3] = Matrix::from_rows({{1}});
  d.steenrod = s;
  EXPECT_TRUE(has_rule(validate(d), "c = 0 iff Sq² trivial on H^n"));
  d.c = 1;
  d.attach = default_attach(3, 1, 0, {}, true, 1);
  EXPECT_TRUE(validate(d).ok());
  d.steenrod->sq2[3] = Matrix::from_rows({{1, 0}});
  EXPECT_TRUE(has_rule(validate(d), "matrix shape"));
}

TEST(Validate, RequireValidThrowsWithViolations) {
  auto d = make_descriptor(3, 1, 0, {}, true, 0);
  d.c = 3;
  try {
    require_valid(d);
    FAIL() << "expected InvalidDescriptor";
  } catch (const InvalidDescriptor& e) {
    EXPECT_FALSE(e.violations().empty());
  }
}

TEST(Parse, FullDescriptor) {
  const auto d = parse_descriptor(R"({"n": 3, "l": 2, "k": 1, "torsion": [[3, 1]], "spin": true, "c": 1,
      "attach": {"x": [26], "u": [2]}})");
  EXPECT_EQ(d.n, 3);
  EXPECT_EQ(d.l, 2u);
  EXPECT_EQ(d.torsion, tors({{3, 1}}));
  EXPECT_EQ(d.attach.block("x").entries, std::vector<Int>{2});  // reduced mod 24
  EXPECT_EQ(d.attach.block("u").entries, std::vector<Int>{2});
  EXPECT_TRUE(validate(d).ok());
}

TEST(Parse, DefaultsNonspinNTwoToUnitY) {
  const auto d = parse_descriptor(R"({"n": 2, "l": 2, "k": 0, "spin": false, "c": 0})");
  EXPECT_EQ(d.attach.block("y").entries, (std::vector<Int>{1, 0}));
}

TEST(Parse, ErrorsNameTheField) {
  auto path_of = [](const char* text) {
    try {
      parse_descriptor(text);
    } catch (const DescriptorParseError& e) {
      return e.path();
    }
    return std::string("<no error>");
  };
  EXPECT_EQ(path_of("{"), "");
  EXPECT_EQ(path_of("[]"), "");
  EXPECT_EQ(path_of(R"({"n": 3, "l": 1, "k": 0, "spin": true})"), "c");
  EXPECT_EQ(path_of(R"({"n": 3, "l": 1, "k": 0, "spin": 1, "c": 0})"), "spin");
  EXPECT_EQ(path_of(R"({"n": 5, "l": 1, "k": 0, "spin": true, "c": 0})"), "n");
  EXPECT_EQ(path_of(R"({"n": 3, "l": -1, "k": 0, "spin": true, "c": 0})"), "l");
  EXPECT_EQ(path_of(R"({"n": 3, "l": 1, "k": 0, "spin": true, "c": 0, "colour": 1})"), "colour");
  EXPECT_EQ(path_of(R"({"n": 3, "l": 1, "k": 0, "spin": true, "c": 0, "attach": {"q": []}})"), "attach.q");
  EXPECT_EQ(path_of(R"({"n": 3, "l": 1, "k": 0, "spin": true, "c": 0, "torsion": [[3]]})"), "torsion[0]");
  EXPECT_EQ(path_of(R"({"n": 3, "l": 1, "k": 0, "spin": true, "c": 0,
      "steenrod": {"sq2": [{"from": 3, "rows": 1, "cols": 1, "data": [1, 0]}]}})"),
            "steenrod.sq2[0].data");
}

TEST(Homology, TableExamples) {
  auto h = homology_table(make_descriptor(3, 2, 1, tors({{3, 1}}), true, 1));
  EXPECT_EQ(h[0], G(1));
  EXPECT_EQ(h[3], G(2, {3}));
  EXPECT_EQ(h[4], G(1, {3}));
  EXPECT_EQ(h[5], G(2));
  EXPECT_EQ(h[8], G(1));
  for (int i : {1, 2, 6, 7}) EXPECT_TRUE(h[i].is_trivial()) << i;

  h = homology_table(make_descriptor(2, 0, 0, {}, true, 0));
  for (const auto& [deg, g] : h) EXPECT_EQ(g, (deg == 0 || deg == 6) ? G(1) : G(0)) << deg;

  h = homology_table(make_descriptor(4, 1, 2, tors({{3, 2}}), true, 0));
  EXPECT_EQ(h[4], G(1, {9}));
  EXPECT_EQ(h[5], G(2, {9}));
  EXPECT_EQ(h[6], G(1));
  EXPECT_EQ(h[10], G(1));
}

TEST(Cohomology, Examples) {
  const auto d3 = make_descriptor(3, 2, 1, tors({{3, 1}}), true, 1);
  EXPECT_EQ(cohomology_table(d3)[5], G(2, {3}));
  EXPECT_EQ(cohomology_table(d3)[0], G(1));
  const auto d4 = make_descriptor(4, 1, 2, tors({{3, 2}}), true, 0);
  EXPECT_EQ(cohomology_table(d4, 3)[10], G(0, {3}));
  EXPECT_EQ(cohomology_table(d4, 3)[0], G(0, {3}));
}

TEST(Homology, PoincareDualityOnRandomDescriptors) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(uniform(rng, 2, 4));
    const auto d = random_descriptor(rng, n, 4);
    auto h = homology_table(d);
    const int top = d.top_degree();
    ASSERT_EQ(h.size(), static_cast<std::size_t>(top + 1));
    for (int i = 0; i <= top; ++i) {
      EXPECT_EQ(h[i].free_rank(), h[top - i].free_rank());
      if (i >= 1 && top - 1 - i >= 0) EXPECT_EQ(h[i].torsion_subgroup(), h[top - 1 - i].torsion_subgroup());
    }
    // χ from the table against the ranks of the descriptor
    long long chi = 0;
    for (int i = 0; i <= top; ++i) chi += (i % 2 ? -1 : 1) * static_cast<long long>(h[i].free_rank());
    const long long sign = n % 2 ? -1 : 1;
    EXPECT_EQ(chi, 2 + sign * (2 * static_cast<long long>(d.l) - static_cast<long long>(d.k)));
  }
}

TEST(Cohomology, UniversalCoefficientsAgainstCounts) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(uniform(rng, 2, 4));
    auto d = random_descriptor(rng, n, 3);
    if (!d.torsion.group().is_trivial() && d.torsion.group().order() > 81) continue;
    auto h = homology_table(d);
    auto hz = cohomology_table(d);
    for (int m = 0; m <= d.top_degree(); ++m) {
      // H^m(Z) = Z^{rank H_m} ⊕ tors H_{m−1}
      FgAbGroup expect = FgAbGroup::free(h[m].free_rank());
      if (m > 0) expect = expect + h[m - 1].torsion_subgroup();
      EXPECT_EQ(hz[m], expect) << "degree " << m;
    }
    for (long long q : {2LL, 3LL, 9LL}) {
      auto hq = cohomology_table(d, q);
      for (int m = 0; m <= d.top_degree(); ++m) {
        // |Hom(H_m, Z/q)| · |Ext(H_{m−1}, Z/q)|, both finite-cyclic parts counted by enumeration
        auto torsion_list = [](const FgAbGroup& g) {
          std::vector<long long> out;
          for (const auto& f : g.torsion()) out.push_back(f.order().convert_to<long long>());
          return out;
        };
        std::size_t count = 1;
        for (unsigned i = 0; i < h[m].free_rank(); ++i) count *= static_cast<std::size_t>(q);
        count *= brute_hom_count(torsion_list(h[m]), {q});
        if (m > 0) count *= brute_hom_count(torsion_list(h[m - 1]), {q});
        EXPECT_EQ(hq[m].order(), Int(count)) << "degree " << m << " mod " << q;
      }
    }
  }
}

TEST(Steenrod, ComposeWithZeroAndIdentity) {
  auto d = make_descriptor(3, 1, 0, {}, true, 1);
  d.attach = default_attach(3, 1, 0, {}, true, 1);
  SteenrodData s;
  s.sq2[3] = Matrix::from_rows({{1}});
  d.steenrod = s;
  auto ops = compose_steenrod(d);
  ASSERT_TRUE(ops.sq2_z.count(3));
  EXPECT_EQ(ops.sq2_z.at(3).matrix, canonical_rho(d, 3, 2));

  d = make_descriptor(3, 1, 0, {}, true, 0);
  s.sq2[3] = Matrix::from_rows({{0}});
  d.steenrod = s;
  ops = compose_steenrod(d);
  EXPECT_TRUE(reduce_mod(ops.sq2_z.at(3).matrix, 2).is_zero());
}

TEST(Steenrod, ComposeIsMatrixProduct) {
  Rng rng(13);
  auto d = make_descriptor(3, 2, 0, {}, true, 1);
  for (int trial = 0; trial < 20; ++trial) {
    SteenrodData s;
    s.sq2[3] = random_matrix(rng, 2, 2, 0, 1);
    s.rho2[3] = random_matrix(rng, 2, 2, 0, 1);
    if (reduce_mod(s.sq2[3], 2).is_zero()) s.sq2[3](0, 0) = 1;
    d.steenrod = s;
    const auto ops = compose_steenrod(d);
    const Matrix expect = reduce_mod(s.sq2[3] * s.rho2[3], 2);
    EXPECT_EQ(reduce_mod(ops.sq2_z.at(3).matrix, 2), expect);
  }
  d.steenrod->rho2[3] = Matrix::from_rows({{1, 0, 0}});
  EXPECT_ANY_THROW(compose_steenrod(d));
}
