#include "manicoh/splitting.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace manicoh;
using namespace manicoh::testing;

namespace {

TorsionGroup tors(std::vector<PrimePower> f) { return TorsionGroup::of(std::move(f)); }

AttachingVector with(AttachingVector v, const std::string& block, std::vector<Int> entries) {
  v.block(block).entries = std::move(entries);
  return v;
}

std::vector<Int> entries_of(const NormalizedAttachment& na, const std::string& block) {
  return na.vector.block(block).entries;
}

bool has_move(int n, MoveKind kind, const std::string& block) {
  const auto rules = move_set(n);
  return std::any_of(rules.begin(), rules.end(), [&](const MoveRule& r) { return r.kind == kind && r.block == block; });
}

AttachingVector random_attach(Rng& rng, AttachingVector v) {
  for (auto& b : v.blocks)
    for (auto& e : b.entries) e = uniform(rng, 0, b.modulus.convert_to<long long>() - 1);
  return v;
}

}  // namespace

TEST(MoveSet, LicensedMoves) {
  EXPECT_TRUE(has_move(3, MoveKind::Add, "y"));
  EXPECT_TRUE(has_move(2, MoveKind::MooreTransfer, "z"));
  for (const auto& r : move_set(2))
    if (r.kind == MoveKind::MooreTransfer && r.block == "z") EXPECT_EQ(r.direction, MooreDirection::TowardMin);
  EXPECT_TRUE(has_move(4, MoveKind::Add, "x"));
  EXPECT_TRUE(has_move(4, MoveKind::Negate, "x"));
  EXPECT_TRUE(has_move(4, MoveKind::PairAdd, "z1"));
  EXPECT_TRUE(has_move(4, MoveKind::PairNegate, "z1"));
}

TEST(Normalize, WorkedExamples) {
  auto d3 = make_descriptor(3, 3, 0, {}, true, 0);
  EXPECT_EQ(entries_of(normalize(with(d3.attach, "y", {1, 1, 0})), "y"), (std::vector<Int>{1, 0, 0}));

  auto d2 = make_descriptor(2, 0, 0, tors({{3, 1}, {3, 2}}), true, 0);
  const auto z = normalize(with(d2.attach, "z", {1, 1}));
  EXPECT_EQ(entries_of(z, "z"), (std::vector<Int>{1, 0}));
  EXPECT_EQ(z.r_j0, 1u);

  auto d2x = make_descriptor(2, 2, 0, {}, true, 0);
  EXPECT_EQ(entries_of(normalize(with(d2x.attach, "x", {3, 6})), "x"), (std::vector<Int>{3, 0}));
}

TEST(Normalize, RepresentativeRanges) {
  auto d2 = make_descriptor(2, 1, 0, {}, true, 0);
  for (int x = 0; x < 12; ++x) {
    const auto e = entries_of(normalize(with(d2.attach, "x", {x})), "x");
    EXPECT_LE(e[0], 6) << x;
  }
  auto d3 = make_descriptor(3, 0, 1, tors({{3, 1}, {3, 3}}), true, 0);
  auto v = with(d3.attach, "u", {1, 2});
  v = with(v, "w", {2, 1});
  const auto na = normalize(v);
  EXPECT_EQ(entries_of(na, "u"), (std::vector<Int>{1, 0}));
  EXPECT_EQ(entries_of(na, "w"), (std::vector<Int>{0, 1}));
  EXPECT_EQ(na.r_j0, 1u);
  EXPECT_EQ(na.r_j1, 3u);
}

TEST(Normalize, DeltaTracksParityOfX) {
  auto d = make_descriptor(3, 0, 1, {}, true, 0);
  for (int x = 0; x < 24; ++x) {
    const auto na = normalize(with(d.attach, "x", {x}));
    ASSERT_TRUE(na.delta.has_value());
    EXPECT_EQ(*na.delta, x % 2 == 0 ? 1u : 0u) << x;
  }
}

TEST(Normalize, UnusedThreeTorsionReportsZeroExponent) {
  const auto d = make_descriptor(3, 0, 0, tors({{3, 2}}), true, 0);
  const auto na = normalize(d.attach);
  EXPECT_EQ(na.r_j0, 0u);
  EXPECT_EQ(na.r_j1, 0u);
}

TEST(Normalize, IdempotentAndConformingOnRandomVectors) {
  Rng rng(21);
  for (int n : {2, 3, 4})
    for (int trial = 0; trial < 300; ++trial) {
      const auto d = random_descriptor(rng, n, 4);
      const auto once = normalize(d.attach);
      EXPECT_EQ(normalize(once.vector).vector, once.vector) << d.attach.to_string();
      EXPECT_TRUE(normal_form_violations(once.vector).empty()) << once.vector.to_string();
    }
}

TEST(Normalize, ResultIsReachableByMoves) {
  Rng rng(22);
  for (int n : {2, 3, 4})
    for (int trial = 0; trial < 60; ++trial) {
      const auto d = random_descriptor(rng, n, 3, 2);
      const auto orbit = orbit_oracle(d.attach);
      EXPECT_TRUE(orbit.count(normalize(d.attach).vector)) << d.attach.to_string();
    }
}

TEST(Oracle, Examples) {
  const auto zero = make_descriptor(3, 0, 1, {}, true, 0).attach;
  EXPECT_EQ(orbit_oracle(zero), std::set<AttachingVector>{zero});

  const auto x1 = with(zero, "x", {1});
  EXPECT_EQ(orbit_oracle(x1), (std::set<AttachingVector>{x1, with(zero, "x", {23})}));

  const auto d2 = make_descriptor(2, 2, 0, {}, false, 0);
  std::set<std::vector<Int>> ys;
  for (const auto& v : orbit_oracle(with(d2.attach, "x", {0, 0}))) ys.insert(v.block("y").entries);
  EXPECT_EQ(ys, (std::set<std::vector<Int>>{{1, 0}, {0, 1}, {1, 1}}));
}

TEST(Oracle, RefusesAboveTheBound) {
  const auto d = make_descriptor(3, 0, 4, {}, true, 0);
  EXPECT_THROW(orbit_oracle(d.attach), OracleRefused);
  OracleLimits tight;
  tight.max_component_states = 10;
  EXPECT_THROW(orbit_oracle(make_descriptor(3, 0, 2, {}, true, 0).attach, tight), OracleRefused);
}

TEST(Oracle, NormalizeIsOrbitInvariant) {
  Rng rng(23);
  for (int n : {2, 3, 4})
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = random_descriptor(rng, n, 3, 2);
      const auto expect = normalize(d.attach).vector;
      for (const auto& v : orbit_oracle(d.attach)) ASSERT_EQ(normalize(v).vector, expect) << v.to_string();
      EXPECT_EQ(oracle_canonical(d.attach), expect) << d.attach.to_string();
    }
}

TEST(Splitting, EmptyWedgeIsTopSphere) {
  const auto w = suspension_splitting(make_descriptor(3, 0, 0, {}, true, 0));
  EXPECT_TRUE(w.summands.empty());
  EXPECT_TRUE(w.cofibre.codomain.empty());
  EXPECT_EQ(w.cofibre.top_dim, 9);
  EXPECT_TRUE(w.cofibre.splits_further);
}

TEST(Splitting, NTwoSingleClassIsOneCofibre) {
  auto d = make_descriptor(2, 1, 0, {}, true, 0);
  d.attach.block("x").entries = {1};
  const auto w = suspension_splitting(d);
  EXPECT_TRUE(w.summands.empty());
  EXPECT_EQ(w.cofibre.codomain, (std::vector<Space>{Space::sphere(3), Space::sphere(5)}));
  EXPECT_EQ(w.cofibre.expression, "ν′");
  EXPECT_FALSE(w.cofibre.splits_further);
}

TEST(Splitting, NFourZeroAttachCounts) {
  const auto d = make_descriptor(4, 2, 1, tors({{3, 2}}), true, 1);
  const auto w = suspension_splitting(d);
  EXPECT_EQ(w.count(Space::sphere(6)), 1u);
  EXPECT_EQ(w.count(Space::moore(6, 9)), 1u);
  EXPECT_EQ(w.count(Space::moore(7, 9)), 1u);
  EXPECT_EQ(w.count(Space::chang(7)), 0u);
  EXPECT_TRUE(w.cofibre.splits_further);
  EXPECT_TRUE(homology_check(w, d).ok);
}

TEST(Splitting, NTwoAllChangIsAbsorbed) {
  const auto d = make_descriptor(2, 1, 0, {}, true, 1);
  const auto w = suspension_splitting(d);
  EXPECT_EQ(w.count(Space::chang(5)), 0u);
  EXPECT_EQ(w.cofibre.codomain, std::vector<Space>{Space::chang(5)});
  EXPECT_TRUE(homology_check(w, d).ok);
}

TEST(Splitting, ChangCountMatchesC) {
  Rng rng(24);
  for (int n : {2, 3, 4})
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = random_descriptor(rng, n, 5);
      const auto w = suspension_splitting(d);
      const int chang_dim = n + 3;
      std::size_t total = w.count(Space::chang(chang_dim));
      total += static_cast<std::size_t>(
          std::count(w.cofibre.codomain.begin(), w.cofibre.codomain.end(), Space::chang(chang_dim)));
      EXPECT_EQ(total, d.c) << "n=" << n;
    }
}

TEST(HomologyCheck, RandomDescriptorsPass) {
  Rng rng(25);
  for (int n : {2, 3, 4})
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = random_descriptor(rng, n, 5, 3);
      const auto w = suspension_splitting(d);
      const auto chk = homology_check(w, d);
      EXPECT_TRUE(chk.ok) << w.to_string() << (chk.mismatches.empty() ? "" : "\n" + chk.mismatches.front());
    }
}

TEST(HomologyCheck, DetectsRemovedSphere) {
  const auto d = make_descriptor(3, 3, 0, {}, true, 1);
  auto w = suspension_splitting(d);
  ASSERT_TRUE(homology_check(w, d).ok);
  bool removed = false;
  for (auto& s : w.summands)
    if (s.space == Space::sphere(6) && s.multiplicity > 0) {
      --s.multiplicity;
      removed = true;
      break;
    }
  ASSERT_TRUE(removed);
  const auto chk = homology_check(w, d);
  EXPECT_FALSE(chk.ok);
  ASSERT_FALSE(chk.mismatches.empty());
  EXPECT_EQ(chk.mismatches.front().rfind("degree 6", 0), 0u) << chk.mismatches.front();
}

TEST(ElementaryMoves, PreserveReducedEntries) {
  Rng rng(26);
  for (int n : {2, 3, 4}) {
    const auto d = random_descriptor(rng, n, 3, 2);
    const auto v = random_attach(rng, d.attach);
    for (const auto& m : elementary_moves(v)) {
      const auto u = apply_move(v, m);
      for (const auto& b : u.blocks)
        for (const auto& e : b.entries) EXPECT_TRUE(e >= 0 && e < b.modulus) << m.label;
    }
  }
}
