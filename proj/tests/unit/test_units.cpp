#include <random>

#include <gtest/gtest.h>

#include "ilab/units.hpp"
#include "naive.hpp"
#include "support.hpp"

namespace {

using namespace ilab;
using testing_support::catalog_context;
using testing_support::context;
using testing_support::random_vector;
using testing_support::view;
using V = Vector<PrimeField>;

std::vector<Unit<PrimeField>> random_units(const AlgebraContext<PrimeField>& ctx, std::mt19937_64& rng,
                                           std::size_t count) {
  std::vector<Unit<PrimeField>> out;
  while (out.size() < count)
    if (auto u = make_unit(ctx, random_vector(ctx, rng))) out.push_back(std::move(*u));
  return out;
}

TEST(Commutators, Identities) {
  auto ctx = catalog_context("q8ext-c3");
  std::mt19937_64 rng(21);
  const auto us = random_units(*ctx, rng, 12);
  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    const auto& u = us[i];
    const auto& v = us[i + 1];
    EXPECT_EQ(unit_commutator(*ctx, u, u).value, ctx->one());
    const auto uv = unit_commutator(*ctx, u, v);
    const auto vu = unit_commutator(*ctx, v, u);
    EXPECT_EQ(ctx->multiply(uv.value, vu.value), ctx->one());
    EXPECT_EQ(ctx->multiply(uv.value, uv.inverse), ctx->one());
    // (u, v) = 1 + u^-1 v^-1 [u, v]
    const auto rhs = ctx->add(ctx->one(), ctx->multiply(ctx->multiply(u.inverse, v.inverse), ctx->bracket(u.value, v.value)));
    EXPECT_EQ(uv.value, rhs);
  }
  auto ab = context(PrimeField(3), "product(cyclic:3, cyclic:9)");
  const auto as = random_units(*ab, rng, 4);
  EXPECT_EQ(unit_commutator(*ab, as[0], as[1]).value, ab->one());
  EXPECT_FALSE(make_unit(*ctx, ctx->zero()));
}

TEST(Commutators, IteratedForms) {
  auto ctx = catalog_context("q8ext-c3");
  std::mt19937_64 rng(4);
  const auto us = random_units(*ctx, rng, 3);
  const auto c = iterated_commutator(*ctx, std::span<const Unit<PrimeField>>(us));
  const auto step = unit_commutator(*ctx, unit_commutator(*ctx, us[0], us[1]), us[2]);
  EXPECT_EQ(c.value, step.value);
  const std::vector<V> xs = {us[0].value, us[1].value, us[2].value};
  EXPECT_EQ(iterated_bracket(*ctx, view(xs)), ctx->bracket(ctx->bracket(xs[0], xs[1]), xs[2]));
}

TEST(Enumeration, UnitsOfF3C3) {
  auto ctx = context(PrimeField(3), "cyclic:3");
  EXPECT_EQ(enumerate_units_in(*ctx, Subspace<PrimeField>::full(ctx->field(), 3), 1000).size(), 18u);
  const auto sym = enumerate_symmetric_units(*ctx);
  EXPECT_EQ(sym.size(), 6u);
  for (const auto& u : sym) {
    EXPECT_EQ(ctx->involute(u.value), u.value);
    EXPECT_EQ(ctx->multiply(u.value, u.inverse), ctx->one());
  }
}

TEST(Enumeration, CapIsEnforced) {
  auto ctx = context(PrimeField(3), "q8");
  EXPECT_THROW(enumerate_symmetric_units(*ctx, 100), CapExceeded);
}

TEST(Enumeration, SymmetricUnitsOfF3Q8MatchOracle) {
  auto ctx = context(PrimeField(3), "q8");
  const auto units = enumerate_symmetric_units(*ctx);

  const naive::Group q = naive::close(naive::quaternion());
  const naive::Algebra a{&q, 3};
  std::size_t want = 0;
  for (const auto& v : naive::all_elements(a, naive::symmetric_span(a).vectors())) want += naive::inverse(a, v).has_value();
  EXPECT_EQ(units.size(), want);

  const auto cl = subset_class_exhaustive(*ctx, std::span<const Unit<PrimeField>>(units), 1u << 16);
  ASSERT_TRUE(cl);
  EXPECT_EQ(*cl, 1u);
}

TEST(Enumeration, ClassOfTrivialSet) {
  auto ctx = context(PrimeField(3), "q8");
  const std::vector<Unit<PrimeField>> one = {*make_unit(*ctx, ctx->one())};
  EXPECT_EQ(subset_class_exhaustive(*ctx, std::span<const Unit<PrimeField>>(one), 16), std::optional<std::size_t>(0));
}

TEST(Enumeration, ClassSearchHonoursCap) {
  auto ctx = context(PrimeField(3), "extraspecial:3");
  std::mt19937_64 rng(9);
  const auto us = random_units(*ctx, rng, 3);
  EXPECT_THROW(subset_class_exhaustive(*ctx, std::span<const Unit<PrimeField>>(us), 10), CapExceeded);
}

TEST(Witness, BoundsForQ8ExtC3) {
  auto ctx = catalog_context("q8ext-c3");
  const auto dec = decompose_q8_structure(ctx->orientation(), 3);
  ASSERT_TRUE(dec);
  const auto s = symmetric_generators(*ctx).plus_part;
  const auto strong = strong_lie_series(*ctx, view(s), 64).report;
  const auto seeded = seeded_strong_series(*ctx, view(s), 64).report;
  const auto rep = witness_class_bounds(*ctx, *dec.value, strong.index, seeded.index, {.seed = 1, .budget = 20000});
  EXPECT_EQ(rep.strong_upper_bound, 3u);
  ASSERT_TRUE(rep.seeded_upper_bound);
  EXPECT_EQ(*rep.seeded_upper_bound, 2u);
  EXPECT_EQ(rep.upper_bound, 2u);
  EXPECT_EQ(rep.lower_bound, 2u);
  EXPECT_TRUE(rep.exact);
  ASSERT_TRUE(rep.witness);
  const auto& w = *rep.witness;
  EXPECT_EQ(w.u_list.size(), rep.lower_bound);
  EXPECT_NE(w.commutator, ctx->one());
  EXPECT_TRUE(w.congruence_holds);
  std::vector<Unit<PrimeField>> us;
  for (const auto& u : w.u_list) us.push_back(*make_unit(*ctx, u));
  EXPECT_EQ(iterated_commutator(*ctx, std::span<const Unit<PrimeField>>(us)).value, w.commutator);
  for (const auto& u : w.u_list) EXPECT_EQ(ctx->involute(u), u);
}

TEST(Witness, AgreesWithExhaustiveClassWhenPIsTrivial) {
  auto ctx = catalog_context("q8ext");
  const auto dec = decompose_q8_structure(ctx->orientation(), 3);
  ASSERT_TRUE(dec);
  const auto units = enumerate_symmetric_units(*ctx);
  const auto cl = subset_class_exhaustive(*ctx, std::span<const Unit<PrimeField>>(units), 1u << 18);
  ASSERT_TRUE(cl);
  const auto s = symmetric_generators(*ctx).plus_part;
  const auto strong = strong_lie_series(*ctx, view(s), 64).report;
  const auto rep = witness_class_bounds(*ctx, *dec.value, strong.index, std::nullopt, {.seed = 3});
  EXPECT_LE(rep.lower_bound, *cl);
  EXPECT_GE(rep.upper_bound, *cl);
}

TEST(Witness, CandidatesAreSymmetricUnits) {
  for (const char* name : {"q8ext-c3", "q8ext-c2-c3", "q8ext-c5"}) {
    SCOPED_TRACE(name);
    auto ctx = catalog_context(name);
    const auto dec = decompose_q8_structure(ctx->orientation(), ctx->field().characteristic());
    ASSERT_TRUE(dec);
    const auto cands = witness_candidates(*ctx, *dec.value);
    EXPECT_FALSE(cands.empty());
    for (const auto& c : cands) {
      EXPECT_EQ(ctx->involute(c.x), c.x);
      EXPECT_EQ(ctx->involute(c.u.value), c.u.value);
      EXPECT_EQ(ctx->multiply(c.u.value, c.u.inverse), ctx->one());
    }
  }
}

}  // namespace
