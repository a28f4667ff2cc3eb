#include <cmath>

#include <gtest/gtest.h>

#include "ilab/lie.hpp"
#include "support.hpp"

namespace {

using namespace ilab;
using testing_support::catalog_context;
using testing_support::context;
using testing_support::view;
using V = Vector<PrimeField>;

template <Field F>
std::vector<Vector<F>> plus_part(const AlgebraContext<F>& ctx) {
  return symmetric_generators(ctx).plus_part;
}

TEST(Series, StrongIndexPinnedForQ8ExtC3) {
  auto ctx = catalog_context("q8ext-c3");
  const auto s = plus_part(*ctx);
  const auto strong = strong_lie_series(*ctx, view(s), 64);
  ASSERT_TRUE(strong.report.vanished());
  EXPECT_EQ(strong.report.index, 4u);
  const auto lower = lower_lie_series(*ctx, view(s), 64);
  ASSERT_TRUE(lower.report.vanished());
  EXPECT_EQ(lower.report.index, 3u);
}

TEST(Series, RationalQ8ExtC2) {
  const auto& e = catalog_entry("q8ext-c2-q");
  auto ctx = context(RationalField{}, e.spec, e.kernel);
  const auto s = plus_part(*ctx);
  const auto strong = strong_lie_series(*ctx, view(s), 16);
  ASSERT_TRUE(strong.report.vanished());
  EXPECT_EQ(strong.report.index, 2u);
}

TEST(Series, EmptyGeneratingSet) {
  auto ctx = context(PrimeField(3), "q8");
  const std::vector<V> none;
  const auto strong = strong_lie_series(*ctx, view(none), 8);
  EXPECT_TRUE(strong.report.vanished());
  EXPECT_EQ(strong.report.index, 2u);
  const auto lower = lower_lie_series(*ctx, view(none), 8);
  EXPECT_TRUE(lower.report.vanished());
  EXPECT_EQ(lower.report.index, 1u);
  EXPECT_TRUE(lower.term(5).is_zero());
}

TEST(Series, NonNilpotentIsCertified) {
  // F3 Q8 has a matrix block, so the Lie algebra FG is not nilpotent
  auto ctx = context(PrimeField(3), "q8");
  std::vector<V> basis;
  for (Elem g = 0; g < ctx->dim(); ++g) basis.push_back(ctx->basis(g));
  const auto lower = lower_lie_series(*ctx, view(basis), 64);
  EXPECT_EQ(lower.report.verdict, Verdict::stabilized_nonzero);
  EXPECT_GE(lower.report.repeat_of, 1u);
  EXPECT_FALSE(lower.report.nilpotency_index());
  const auto strong = strong_lie_series(*ctx, view(basis), 64);
  EXPECT_EQ(strong.report.verdict, Verdict::stabilized_nonzero);
}

TEST(Series, CapsAreReported) {
  auto ctx = catalog_context("q8ext-c9");
  const auto s = plus_part(*ctx);
  const auto r = strong_lie_series(*ctx, view(s), 2).report;
  EXPECT_EQ(r.verdict, Verdict::cap_reached);
  EXPECT_EQ(r.index, 2u);
  EXPECT_EQ(r.dims.size(), 2u);
  EXPECT_THROW(lower_lie_series(*ctx, view(s), 0), std::invalid_argument);
  const auto l = lower_lie_series(*ctx, view(s), 2);
  EXPECT_THROW(l.term(3), std::out_of_range);
  EXPECT_THROW(l.term(0), std::out_of_range);
}

TEST(Series, ShortcutMatchesLiteralChain) {
  for (const char* name : {"q8ext-c3", "q8ext-c2-c3", "q8ext-c3c3", "heis3-c2", "q8-c4"}) {
    SCOPED_TRACE(name);
    auto ctx = catalog_context(name);
    const auto s = plus_part(*ctx);
    const auto fast = strong_lie_series(*ctx, view(s), 32, true);
    const auto slow = strong_lie_series(*ctx, view(s), 32, false);
    EXPECT_EQ(fast.report.verdict, slow.report.verdict);
    EXPECT_EQ(fast.report.index, slow.report.index);
    ASSERT_EQ(fast.terms.size(), slow.terms.size());
    for (std::size_t i = 0; i < fast.terms.size(); ++i) EXPECT_TRUE(fast.terms[i] == slow.terms[i]) << i;
  }
}

TEST(Series, SeededChainSitsInsideStrongChain) {
  for (const char* name : {"q8ext-c3", "q8ext-c9", "heis3", "wr3-c2"}) {
    SCOPED_TRACE(name);
    auto ctx = catalog_context(name);
    const auto s = plus_part(*ctx);
    const auto strong = strong_lie_series(*ctx, view(s), 64);
    const auto seeded = seeded_strong_series(*ctx, view(s), 64);
    ASSERT_TRUE(strong.report.vanished());
    ASSERT_TRUE(seeded.report.vanished());
    EXPECT_LE(seeded.report.index, strong.report.index);
    for (std::size_t n = 1; n <= seeded.report.index; ++n) EXPECT_TRUE(seeded.term(n).is_subspace_of(strong.term(n)));
    // terms are ideals
    for (const auto& t : strong.terms) EXPECT_TRUE(ideal_generated(*ctx, t) == t);
  }
}

TEST(Series, LowerTermsOfSymmetricPartAreSpannedByProducts) {
  for (const char* name : {"q8ext-c3", "q8ext-c9", "q8ext-c2-c3"}) {
    SCOPED_TRACE(name);
    auto ctx = catalog_context(name);
    const auto& e = catalog_entry(name);
    const auto dec = decompose_q8_structure(ctx->orientation(), e.characteristic);
    ASSERT_TRUE(dec);
    const auto s = plus_part(*ctx);
    const auto lower = lower_lie_series(*ctx, view(s), 64);
    ASSERT_TRUE(lower.report.vanished());
    for (std::size_t k = 2; k <= lower.report.index; ++k)
      EXPECT_TRUE(m_script_space(*ctx, *dec.value, k) == lower.term(k)) << "k = " << k;
  }
}

TEST(Series, GroupClass) {
  auto q = testing_support::group("q8");
  const auto all = testing_support::all_elements(*q);
  const auto r = group_class_series(*q, std::span<const Elem>(all), 16);
  ASSERT_TRUE(r.vanished());
  EXPECT_EQ(r.dims, (std::vector<std::size_t>{8, 2, 1}));
  const std::vector<Elem> one{0};
  EXPECT_EQ(group_class_series(*q, std::span<const Elem>(one), 16).dims.front(), 1u);
}

TEST(Augmentation, SeriesOfC3) {
  auto ctx = context(PrimeField(3), "cyclic:3");
  const auto all = testing_support::all_elements(ctx->group());
  const auto r = augmentation_series(*ctx, std::span<const Elem>(all), 8).report;
  ASSERT_TRUE(r.vanished());
  EXPECT_EQ(r.dims, (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(r.index, 3u);
}

TEST(Augmentation, NilpotencyIndexExamples) {
  const PrimeField f3(3);
  EXPECT_EQ(t_nil(f3, testing_support::group("cyclic:3")), 3u);
  EXPECT_EQ(t_nil(f3, testing_support::group("cyclic:9")), 9u);
  EXPECT_EQ(t_nil(f3, testing_support::group("product(cyclic:3, cyclic:3)")), 5u);
  EXPECT_EQ(t_nil(f3, testing_support::group("cyclic:1")), 1u);
  EXPECT_EQ(t_nil(PrimeField(5), testing_support::group("cyclic:5")), 5u);
  EXPECT_THROW(t_nil(f3, testing_support::group("q8")), std::invalid_argument);
}

TEST(Augmentation, DimensionSubgroupsOfC9) {
  const auto chain = dimension_subgroups(PrimeField(3), testing_support::group("cyclic:9"));
  std::vector<std::size_t> orders;
  for (const auto& d : chain.subgroups) orders.push_back(d.size());
  EXPECT_EQ(orders, (std::vector<std::size_t>{9, 3, 3, 1}));
}

// t_nil from the dimension-subgroup ranks: 1 + (p - 1) sum i log_p [D_i : D_(i+1)]
TEST(Augmentation, JenningsFormulaAgreesWithPowers) {
  for (const char* spec : {"cyclic:9", "cyclic:27", "extraspecial:3", "extraspecial:3:9", "table:@data/c3wrc3.tbl",
                           "product(cyclic:3, cyclic:9)"}) {
    SCOPED_TRACE(spec);
    auto g = testing_support::group(spec);
    const auto chain = dimension_subgroups(PrimeField(3), g);
    std::size_t sum = 0;
    for (std::size_t i = 0; i + 1 < chain.subgroups.size(); ++i) {
      std::size_t ratio = chain.subgroups[i].size() / chain.subgroups[i + 1].size(), rank = 0;
      while (ratio > 1) ratio /= 3, ++rank;
      sum += (i + 1) * rank;
    }
    EXPECT_EQ(t_nil(PrimeField(3), g), 1 + 2 * sum);
  }
}

TEST(Powerful, Examples) {
  EXPECT_TRUE(is_powerful(*testing_support::group("cyclic:9"), 3));
  EXPECT_TRUE(is_powerful(*testing_support::group("product(cyclic:3, cyclic:3)"), 3));
  EXPECT_FALSE(is_powerful(*testing_support::group("extraspecial:3"), 3));
  EXPECT_TRUE(is_powerful(*testing_support::group("extraspecial:3:9"), 3));
  EXPECT_FALSE(is_powerful(*testing_support::group("table:@data/c3wrc3.tbl"), 3));
  auto c9 = testing_support::group("cyclic:9");
  EXPECT_EQ(power_of_exponent(*c9, 3, 1).size(), 3u);
  EXPECT_EQ(power_of_exponent(*c9, 3, 2).size(), 1u);
}

TEST(MSpaces, NestedAndVanishing) {
  auto ctx = catalog_context("q8ext-c3");
  const auto dec = decompose_q8_structure(ctx->orientation(), 3);
  ASSERT_TRUE(dec);
  EXPECT_THROW(m_space(*ctx, *dec.value, 1), std::invalid_argument);
  const auto m2 = m_space(*ctx, *dec.value, 2);
  const auto m3 = m_space(*ctx, *dec.value, 3);
  EXPECT_FALSE(m2.is_zero());
  EXPECT_TRUE(m3.is_subspace_of(m2));
  EXPECT_TRUE(m3.is_zero());
}

TEST(Permutations, Basics) {
  EXPECT_EQ(to_string(identity_permutation(3)), "()");
  const auto c = descending_cycle(3, 3);
  EXPECT_EQ(compose(identity_permutation(3), c), c);
  EXPECT_EQ(compose(compose(c, c), c), identity_permutation(3));
  EXPECT_EQ(compose(descending_cycle(2, 2), descending_cycle(2, 2)), identity_permutation(2));
}

TEST(Permutations, SymmetrizerSizes) {
  EXPECT_EQ(sym_action(2).terms.size(), 2u);
  EXPECT_EQ(sym_action(3).terms.size(), 4u);
  for (unsigned n = 2; n <= 6; ++n) {
    EXPECT_EQ(sym_action(n).coefficient_sum(), 1ll << (n - 1)) << n;
    EXPECT_EQ(sym_action(n).terms.size(), 1u << (n - 1)) << n;
  }
  EXPECT_EQ((SymPermSum::identity(3) * sym_action(3)).to_string(), sym_action(3).to_string());
}

std::size_t congruence_failures(const AlgebraContext<PrimeField>& ctx, const Q8Decomposition& dec, unsigned n,
                                long long k) {
  const auto p = std::span<const Elem>(dec.p_part);
  const auto aug = augmentation_power(ctx, p, n + 1);
  const auto x = sym_action(n);
  std::size_t failures = 0;
  std::vector<Elem> hs(n);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    for (unsigned j = 0; j < n; ++j) hs[j] = dec.p_part[idx[j]];
    for (Elem a : dec.q8e_noncentral) {
      const auto lhs = apply_sym_action(ctx, x, std::span<const Elem>(hs), a, dec.c);
      auto rhs = ctx.basis(a);
      rhs[ctx.group().mul(dec.c, a)] = ctx.field().sub(rhs[ctx.group().mul(dec.c, a)], 1);
      for (unsigned j = n; j-- > 0;) {
        auto d = ctx.basis(hs[j]);
        d[0] = ctx.field().sub(d[0], 1);
        rhs = ctx.multiply(d, rhs);
      }
      failures += !aug.contains(ctx.sub(lhs, ctx.scale(ctx.field().from_int(k), rhs)));
    }
    unsigned j = 0;
    while (j < n && ++idx[j] == dec.p_part.size()) idx[j++] = 0;
    if (j == n) break;
  }
  return failures;
}

TEST(Congruence, ConstantIsTwoToTheTwoNMinusOne) {
  auto ctx = catalog_context("q8ext-c9");
  const auto dec = decompose_q8_structure(ctx->orientation(), 3);
  ASSERT_TRUE(dec);
  EXPECT_EQ(congruence_failures(*ctx, *dec.value, 2, 8), 0u);
  EXPECT_GT(congruence_failures(*ctx, *dec.value, 2, 16), 0u);
}

}  // namespace
