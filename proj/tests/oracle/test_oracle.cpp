#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "../unit/support.hpp"
#include "contexts.hpp"
#include "ilab/units.hpp"

namespace {

using naive::Algebra;
using naive::Group;
using naive::Key;

// ---------------------------------------------------------------------------
// The oracle against hand-checkable facts

TEST(Oracle, QuaternionRelations) {
  const Group q = naive::close(naive::quaternion());
  ASSERT_EQ(q.n, 8);
  const int x = q.gens[0], y = q.gens[1];
  const int x2 = q.mul(x, x);
  EXPECT_EQ(q.mul(x2, x2), 0);
  EXPECT_EQ(x2, q.mul(y, y));
  EXPECT_EQ(q.mul(q.mul(q.inverse[y], x), y), q.inverse[x]);
}

TEST(Oracle, GroupOrders) {
  EXPECT_EQ(naive::close(naive::quaternion_ext()).n, 16);
  EXPECT_EQ(naive::close(naive::heisenberg3()).n, 27);
  EXPECT_EQ(naive::close(naive::metacyclic27()).n, 27);
  EXPECT_EQ(naive::close(naive::wreath3()).n, 81);
}

TEST(Oracle, CubeOfAugmentationInF3C3) {
  const Group c = naive::close(naive::cyclic(3));
  const Algebra A{&c, 3};
  const auto d = A.sub(A.elem(0), A.elem(c.gens[0]));
  EXPECT_EQ(A.mul(A.mul(d, d), d), A.zero());
  EXPECT_NE(A.mul(d, d), A.zero());
}

TEST(Oracle, UnitsOfF3C3) {
  const Group c = naive::close(naive::cyclic(3));
  const Algebra A{&c, 3};
  std::vector<std::vector<int>> basis;
  for (int a = 0; a < 3; ++a) basis.push_back(A.elem(a));
  int units = 0;
  for (const auto& v : naive::all_elements(A, basis)) units += naive::inverse(A, v).has_value();
  EXPECT_EQ(units, 18);

  const auto sym = naive::symmetric_span(A);
  EXPECT_EQ(sym.dim(), 2);
  int sym_units = 0;
  for (const auto& v : naive::all_elements(A, sym.vectors())) sym_units += naive::inverse(A, v).has_value();
  EXPECT_EQ(sym_units, 6);
}

TEST(Oracle, SymmetricUnitsOfF3Q8) {
  const Group q = naive::close(naive::quaternion());
  const Algebra A{&q, 3};
  const auto sym = naive::symmetric_span(A);
  ASSERT_EQ(sym.dim(), 5);
  const auto elements = naive::all_elements(A, sym.vectors());
  EXPECT_EQ(elements.size(), 243u);
  std::vector<std::vector<int>> units;
  for (const auto& v : elements)
    if (naive::inverse(A, v)) units.push_back(v);
  EXPECT_EQ(naive::unit_class(A, units, 1u << 16), 1);
}

TEST(Oracle, AugmentationNilpotency) {
  auto tnil = [](naive::Factor f) {
    const Group g = naive::close(f);
    return naive::augmentation_nilpotency(Algebra{&g, 3});
  };
  EXPECT_EQ(tnil(naive::cyclic(3)), 3);
  EXPECT_EQ(tnil(naive::cyclic(9)), 9);
  EXPECT_EQ(tnil(naive::product({naive::cyclic(3), naive::cyclic(3)})), 5);
  const Group c = naive::close(naive::cyclic(3));
  const Algebra A{&c, 3};
  std::vector<int> all{0, 1, 2};
  EXPECT_EQ(naive::left_aug_power(A, all, 2).dim(), 1);
}

// ---------------------------------------------------------------------------
// Frozen fixtures

nlohmann::json read_fixtures() {
  std::ifstream in(ILAB_FIXTURES_FILE);
  std::stringstream ss;
  ss << in.rdbuf();
  return nlohmann::json::parse(ss.str());
}

TEST(Fixtures, FileMatchesOracle) {
  const auto file = read_fixtures().at("contexts");
  const auto contexts = naive::oracle_contexts();
  EXPECT_EQ(file.size(), contexts.size());
  for (const auto& c : contexts) {
    SCOPED_TRACE(c.label);
    ASSERT_TRUE(file.contains(c.label));
    const auto& entry = file.at(c.label);
    const auto v = naive::evaluate(c);
    auto same = [&](const char* key, const std::optional<int>& x) {
      if (x)
        EXPECT_EQ(entry.at(key).get<int>(), *x) << key;
      else
        EXPECT_FALSE(entry.contains(key)) << key;
    };
    same("t", v.t);
    same("t_upper", v.t_upper);
    same("t_nil", v.t_nil);
    same("t_upper_fg", v.t_upper_fg);
  }
}

TEST(Fixtures, LibraryMatchesFrozenValues) {
  using namespace ilab;
  for (const auto& [label, entry] : read_fixtures().at("contexts").items()) {
    SCOPED_TRACE(label);
    const std::string name = label.substr(0, label.find('@'));
    const auto ctx = testing_support::catalog_context(name);
    const auto gens = symmetric_generators(*ctx);
    const auto plus = std::span<const Vector<PrimeField>>(gens.plus_part);
    if (entry.contains("t")) {
      const auto r = lower_lie_series(*ctx, plus, 64).report;
      ASSERT_TRUE(r.vanished());
      EXPECT_EQ(r.index, entry.at("t").get<std::size_t>());
    }
    if (entry.contains("t_upper")) {
      const auto r = strong_lie_series(*ctx, plus, 64).report;
      ASSERT_TRUE(r.vanished());
      EXPECT_EQ(r.index, entry.at("t_upper").get<std::size_t>());
    }
    if (entry.contains("t_upper_fg")) {
      std::vector<Vector<PrimeField>> basis;
      for (Elem g = 0; g < ctx->dim(); ++g) basis.push_back(ctx->basis(g));
      const auto r = strong_lie_series(*ctx, std::span<const Vector<PrimeField>>(basis), 64).report;
      ASSERT_TRUE(r.vanished());
      EXPECT_EQ(r.index, entry.at("t_upper_fg").get<std::size_t>());
    }
    if (entry.contains("t_nil")) {
      const auto p = sylow_subgroup(ctx->group(), ctx->field().characteristic());
      const auto sub = subgroup_as_group(ctx->group(), p);
      const auto pg = std::make_shared<const FiniteGroup>(sub.group);
      EXPECT_EQ(t_nil(ctx->field(), pg), entry.at("t_nil").get<std::size_t>());
    }
  }
}

// ---------------------------------------------------------------------------
// Independent confirmation of two computed discrepancies

struct Q8TimesP {
  Group g;
  int c;
  std::vector<int> p_part;
  std::vector<int> noncentral;
};

Q8TimesP q8ext_times_cyclic(int n) {
  Q8TimesP out{naive::close(naive::product({naive::quaternion_ext(), naive::cyclic(n)})), 0, {}, {}};
  out.c = out.g.index_of(Key{1, 0, 0, 0});
  for (int k = 0; k < n; ++k) out.p_part.push_back(out.g.index_of(Key{0, 0, 0, k}));
  for (int s = 0; s < 2; ++s)
    for (int u = 1; u < 4; ++u) out.noncentral.push_back(out.g.index_of(Key{s, u, 0, 0}));
  return out;
}

TEST(Oracle, SecondStrongTermNotInsideAugmentationSquare) {
  const auto q = q8ext_times_cyclic(3);
  const Algebra A{&q.g, 3};
  const auto chain = naive::strong_chain(A, naive::symmetric_span(A));
  ASSERT_EQ(chain.size(), 4u);  // S^(4) = 0 while Delta(P)^3 = 0
  const auto aug2 = naive::left_aug_power(A, q.p_part, 2);
  bool inside = true;
  for (const auto& v : chain[1].vectors()) inside = inside && aug2.contains(v);
  EXPECT_FALSE(inside);
  const auto aug1 = naive::left_aug_power(A, q.p_part, 1);
  for (const auto& v : chain[2].vectors()) EXPECT_TRUE(aug1.contains(v));
}

/// Counts generators (h_1..h_n, a) for which
/// x_(n,n) f (1-c)a - k (h_1-1)...(h_n-1)(1-c)a is outside FG Delta(P)^(n+1).
int xnn_failures(const Q8TimesP& q, int p, int n, int k) {
  const Algebra A{&q.g, p};
  const std::vector<std::vector<int>> perms =
      n == 2 ? std::vector<std::vector<int>>{{0, 1}, {1, 0}}
             : std::vector<std::vector<int>>{{0, 1, 2}, {1, 0, 2}, {2, 0, 1}, {0, 2, 1}};
  const auto aug = naive::left_aug_power(A, q.p_part, n + 1);
  int failures = 0;
  std::vector<int> idx(n, 0);
  const int np = static_cast<int>(q.p_part.size());
  while (true) {
    for (int a : q.noncentral) {
      auto tail = A.sub(A.elem(a), A.elem(q.g.mul(q.c, a)));  // (1 - c)a
      auto lhs = A.zero();
      for (const auto& s : perms) {
        auto prod = A.elem(0);
        for (int j = 0; j < n; ++j) {
          const int h = q.p_part[idx[s[j]]];
          prod = A.mul(prod, A.sub(A.elem(h), A.elem(q.g.inverse[h])));
        }
        lhs = A.add(lhs, A.mul(prod, tail));
      }
      auto rhs = A.elem(0);
      for (int j = 0; j < n; ++j) rhs = A.mul(rhs, A.sub(A.elem(q.p_part[idx[j]]), A.elem(0)));
      rhs = A.scale(k, A.mul(rhs, tail));
      failures += !aug.contains(A.sub(lhs, rhs));
    }
    int j = 0;
    while (j < n && ++idx[j] == np) idx[j++] = 0;
    if (j == n) break;
  }
  return failures;
}

TEST(Oracle, XnnCongruenceConstant) {
  const auto q = q8ext_times_cyclic(9);
  EXPECT_EQ(xnn_failures(q, 3, 2, 8), 0);
  EXPECT_EQ(xnn_failures(q, 3, 3, 32), 0);
  EXPECT_EQ(xnn_failures(q, 3, 2, 16) + xnn_failures(q, 3, 3, 64), 1512);
}

}  // namespace
