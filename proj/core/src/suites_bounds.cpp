#include <numeric>

#include "suite_env.hpp"

namespace ilab::suite {

namespace {

unsigned log_p(std::size_t n, unsigned p) {
  unsigned m = 0;
  while (n > 1) {
    n /= p;
    ++m;
  }
  return m;
}

std::string no_decomposition(const DecompositionResult& dec) {
  return fmt::format("{}{}", to_string(dec.failure), dec.detail.empty() ? "" : ": " + dec.detail);
}

template <Field F>
Vector<F> one_minus(const AlgebraContext<F>& ctx, Elem c) {
  auto v = ctx.one();
  v[c] = ctx.field().sub(v[c], ctx.field().one());
  return v;
}

/// h - h^-1
template <Field F>
Vector<F> difference(const AlgebraContext<F>& ctx, Elem h) {
  auto v = ctx.basis(h);
  const Elem hi = ctx.group().inv(h);
  v[hi] = ctx.field().sub(v[hi], ctx.field().one());
  return v;
}

/// u + s * v^-1 ... as the two-term element x + y
template <Field F>
Vector<F> two_terms(const AlgebraContext<F>& ctx, Elem x, long long sx, Elem y, long long sy) {
  auto v = ctx.zero();
  v[x] = ctx.field().add(v[x], ctx.field().from_int(sx));
  v[y] = ctx.field().add(v[y], ctx.field().from_int(sy));
  return v;
}

/// Iterates over all n-tuples of `pool` in lexicographic order.
template <class Fn>
void for_tuples(const std::vector<Elem>& pool, std::size_t n, Fn&& fn) {
  std::vector<std::size_t> idx(n, 0);
  std::vector<Elem> t(n);
  while (true) {
    for (std::size_t k = 0; k < n; ++k) t[k] = pool[idx[k]];
    fn(t);
    std::size_t k = 0;
    while (k < n && ++idx[k] == pool.size()) idx[k++] = 0;
    if (k == n) return;
  }
}

}  // namespace

template <Field F>
void bounds_q8(Env<F>& env, Recorder& rec, std::vector<IndexRow>& rows) {
  const auto& dec = env.dec();
  if (!dec || env.p() == 0 || dec.value->p_part.size() < 2) {
    rec.run("hypothesis", "index-bounds", "statement", [&] {
      return unresolved("decomposition with a nontrivial Sylow p-subgroup", dec ? "P = 1 or characteristic 0" : no_decomposition(dec),
                        "the theorem does not apply to this context");
    });
    return;
  }
  const unsigned p = env.p();
  const unsigned m = log_p(dec.value->p_part.size(), p);
  const std::size_t tn = env.tnil();
  const auto& lower = env.lower().report;
  const auto& strong = env.strong().report;
  const auto& seeded = env.seeded().report;
  const bool powerful = is_powerful(*env.p_group(), p);
  const std::size_t t = lower.vanished() ? lower.index : 0;
  const std::size_t tl = strong.vanished() ? strong.index : 0;
  const std::string vals = fmt::format("t = {}, t^L = {}, t_nil = {}", t, tl, tn);

  rec.run("t-lower-bound", "index-bounds", "statement", [&] {
    settled(lower);
    return judge(lower.vanished() && 1 + m * (p - 1) <= t, fmt::format("1 + m(p-1) = {} <= t", 1 + m * (p - 1)),
                 describe(lower));
  });
  rec.run("t-le-tL", "index-bounds", "axiom", [&] {
    settled(lower, strong);
    return judge(lower.vanished() && strong.vanished() && t <= tl, "t <= t^L", vals);
  });
  rec.run("tL-le-tnil", "index-bounds", "statement", [&] {
    settled(strong);
    return judge(strong.vanished() && tl <= tn, fmt::format("t^L <= t_nil(P) = {}", tn), fmt::format("t^L = {}", tl),
                 fmt::format("strong chain dims {}", join(strong.dims)));
  });
  rec.run("t-le-seeded-le-tnil", "index-bounds", "axiom", [&] {
    settled(lower, seeded);
    return judge(seeded.vanished() && t <= seeded.index && seeded.index <= tn, "t <= seeded index <= t_nil(P)",
                 fmt::format("t = {}, seeded = {}, t_nil = {}", t, seeded.index, tn), describe(seeded));
  });
  if (powerful)
    rec.run("powerful-t-eq-tnil", "powerful-index", "statement", [&] {
      settled(lower);
      return judge(t == tn, fmt::format("P powerful: t = t_nil(P) = {}", tn), fmt::format("t = {}", t));
    });
  if (const auto* fx = env.fixture()) {
    auto pin = [&](const char* name, const std::optional<std::size_t>& want, std::size_t got, const SeriesReport* src) {
      if (want)
        rec.run(name, "index-values", "oracle", [&] {
          if (src) settled(*src);
          return judge(*want == got, std::to_string(*want), std::to_string(got));
        });
    };
    pin("t-fixture", fx->t, t, &lower);
    pin("tL-fixture", fx->t_upper, tl, &strong);
    pin("tnil-fixture", fx->t_nil, tn, nullptr);
  }

  std::optional<UnitSubsetReport<F>> rep;
  rec.run("cl-bounds", "unit-class", "statement", [&]() -> Outcome {
    settled(strong);
    if (!strong.vanished()) return judge(false, "t^L finite", describe(strong));
    WitnessOptions opts{env.config().seed, env.config().witness_budget};
    rep = witness_class_bounds(env.ctx(), *dec.value, tl,
                               seeded.vanished() ? std::optional<std::size_t>(seeded.index) : std::nullopt, opts);
    const std::string computed = fmt::format("{} <= cl <= {}", rep->lower_bound, rep->upper_bound);
    return judge(rep->upper_bound <= tn - 1, fmt::format("cl(U^+) <= t_nil(P) - 1 = {}", tn - 1), computed, rep->note);
  });
  if (rep) {
    if (t == tn)
      rec.run("cl-plus-one-eq-t", "unit-class-exact", "statement", [&]() -> Outcome {
        const std::string computed = fmt::format("{} <= cl <= {} ({} nodes)", rep->lower_bound, rep->upper_bound,
                                                 rep->nodes_visited);
        const std::string expected = fmt::format("cl(U^+) + 1 = t = {}", t);
        if (!rep->exact) return unresolved(expected, computed, rep->note);
        return judge(rep->lower_bound + 1 == t, expected, computed,
                     rep->seeded_upper_bound && rep->upper_bound == *rep->seeded_upper_bound
                         ? "witness lower bound meets the seeded-chain upper bound"
                         : "witness lower bound meets t^L - 1");
      });
    rec.run("cl-certified-by-tL", "unit-class-exact", "statement", [&] {
      return judge(rep->lower_bound == rep->strong_upper_bound,
                   fmt::format("witness lower bound meets t^L - 1 = {}", rep->strong_upper_bound),
                   fmt::format("lower bound {}", rep->lower_bound),
                   "t^L - 1 bounds cl from above but is not attained here");
    });
    if (rep->witness) {
      rec.run("witness-congruence", "witness-congruence", "statement", [&] {
        return judge(rep->witness->congruence_holds, "(u_1..u_n) - 1 - [x_1..x_n] in FG Delta(P)^(n+1)",
                     rep->witness->congruence_holds ? "member" : "not a member",
                     fmt::format("tuple length {}", rep->witness->x_list.size()));
      });
      rec.run("witness-units", "witness-congruence", "statement", [&] {
        std::size_t bad = 0;
        const auto delta = env.aug_p(1);
        for (const auto& u : rep->witness->u_list) {
          bad += env.ctx().involute(u) != u;
          bad += !delta.contains(env.ctx().sub(u, env.ctx().one()));
          bad += !invert(env.ctx(), u).is_unit();
        }
        return judge(bad == 0, "each u_i symmetric, invertible, in 1 + FG Delta(P)", fmt::format("{} violations", bad));
      });
    }
  }

  IndexRow row;
  row.group = env.spec().name;
  row.p = std::to_string(p);
  row.derived_order = std::to_string(derived_subgroup(env.group()).order);
  row.t = lower.vanished() ? std::to_string(t) : "-";
  row.t_upper = strong.vanished() ? std::to_string(tl) : "-";
  row.t_nil = std::to_string(tn);
  if (rep) row.cl = rep->exact ? std::to_string(rep->lower_bound) : fmt::format("{}..{}", rep->lower_bound, rep->upper_bound);
  else row.cl = "-";
  row.verdict = rep && rep->exact ? "cl exact" : "cl unresolved";
  rows.push_back(std::move(row));
}

template <Field F>
void lemma_suite(Env<F>& env, Recorder& rec, std::vector<IndexRow>&) {
  const auto& ctx = env.ctx();
  const FiniteGroup& g = env.group();
  const F& f = env.field();
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});

  rec.run("power-congruence", "power-congruence", "statement", [&] {
    const auto delta2 = augmentation_power(ctx, all, 2);
    std::size_t checked = 0, bad = 0;
    for (Elem x : all) {
      const long long o = static_cast<long long>(g.element_order(x));
      for (long long e = -o; e <= 2 * o; ++e) {
        auto v = ctx.basis(g.pow(x, e));
        v[0] = f.sub(v[0], f.one());
        auto lin = ctx.basis(x);
        lin[0] = f.sub(lin[0], f.one());
        v = ctx.sub(v, ctx.scale(f.from_int(e), lin));
        ++checked;
        bad += !delta2.contains(v);
      }
    }
    return judge(bad == 0, "g^m - 1 - m(g - 1) in Delta(G)^2", fmt::format("{} of {} pairs fail", bad, checked));
  });

  if (env.p() == 0 || !is_nilpotent(g)) return;
  const unsigned p = env.p();
  const ElementSet sylow = sylow_subgroup(g, p);
  if (sylow.size() < 2) return;
  auto pg = std::make_shared<const FiniteGroup>(subgroup_as_group(g, sylow).group);
  const bool powerful = is_powerful(*pg, p);

  if (powerful) {
    rec.run("commutation-congruence", "powerful-commutation", "statement", [&] {
      AlgebraContext<F> pctx(f, Orientation::trivial(pg));
      std::vector<Elem> pall(pg->order());
      std::iota(pall.begin(), pall.end(), Elem{0});
      const auto powers = augmentation_powers(pctx, pall, pg->order() + 1);
      auto power = [&](std::size_t n) {
        return n <= powers.size() ? powers[n - 1] : Subspace<F>::zero(f, pctx.dim());
      };
      auto minus_one = [&](Elem h) {
        auto v = pctx.basis(h);
        v[0] = f.sub(v[0], f.one());
        return v;
      };
      std::vector<std::size_t> depth(pg->order(), 0);
      for (Elem h = 1; h < pg->order(); ++h)
        while (depth[h] < powers.size() && power(depth[h] + 1).contains(minus_one(h))) ++depth[h];
      std::size_t checked = 0, bad = 0;
      for (Elem hi = 1; hi < pg->order(); ++hi)
        for (Elem hj = 1; hj < pg->order(); ++hj) {
          const auto a = minus_one(hi), b = minus_one(hj);
          const auto diff = pctx.sub(pctx.multiply(a, b), pctx.multiply(b, a));
          ++checked;
          bad += !power(depth[hi] + depth[hj] + 1).contains(diff);
        }
      return judge(bad == 0, "(h_i-1)(h_j-1) = (h_j-1)(h_i-1) mod Delta(P)^(k_i+k_j+1)",
                   fmt::format("{} of {} pairs fail", bad, checked), "k = largest power of Delta(P) containing h - 1");
    });
    rec.run("dimension-subgroups", "powerful-dimension", "statement", [&] {
      const auto chain = dimension_subgroups(f, pg);
      std::size_t bad = 0;
      std::vector<std::size_t> orders;
      for (std::size_t n = 1; n <= chain.subgroups.size(); ++n) {
        unsigned i = 0;
        std::size_t pi = 1;
        while (pi < n) {
          pi *= p;
          ++i;
        }
        bad += chain.subgroups[n - 1] != power_of_exponent(*pg, p, i);
        orders.push_back(chain.subgroups[n - 1].size());
      }
      return judge(bad == 0, "D_n = P^(p^i) for p^(i-1) < n <= p^i", fmt::format("|D_n| = {}", join(orders)),
                   "membership and Jennings recursion agree");
    });
  }

  const auto& dec = env.dec();
  if (!dec) return;
  const Q8Decomposition& d = *dec.value;
  const std::size_t tn = env.tnil();
  const auto& strong = env.strong();
  const auto omc = one_minus(ctx, d.c);

  rec.run("chain-lemma", "chain-lemma", "statement", [&]() -> Outcome {
    // z of order p central in P, as in the induction step
    ElementSet cand;
    for (Elem x : sylow)
      if (g.element_order(x) == p && contains(center(g), x)) cand.push_back(x);
    if (cand.empty()) return judge(false, "z of order p central in G", "none found");
    const Elem z = cand.front();
    const ElementSet zs = subgroup_generated(g, std::vector<Elem>{z});
    const std::size_t i0 = 2 * sylow.size() / p;
    auto q = make_quotient_algebra(ctx, zs, true, ContextLimits{env.config().cap_rational});
    const auto qgens = symmetric_generators(*q.ctx);
    const auto qchain = strong_lie_series(*q.ctx, std::span<const Vector<F>>(qgens.plus_part), env.config().cap_series);
    settled(strong.report, qchain.report);
    if (!strong.report.vanished()) return judge(false, "strong chain vanishes", describe(strong.report));
    auto zm1 = ctx.basis(z);
    zm1[0] = f.sub(zm1[0], f.one());
    const auto zfg = times_subspace(ctx, zm1, Subspace<F>::full(f, ctx.dim()));
    std::vector<std::string> fails;
    if (!(qchain.report.vanished() && qchain.report.index <= i0))
      fails.push_back(fmt::format("quotient chain {}", describe(qchain.report)));
    if (!strong.term(i0).is_subspace_of(zfg)) fails.push_back(fmt::format("S^({}) not in (z-1)FG", i0));
    for (std::size_t j = 1; j + i0 <= strong.terms.size(); ++j)
      if (!strong.term(i0 + j).is_subspace_of(times_subspace(ctx, zm1, strong.term(j))))
        fails.push_back(fmt::format("S^({}) not in (z-1)S^({})", i0 + j, j));
    if (!strong.term(2 * sylow.size()).is_zero()) fails.push_back("S^(2|P|) != 0");
    std::string joined;
    for (const auto& s : fails) joined += (joined.empty() ? "" : "; ") + s;
    return judge(fails.empty(), fmt::format("S^(i0+j) in (z-1)S^(j) with i0 = 2|P|/p = {}, S^(2|P|) = 0", i0),
                 fails.empty() ? "holds" : joined, fmt::format("quotient chain {}", describe(qchain.report)));
  });

  rec.run("aug-containment", "aug-containment", "statement", [&] {
    settled(strong.report);
    std::vector<std::size_t> failing;
    for (std::size_t n = 2; n <= tn; ++n)
      if (!strong.term(n).is_subspace_of(env.aug_p(n))) failing.push_back(n);
    return judge(failing.empty(), fmt::format("S^(n) in FG Delta(P)^n for 2 <= n <= {}", tn),
                 failing.empty() ? "holds" : "fails for n = " + join(failing),
                 fmt::format("strong chain dims {}", join(strong.report.dims)));
  });
  rec.run("aug-containment-shifted", "aug-containment", "axiom", [&] {
    settled(strong.report);
    std::vector<std::size_t> failing;
    for (std::size_t n = 2; n <= tn + 1; ++n)
      if (!strong.term(n).is_subspace_of(env.aug_p(n - 1))) failing.push_back(n);
    return judge(failing.empty(), fmt::format("S^(n) in FG Delta(P)^(n-1) for 2 <= n <= {}", tn + 1),
                 failing.empty() ? "holds" : "fails for n = " + join(failing));
  });
  rec.run("aug-containment-seeded", "aug-containment", "axiom", [&] {
    const auto& seeded = env.seeded();
    settled(seeded.report);
    std::vector<std::size_t> failing;
    for (std::size_t n = 2; n <= tn; ++n)
      if (!seeded.term(n).is_subspace_of(env.aug_p(n))) failing.push_back(n);
    return judge(failing.empty(), fmt::format("T^(n) in FG Delta(P)^n for 2 <= n <= {}", tn),
                 failing.empty() ? "holds" : "fails for n = " + join(failing),
                 fmt::format("seeded chain dims {}", join(seeded.report.dims)));
  });
  rec.run("symmetric-mod-center", "aug-containment", "statement", [&] {
    const auto target = env.aug_p(1).sum(algebra_center(ctx));
    return judge(env.symmetric_space().is_subspace_of(target), "(FG)^+ in FG Delta(P) + center(FG)",
                 fmt::format("dim (FG)^+ = {}, dim target = {}", env.symmetric_space().dim(), target.dim()));
  });

  const auto& lower = env.lower();
  rec.run("xnn-in-gamma", "xnn-gamma", "statement", [&] {
    settled(lower.report);
    std::size_t checked = 0, bad = 0;
    for (unsigned n = 2; n <= 3; ++n) {
      const auto target = subspace_times(ctx, lower.term(n), omc);
      const SymPermSum x = sym_action(n);
      for (Elem a : d.q8e_noncentral)
        for_tuples(d.p_part, n, [&](const std::vector<Elem>& hs) {
          ++checked;
          bad += !target.contains(apply_sym_action(ctx, x, hs, a, d.c));
        });
    }
    return judge(bad == 0, "x_(n,n) M_n in gamma^n((FG)^+)(1 - c), n = 2, 3",
                 fmt::format("{} of {} generators fail", bad, checked));
  });

  rec.run("phat-in-gamma", "phat-gamma", "statement", [&]() -> Outcome {
    settled(lower.report);
    const unsigned m = log_p(sylow.size(), p);
    const std::size_t k = m * (p - 1);
    const auto phat = hat(ctx, d.p_part);
    const Subspace<F> gk = k >= 1 ? lower.term(k) : Subspace<F>::full(f, ctx.dim());
    std::size_t good = 0;
    for (Elem a : d.q8e_noncentral) {
      const auto v = ctx.right_translate(ctx.multiply(phat, omc), a);
      good += !ctx.is_zero(v) && gk.contains(v);
    }
    return judge(good > 0, fmt::format("0 != P^(1-c)a in gamma^{}((FG)^+) for some a", k),
                 fmt::format("{} of {} noncentral a", good, d.q8e_noncentral.size()));
  });

  if (powerful) {
    auto congruence = [&](bool literal) {
      std::size_t checked = 0, bad = 0;
      std::vector<unsigned> bad_n;
      for (unsigned n = 2; n <= 3; ++n) {
        const auto modulus = env.aug_p(n + 1);
        const long long coeff = 1ll << (literal ? 2 * n : 2 * n - 1);
        const SymPermSum x = sym_action(n);
        std::size_t before = bad;
        for (Elem a : d.q8e_noncentral)
          for_tuples(d.p_part, n, [&](const std::vector<Elem>& hs) {
            auto prod = ctx.one();
            for (Elem h : hs) {
              auto v = ctx.basis(h);
              v[0] = f.sub(v[0], f.one());
              prod = ctx.multiply(prod, v);
            }
            const auto rhs = ctx.scale(f.from_int(coeff), ctx.right_translate(ctx.multiply(prod, omc), a));
            ++checked;
            bad += !modulus.contains(ctx.sub(apply_sym_action(ctx, x, hs, a, d.c), rhs));
          });
        if (bad != before) bad_n.push_back(n);
      }
      std::string where;
      for (unsigned n : bad_n) where += (where.empty() ? "n = " : ", ") + std::to_string(n);
      return std::tuple{bad, checked, where};
    };
    rec.run("xnn-congruence-2^2n", "xnn-congruence", "statement", [&] {
      auto [bad, checked, where] = congruence(true);
      return judge(bad == 0, "x_(n,n) f (1-c)a = 2^(2n) (h_1-1)..(h_n-1)(1-c)a mod FG Delta(P)^(n+1)",
                   fmt::format("{} of {} generators fail{}", bad, checked, where.empty() ? "" : " (" + where + ")"),
                   "x_(n,n) has 2^(n-1) terms, so the constant that holds is 2^(2n-1)");
    });
    rec.run("xnn-congruence-2^(2n-1)", "xnn-congruence", "axiom", [&] {
      auto [bad, checked, where] = congruence(false);
      return judge(bad == 0, "x_(n,n) f (1-c)a = 2^(2n-1) (h_1-1)..(h_n-1)(1-c)a mod FG Delta(P)^(n+1)",
                   fmt::format("{} of {} generators fail{}", bad, checked, where.empty() ? "" : " (" + where + ")"));
    });
  }

  if (!pg->is_abelian()) return;

  rec.run("bracket-identities", "bracket-identities", "statement", [&] {
    const Elem c = d.c;
    const Elem gg = d.g;
    auto B = [&](Elem x) { return ctx.basis(x); };
    auto mul = [&](std::initializer_list<Vector<F>> xs) {
      auto r = ctx.one();
      for (const auto& x : xs) r = ctx.multiply(r, x);
      return r;
    };
    auto sym = [&](Elem a, Elem h) {  // a(h + a^2 h^-1)
      return two_terms(ctx, g.mul(a, h), 1, g.mul(g.mul(a, g.mul(a, a)), g.inv(h)), 1);
    };
    auto plus_sq = [&](Elem a, Elem h) {  // h + a^2 h^-1
      return two_terms(ctx, h, 1, g.mul(g.mul(a, a), g.inv(h)), 1);
    };
    auto D = [&](Elem h) { return difference(ctx, h); };
    auto scal = [&](long long s, const Vector<F>& v) { return ctx.scale(f.from_int(s), v); };
    const auto omc2 = ctx.multiply(omc, omc);

    std::vector<Vector<F>> alphas;
    for (Elem h : d.p_part) alphas.push_back(B(h));
    {
      auto r = ctx.zero();
      for (Elem h : d.p_part) r[h] = env.random_scalar();
      alphas.push_back(std::move(r));
    }
    std::map<std::string, std::size_t> bad;
    std::size_t checked = 0;
    auto chain = [&](const char* name, std::initializer_list<Vector<F>> sides) {
      ++checked;
      const auto& first = *sides.begin();
      for (const auto& s : sides)
        if (s != first) {
          ++bad[name];
          return;
        }
    };
    for (Elem a : d.q8e_noncentral)
      for (Elem b : d.q8e_noncentral) {
        if (g.commute(a, b)) continue;
        const auto ab = B(g.mul(a, b));
        const auto br_ab = ctx.bracket(B(a), B(b));
        for (Elem h1 : d.p_part)
          for (Elem h2 : d.p_part) {
            chain("[sym, sym]", {ctx.bracket(sym(a, h1), sym(b, h2)), mul({plus_sq(b, h2), plus_sq(a, h1), br_ab}),
                             mul({D(h2), D(h1), omc, ab})});
            chain("[sym, g-diff]", {ctx.bracket(sym(a, h1), mul({B(g.mul(b, gg)), D(h2)})),
                             mul({D(h2), plus_sq(a, h1), ctx.bracket(B(a), B(g.mul(b, gg)))}),
                             mul({B(gg), D(h2), two_terms(ctx, h1, 1, g.mul(c, g.inv(h1)), 1), omc, ab}),
                             mul({B(gg), D(h2), D(h1), omc, ab})});
            chain("[g-diff, g-diff]", {ctx.bracket(mul({B(g.mul(a, gg)), D(h1)}), mul({B(g.mul(b, gg)), D(h2)})),
                             mul({D(h2), D(h1), ctx.bracket(B(g.mul(a, gg)), B(g.mul(b, gg)))}),
                             mul({D(h2), D(h1), B(g.mul(gg, gg)), omc, ab}), scal(-1, mul({D(h2), D(h1), omc, ab}))});
          }
        for (const auto& al : alphas)
          for (Elem h : d.p_part) {
            const auto alpha_omc_a = mul({al, omc, B(a)});
            chain("[alpha, sym]", {ctx.bracket(alpha_omc_a, sym(b, h)), mul({al, omc, plus_sq(b, h), br_ab}),
                             mul({al, D(h), omc2, ab}), scal(2, mul({al, D(h), omc, ab}))});
            chain("[alpha, g-diff]", {ctx.bracket(alpha_omc_a, mul({B(g.mul(gg, b)), D(h)})),
                             mul({al, D(h), omc, ctx.bracket(B(a), B(g.mul(gg, b)))}),
                             mul({B(gg), al, D(h), omc, br_ab}), mul({B(gg), al, D(h), omc2, ab}),
                             scal(2, mul({B(gg), al, D(h), omc, ab}))});
            chain("[g alpha, g-diff]", {ctx.bracket(mul({B(gg), alpha_omc_a}), mul({B(g.mul(gg, b)), D(h)})),
                             mul({B(g.mul(gg, gg)), al, D(h), omc, br_ab}), mul({B(c), al, D(h), omc, br_ab}),
                             mul({B(c), al, D(h), omc2, ab}), scal(-2, mul({al, D(h), omc, ab}))});
          }
      }
    std::string failing;
    for (const auto& [name, n] : bad) failing += fmt::format("{}{} x{}", failing.empty() ? "" : ", ", name, n);
    return judge(bad.empty(), "bracket identities for symmetric and g-twisted generators hold as element equalities",
                 bad.empty() ? fmt::format("{} chains hold", checked) : "fails: " + failing);
  });

  rec.run("gamma-equals-script-m", "gamma-script-m", "statement", [&] {
    settled(lower.report);
    std::vector<std::string> parts;
    bool ok = true;
    for (std::size_t k = 2; k <= 3; ++k) {
      const auto mk = m_script_space(ctx, d, k);
      const auto gk = lower.term(k);
      ok = ok && mk == gk;
      parts.push_back(fmt::format("k={}: dim gamma {} dim M {}", k, gk.dim(), mk.dim()));
    }
    return judge(ok, "gamma^k((FG)^+) = span M_k, k = 2, 3", parts[0] + "; " + parts[1]);
  });

  rec.run("monotonicity", "subgroup-quotient", "statement", [&]() -> Outcome {
    settled(lower.report);
    if (!lower.report.vanished()) return judge(false, "(FG)^+ Lie nilpotent", describe(lower.report));
    const std::size_t t = lower.report.index;
    std::vector<std::string> parts;
    bool ok = true;
    auto index_of = [&](const AlgebraContext<F>& c) {
      const auto gens = symmetric_generators(c);
      auto r = lower_lie_series(c, std::span<const Vector<F>>(gens.plus_part), env.config().cap_series).report;
      settled(r);
      return r;
    };
    const ContextLimits lim{env.config().cap_rational};
    {
      auto sub = make_subgroup_algebra(ctx, ctx.orientation().kernel(), lim);
      const auto r = index_of(*sub.ctx);
      ok = ok && r.vanished() && r.index <= t;
      parts.push_back(fmt::format("H = N: t = {}", r.vanished() ? std::to_string(r.index) : "-"));
    }
    {
      auto sub = make_subgroup_algebra(ctx, d.q8_times_e, lim);
      const auto r = index_of(*sub.ctx);
      ok = ok && r.vanished() && r.index <= t;
      parts.push_back(fmt::format("H = Q8 x E: t = {}", r.vanished() ? std::to_string(r.index) : "-"));
    }
    {
      auto q = make_quotient_algebra(ctx, d.p_part, true, lim);
      const auto r = index_of(*q.ctx);
      ok = ok && r.vanished() && r.index <= t;
      parts.push_back(fmt::format("G/P: t = {}", r.vanished() ? std::to_string(r.index) : "-"));
    }
    std::string joined;
    for (const auto& s : parts) joined += (joined.empty() ? "" : "; ") + s;
    return judge(ok, fmt::format("t((FH)^+), t((F(G/A))^+) <= t((FG)^+) = {}", t), joined);
  });
}

template <Field F>
void unit_class(Env<F>& env, Recorder& rec, std::vector<IndexRow>& rows) {
  const auto& ctx = env.ctx();
  const auto& strong = env.strong();
  const unsigned p = env.p();
  const std::size_t dim_s = env.symmetric_space().dim();
  std::uint64_t scan = 1;
  bool exhaustive = p != 0;
  for (std::size_t k = 0; exhaustive && k < dim_s; ++k) {
    scan *= p;
    if (scan > env.config().cap_enum) exhaustive = false;
  }
  const std::size_t tl = strong.report.vanished() ? strong.report.index : 0;

  std::optional<std::size_t> cl_exact;
  std::string cl_text = "-";
  bool class_known_infinite = false;
  if (exhaustive) {
    rec.run("cl-exhaustive", "unit-class", "statement", [&]() -> Outcome {
      const auto units = enumerate_symmetric_units(ctx, env.config().cap_enum);
      const auto cl = subset_class_exhaustive(ctx, std::span<const Unit<F>>(units), 1u << 20);
      const std::string counts = fmt::format("{} symmetric elements scanned, {} units", scan, units.size());
      if (!cl) {
        class_known_infinite = true;
        settled(strong.report);
        return judge(!strong.report.vanished(), "U^+ nilpotent iff the strong chain vanishes", "U^+ not nilpotent", counts);
      }
      cl_exact = *cl;
      cl_text = std::to_string(*cl);
      if (strong.report.verdict == Verdict::cap_reached)
        return unresolved("cl(U^+) < t^L", fmt::format("cl = {}", *cl), describe(strong.report));
      if (!strong.report.vanished())
        return judge(true, "class computed", fmt::format("cl = {}", *cl), counts + "; strong chain does not vanish");
      return judge(*cl < tl, fmt::format("cl(U^+) < t^L = {}", tl), fmt::format("cl = {}", *cl), counts);
    });
  }

  const auto& dec = env.dec();
  std::optional<UnitSubsetReport<F>> rep;
  if (dec && strong.report.vanished()) {
    rec.run("cl-witness", "unit-class", "statement", [&]() -> Outcome {
      const auto& seeded = env.seeded().report;
      WitnessOptions opts{env.config().seed, env.config().witness_budget};
      rep = witness_class_bounds(ctx, *dec.value, tl,
                                 seeded.vanished() ? std::optional<std::size_t>(seeded.index) : std::nullopt, opts);
      const std::string computed = fmt::format("{} <= cl <= {}", rep->lower_bound, rep->upper_bound);
      if (!rep->exact) return unresolved("bounds meet", computed, rep->note);
      if (!cl_exact) {
        cl_exact = rep->lower_bound;
        cl_text = std::to_string(rep->lower_bound);
      }
      return judge(true, "bounds meet", computed, rep->note);
    });
    if (rep && exhaustive && cl_text != "-" && cl_exact)
      rec.run("methods-agree", "unit-class", "axiom", [&] {
        const bool ok = rep->lower_bound <= *cl_exact && *cl_exact <= rep->upper_bound;
        return judge(ok, "exhaustive class within the witness bounds",
                     fmt::format("exhaustive {}, witness {}..{}", *cl_exact, rep->lower_bound, rep->upper_bound));
      });
  }
  if (strong.report.vanished() && cl_exact)
    rec.run("class-below-tL", "class-below-tL", "statement", [&] {
      return judge(*cl_exact < tl, fmt::format("cl(U^+) < t^L = {}", tl), fmt::format("cl = {}", *cl_exact));
    });
  if (!strong.report.vanished() && !class_known_infinite && !exhaustive)
    rec.run("cl-unresolved", "unit-class", "statement", [&] {
      return unresolved("a class bound", describe(strong.report), "strong chain does not vanish and no exhaustive scan");
    });

  rec.run("sampled-containment", "units-in-strong-chain", "statement", [&]() -> Outcome {
    const std::size_t want = env.config().unit_samples;
    auto units = env.sample_symmetric_units(want);
    if (units.size() < 3) return unresolved("gamma_n(U) in 1 + S^(n)", "too few units sampled", "");
    settled(strong.report);
    auto term = [&](std::size_t n) { return n <= strong.terms.size() ? strong.terms[n - 1] : strong.term(n); };
    const auto s2 = term(2), s3 = term(3);
    std::size_t bad2 = 0, bad3 = 0;
    for (std::size_t i = 0; i < units.size(); ++i) {
      const auto& u = units[i];
      const auto& v = units[(i + 1) % units.size()];
      const auto& w = units[(i + 2) % units.size()];
      const auto c2 = unit_commutator(ctx, u, v);
      const auto c3 = unit_commutator(ctx, c2, w);
      bad2 += !s2.contains(ctx.sub(c2.value, ctx.one()));
      bad3 += !s3.contains(ctx.sub(c3.value, ctx.one()));
    }
    return judge(bad2 == 0 && bad3 == 0, "(u,v) in 1 + S^(2) and ((u,v),w) in 1 + S^(3)",
                 fmt::format("{} units; {} + {} failures", units.size(), bad2, bad3),
                 units.size() < want ? fmt::format("only {} of {} draws were units", units.size(), want) : "");
  });

  IndexRow row;
  row.group = env.spec().name;
  row.p = std::to_string(p);
  row.derived_order = std::to_string(derived_subgroup(env.group()).order);
  const auto& lower = env.lower().report;
  row.t = lower.vanished() ? std::to_string(lower.index) : "-";
  row.t_upper = strong.report.vanished() ? std::to_string(tl) : "-";
  row.t_nil = dec && p != 0 && dec.value->p_part.size() > 1 ? std::to_string(env.tnil()) : "-";
  if (cl_text == "-" && rep) cl_text = fmt::format("{}..{}", rep->lower_bound, rep->upper_bound);
  row.cl = cl_text;
  row.verdict = class_known_infinite ? "U^+ not nilpotent"
                : cl_exact           ? (exhaustive ? "exhaustive" : "witness, exact")
                                     : "unresolved";
  rows.push_back(std::move(row));
}

template void bounds_q8<PrimeField>(Env<PrimeField>&, Recorder&, std::vector<IndexRow>&);
template void bounds_q8<RationalField>(Env<RationalField>&, Recorder&, std::vector<IndexRow>&);
template void lemma_suite<PrimeField>(Env<PrimeField>&, Recorder&, std::vector<IndexRow>&);
template void lemma_suite<RationalField>(Env<RationalField>&, Recorder&, std::vector<IndexRow>&);
template void unit_class<PrimeField>(Env<PrimeField>&, Recorder&, std::vector<IndexRow>&);
template void unit_class<RationalField>(Env<RationalField>&, Recorder&, std::vector<IndexRow>&);

}  // namespace ilab::suite
