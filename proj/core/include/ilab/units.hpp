#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilab/algebra.hpp"
#include "ilab/lie.hpp"

namespace ilab {

/// A unit together with its inverse, so commutators never re-invert.
template <Field F>
struct Unit {
  Vector<F> value;
  Vector<F> inverse;
};

template <Field F>
std::optional<Unit<F>> make_unit(const AlgebraContext<F>& ctx, const Vector<F>& a) {
  auto r = invert(ctx, a);
  if (!r.inverse) return std::nullopt;
  return Unit<F>{a, std::move(*r.inverse)};
}

/// (u, v) = u^-1 v^-1 u v, checked against 1 + u^-1 v^-1 [u, v] on every call.
/// The inverse of the result is v^-1 u^-1 v u.
template <Field F>
Unit<F> unit_commutator(const AlgebraContext<F>& ctx, const Unit<F>& u, const Unit<F>& v) {
  const auto uv_inv = ctx.multiply(u.inverse, v.inverse);
  const auto value = ctx.multiply(uv_inv, ctx.multiply(u.value, v.value));
  const auto check = ctx.add(ctx.one(), ctx.multiply(uv_inv, ctx.bracket(u.value, v.value)));
  if (value != check) throw std::logic_error("unit_commutator: (u,v) != 1 + u^-1 v^-1 [u,v]");
  auto inverse = ctx.multiply(ctx.multiply(v.inverse, u.inverse), ctx.multiply(v.value, u.value));
  return {value, std::move(inverse)};
}

template <Field F>
Vector<F> unit_commutator(const AlgebraContext<F>& ctx, const Vector<F>& u, const Vector<F>& v) {
  auto uu = make_unit(ctx, u);
  auto vv = make_unit(ctx, v);
  if (!uu || !vv) throw std::invalid_argument("unit_commutator: argument is not a unit");
  return unit_commutator(ctx, *uu, *vv).value;
}

/// Left-normed (u_1, ..., u_n).
template <Field F>
Unit<F> iterated_commutator(const AlgebraContext<F>& ctx, std::span<const Unit<F>> us) {
  if (us.empty()) throw std::invalid_argument("iterated_commutator: empty tuple");
  Unit<F> c = us.front();
  for (std::size_t k = 1; k < us.size(); ++k) c = unit_commutator(ctx, c, us[k]);
  return c;
}

/// Left-normed [x_1, ..., x_n].
template <Field F>
Vector<F> iterated_bracket(const AlgebraContext<F>& ctx, std::span<const Vector<F>> xs) {
  if (xs.empty()) throw std::invalid_argument("iterated_bracket: empty tuple");
  Vector<F> b = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) b = ctx.bracket(b, xs[k]);
  return b;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration (prime fields only)

/// Every unit of the subspace V, scanning all p^dim(V) elements in a fixed order.
template <Field F>
std::vector<Unit<F>> enumerate_units_in(const AlgebraContext<F>& ctx, const Subspace<F>& v,
                                        std::uint64_t cap) {
  const unsigned p = ctx.field().characteristic();
  if (p == 0) throw std::invalid_argument("unit enumeration needs a finite field");
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < v.dim(); ++k) {
    total *= p;
    if (total > cap)
      throw CapExceeded(fmt::format("{}^{} elements exceed the enumeration cap {}", p, v.dim(), cap));
  }
  std::vector<Unit<F>> units;
  std::vector<unsigned> digits(v.dim(), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    auto x = ctx.zero();
    for (std::size_t k = 0; k < v.dim(); ++k)
      ctx.field().axpy(std::span<typename F::value_type>(x), ctx.field().from_int(digits[k]),
                       std::span<const typename F::value_type>(v.basis()[k]));
    if (auto u = make_unit(ctx, x)) units.push_back(std::move(*u));
    for (std::size_t k = 0; k < digits.size(); ++k) {
      if (++digits[k] < p) break;
      digits[k] = 0;
    }
  }
  return units;
}

/// The symmetric units U^+(FG), exhaustively.
template <Field F>
std::vector<Unit<F>> enumerate_symmetric_units(const AlgebraContext<F>& ctx, std::uint64_t cap = 531441) {
  return enumerate_units_in(ctx, symmetric_subspace(ctx), cap);
}

/// Nilpotency class of a set H of units by breadth-first closure:
/// gamma_1 = H, gamma_(n+1) = <(a, h) : a in gamma_n, h in H>, each term
/// enumerated in full. cl is the least n with gamma_(n+1) = {1}; throws
/// CapExceeded if a term grows beyond `cap` elements, and returns nullopt if a
/// term repeats without reaching {1}.
template <Field F>
std::optional<std::size_t> subset_class_exhaustive(const AlgebraContext<F>& ctx, std::span<const Unit<F>> h,
                                                   std::size_t cap) {
  const Vector<F> one = ctx.one();
  auto trivial = [&](const std::map<Vector<F>, Vector<F>>& s) {
    return s.empty() || (s.size() == 1 && s.begin()->first == one);
  };
  std::map<Vector<F>, Vector<F>> cur;
  for (const auto& u : h) cur.emplace(u.value, u.inverse);
  std::vector<std::map<Vector<F>, Vector<F>>> seen;
  for (std::size_t n = 0;; ++n) {
    if (trivial(cur)) return n;
    if (n > 0) seen.push_back(cur);
    // generators of gamma_(n+2)
    std::map<Vector<F>, Vector<F>> gens;
    for (const auto& [a, a_inv] : cur)
      for (const auto& u : h) {
        Unit<F> c = unit_commutator(ctx, Unit<F>{a, a_inv}, u);
        if (c.value != one) gens.emplace(std::move(c.value), std::move(c.inverse));
      }
    // subgroup closure
    std::map<Vector<F>, Vector<F>> group{{one, one}};
    std::vector<std::pair<Vector<F>, Vector<F>>> frontier{{one, one}};
    while (!frontier.empty()) {
      std::vector<std::pair<Vector<F>, Vector<F>>> next;
      for (const auto& [e, e_inv] : frontier)
        for (const auto& [s, s_inv] : gens) {
          auto prod = ctx.multiply(e, s);
          if (group.count(prod)) continue;
          auto prod_inv = ctx.multiply(s_inv, e_inv);
          group.emplace(prod, prod_inv);
          next.emplace_back(std::move(prod), std::move(prod_inv));
          if (group.size() > cap)
            throw CapExceeded(fmt::format("commutator subgroup exceeds {} elements", cap));
        }
      frontier = std::move(next);
    }
    if (std::find(seen.begin(), seen.end(), group) != seen.end()) return std::nullopt;
    cur = std::move(group);
  }
}

// ---------------------------------------------------------------------------
// Witness bounds

enum class ClassMethod { witness, exhaustive };

std::string_view to_string(ClassMethod m);

template <Field F>
struct WitnessTuple {
  std::vector<Vector<F>> x_list;
  std::vector<Vector<F>> u_list;
  std::vector<std::pair<Elem, Elem>> shape;  // (a_i, h_i)
  Vector<F> commutator;                      // (u_1, ..., u_n)
  Vector<F> bracket;                         // [x_1, ..., x_n]
  bool congruence_holds = false;             // (u..) - 1 - [x..] in FG Delta(P)^(n+1)
};

template <Field F>
struct UnitSubsetReport {
  std::size_t lower_bound = 0;
  /// The best certified upper bound: the smaller of the two below.
  std::size_t upper_bound = 0;
  std::size_t strong_upper_bound = 0;               // t^L - 1
  std::optional<std::size_t> seeded_upper_bound;    // (vanishing index of the seeded chain) - 1
  bool exact = false;
  ClassMethod method = ClassMethod::witness;
  std::optional<WitnessTuple<F>> witness;
  std::size_t nodes_visited = 0;
  std::string note;
};

struct WitnessOptions {
  std::uint64_t seed = 0;
  std::size_t budget = 20000;  // search nodes
};

/// Candidate x = a(h + a^2 h^-1) with the matching unit u = 1 - a(1 + a^2) + x.
template <Field F>
struct WitnessCandidate {
  Elem a = 0;
  Elem h = 0;
  Vector<F> x;
  Unit<F> u;
};

template <Field F>
std::vector<WitnessCandidate<F>> witness_candidates(const AlgebraContext<F>& ctx, const Q8Decomposition& dec) {
  const FiniteGroup& g = ctx.group();
  const F& f = ctx.field();
  std::vector<Elem> as = dec.q8e_noncentral;
  for (Elem a : dec.q8_times_e)
    if (!contains(dec.q8e_noncentral, a)) as.push_back(a);
  std::vector<WitnessCandidate<F>> out;
  for (Elem a : as)
    for (Elem h : dec.p_part) {
      if (h == g.identity()) continue;
      const Elem a2 = g.mul(a, a);
      if (g.mul(a2, h) == g.identity()) continue;
      WitnessCandidate<F> c;
      c.a = a;
      c.h = h;
      c.x = ctx.zero();
      c.x[g.mul(a, h)] = f.add(c.x[g.mul(a, h)], f.one());
      const Elem tail = g.mul(g.mul(a, a2), g.inv(h));
      c.x[tail] = f.add(c.x[tail], f.one());
      auto u = ctx.add(ctx.one(), c.x);
      u[a] = f.sub(u[a], f.one());
      const Elem a3 = g.mul(a, a2);
      u[a3] = f.sub(u[a3], f.one());
      auto unit = make_unit(ctx, u);
      if (!unit) throw std::logic_error("witness unit is not invertible");
      c.u = std::move(*unit);
      out.push_back(std::move(c));
    }
  return out;
}

/// Bounds on cl(U^+(FG)). Upper: t^L - 1, and the seeded-chain index minus one
/// when `t_seeded` is given. Lower: the length n of a tuple with
/// (u_1, ..., u_n) != 1, found by a seeded depth-first search over the
/// candidates. `t_strong` is the vanishing index of the strong Lie chain.
template <Field F>
UnitSubsetReport<F> witness_class_bounds(const AlgebraContext<F>& ctx, const Q8Decomposition& dec,
                                         std::size_t t_strong, std::optional<std::size_t> t_seeded = {},
                                         WitnessOptions options = {}) {
  if (t_strong < 2) throw std::invalid_argument("witness_class_bounds: t^L is at least 2");
  UnitSubsetReport<F> rep;
  rep.method = ClassMethod::witness;
  rep.strong_upper_bound = t_strong - 1;
  rep.upper_bound = rep.strong_upper_bound;
  if (t_seeded) {
    if (*t_seeded < 2) throw std::invalid_argument("witness_class_bounds: seeded index is at least 2");
    rep.seeded_upper_bound = *t_seeded - 1;
    rep.upper_bound = std::min(rep.upper_bound, *rep.seeded_upper_bound);
  }
  rep.lower_bound = 1;  // -1 is a symmetric unit different from 1
  rep.note = "lower bound 1 from the symmetric unit -1";

  auto cands = witness_candidates(ctx, dec);
  std::mt19937_64 rng(options.seed);
  std::shuffle(cands.begin(), cands.end(), rng);
  std::stable_partition(cands.begin(), cands.end(),
                        [&](const WitnessCandidate<F>& c) { return contains(dec.q8e_noncentral, c.a); });
  const std::size_t target = rep.upper_bound;
  const auto powers = augmentation_powers(ctx, dec.p_part, target + 2);
  auto aug_power = [&](std::size_t n) {
    return n <= powers.size() ? powers[n - 1] : Subspace<F>::zero(ctx.field(), ctx.dim());
  };

  std::vector<std::size_t> path, best_path;
  std::vector<Unit<F>> comms;
  std::vector<Vector<F>> brackets;
  std::size_t best = 0;
  std::size_t nodes = 0;
  const Vector<F> one = ctx.one();

  auto dfs = [&](auto&& self) -> bool {
    if (path.size() > best) {
      best = path.size();
      best_path = path;
    }
    if (path.size() >= target) return true;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      if (nodes >= options.budget) return false;
      ++nodes;
      Unit<F> c = path.empty() ? cands[k].u : unit_commutator(ctx, comms.back(), cands[k].u);
      if (c.value == one) continue;
      Vector<F> b = path.empty() ? cands[k].x : ctx.bracket(brackets.back(), cands[k].x);
      path.push_back(k);
      comms.push_back(std::move(c));
      brackets.push_back(std::move(b));
      if (self(self)) return true;
      path.pop_back();
      comms.pop_back();
      brackets.pop_back();
    }
    return false;
  };
  if (!cands.empty() && target >= 1) dfs(dfs);
  rep.nodes_visited = nodes;

  if (best >= 1 && best >= rep.lower_bound) {
    WitnessTuple<F> w;
    std::vector<Unit<F>> us;
    for (std::size_t k : best_path) {
      w.x_list.push_back(cands[k].x);
      w.u_list.push_back(cands[k].u.value);
      w.shape.emplace_back(cands[k].a, cands[k].h);
      us.push_back(cands[k].u);
    }
    w.commutator = iterated_commutator(ctx, std::span<const Unit<F>>(us)).value;
    w.bracket = iterated_bracket(ctx, std::span<const Vector<F>>(w.x_list));
    const auto diff = ctx.sub(ctx.sub(w.commutator, one), w.bracket);
    w.congruence_holds = aug_power(best + 1).contains(diff);
    rep.lower_bound = best;
    rep.witness = std::move(w);
    rep.note = fmt::format("witness tuple of length {}", best);
  }
  rep.exact = rep.lower_bound == rep.upper_bound;
  if (!rep.exact)
    rep.note += fmt::format("; bounds {}..{} do not meet, class unresolved", rep.lower_bound, rep.upper_bound);
  return rep;
}

}  // namespace ilab
