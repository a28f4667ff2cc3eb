#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ilab/algebra.hpp"

namespace ilab {

enum class SeriesKind { lower_lie, strong_lie, aug_power, group_lcs };
enum class Verdict { vanished, stabilized_nonzero, cap_reached };

std::string_view to_string(SeriesKind k);
std::string_view to_string(Verdict v);

/// dims[i] is the dimension (or order, for group series) of term i + 1.
///
/// vanished: `index` is the least n with term n = 0 (or = 1 for groups).
/// stabilized_nonzero: term `index` + 1 equals the earlier term `repeat_of`,
/// so the series is periodic from there on and never reaches zero.
/// cap_reached: `index` is the number of terms computed; nothing is claimed.
struct SeriesReport {
  SeriesKind kind = SeriesKind::lower_lie;
  std::vector<std::size_t> dims;
  Verdict verdict = Verdict::cap_reached;
  std::size_t index = 0;
  std::size_t repeat_of = 0;

  bool vanished() const noexcept { return verdict == Verdict::vanished; }
  std::optional<std::size_t> nilpotency_index() const {
    if (!vanished()) return std::nullopt;
    return index;
  }
};

template <Field F>
struct LieSeries {
  SeriesReport report;
  /// terms[i] is term i + 1; includes the zero term when the series vanished.
  std::vector<Subspace<F>> terms;

  /// Term n (1-based). Past a vanished end this is the zero subspace.
  Subspace<F> term(std::size_t n) const {
    if (n == 0) throw std::out_of_range("series terms are 1-based");
    if (n <= terms.size()) return terms[n - 1];
    if (report.vanished()) return Subspace<F>::zero(terms.back().field(), terms.back().ambient_dim());
    throw std::out_of_range("series term beyond the computed range");
  }
};

namespace detail {

template <Field F>
std::optional<std::size_t> find_repeat(const std::vector<Subspace<F>>& terms, const Subspace<F>& next) {
  for (std::size_t k = terms.size(); k-- > 0;)
    if (terms[k].dim() == next.dim() && terms[k] == next) return k + 1;
  return std::nullopt;
}

}  // namespace detail

/// gamma^1 = S = span(s_gens), gamma^(n+1) = span [gamma^n, S].
///
/// The series need not be nested (for S = (FG)^+ the terms alternate between
/// symmetric and skew elements), so non-vanishing is certified by a term that
/// repeats an earlier one: from then on the series is periodic.
template <Field F>
LieSeries<F> lower_lie_series(const AlgebraContext<F>& ctx, std::span<const Vector<F>> s_gens,
                              std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("series cap must be >= 1");
  LieSeries<F> out;
  out.report.kind = SeriesKind::lower_lie;
  out.terms.push_back(Subspace<F>::span(ctx.field(), ctx.dim(), s_gens));
  out.report.dims.push_back(out.terms.back().dim());
  std::vector<Vector<F>> gens;
  for (const auto& s : s_gens)
    if (!ctx.is_zero(s)) gens.push_back(s);
  while (true) {
    const std::size_t n = out.terms.size();
    if (out.terms.back().is_zero()) {
      out.report.verdict = Verdict::vanished;
      out.report.index = n;
      return out;
    }
    if (n >= cap) {
      out.report.verdict = Verdict::cap_reached;
      out.report.index = n;
      return out;
    }
    SubspaceBuilder<F> b(ctx.field(), ctx.dim());
    for (const auto& u : out.terms.back().basis()) {
      for (const auto& s : gens) {
        b.absorb(ctx.bracket(u, s));
        if (b.full()) break;
      }
      if (b.full()) break;
    }
    Subspace<F> next = b.build();
    if (!next.is_zero()) {
      if (auto k = detail::find_repeat(out.terms, next)) {
        out.report.verdict = Verdict::stabilized_nonzero;
        out.report.index = n;
        out.report.repeat_of = *k;
        return out;
      }
    }
    out.report.dims.push_back(next.dim());
    out.terms.push_back(std::move(next));
  }
}

namespace detail {

template <Field F>
LieSeries<F> strong_chain(const AlgebraContext<F>& ctx, std::span<const Vector<F>> s_gens, std::size_t cap,
                          Subspace<F> first, bool generator_shortcut) {
  if (cap == 0) throw std::invalid_argument("series cap must be >= 1");
  LieSeries<F> out;
  out.report.kind = SeriesKind::strong_lie;
  out.report.dims.push_back(first.dim());
  out.terms.push_back(std::move(first));
  std::vector<Vector<F>> gens;
  for (const auto& s : s_gens)
    if (!ctx.is_zero(s)) gens.push_back(s);
  while (true) {
    const std::size_t n = out.terms.size();
    if (out.terms.back().is_zero()) {
      out.report.verdict = Verdict::vanished;
      out.report.index = n;
      return out;
    }
    if (n >= cap) {
      out.report.verdict = Verdict::cap_reached;
      out.report.index = n;
      return out;
    }
    SubspaceBuilder<F> b(ctx.field(), ctx.dim());
    auto feed = [&](const Vector<F>& u) {
      for (const auto& s : gens) {
        if (b.full()) return;
        const std::size_t before = b.dim();
        if (b.absorb(ctx.bracket(u, s))) close_to_ideal(ctx, b, before);
      }
    };
    if (n == 1 && generator_shortcut && out.terms.front().is_full()) {
      for (Elem x : ctx.generators()) feed(ctx.basis(x));
    } else {
      for (const auto& u : out.terms.back().basis()) feed(u);
    }
    Subspace<F> next = b.build();
    if (!next.is_zero() && next == out.terms.back()) {
      out.report.verdict = Verdict::stabilized_nonzero;
      out.report.index = n;
      out.report.repeat_of = n;
      return out;
    }
    out.report.dims.push_back(next.dim());
    out.terms.push_back(std::move(next));
  }
}

}  // namespace detail

/// S^(1) = FG, S^(i) = ideal generated by [S^(i-1), S].
///
/// With `generator_shortcut` the second term is taken as the ideal generated by
/// [x, s] for x in a generating set of G, which is the same ideal because
/// [xy, s] = x[y, s] + [x, s]y.
template <Field F>
LieSeries<F> strong_lie_series(const AlgebraContext<F>& ctx, std::span<const Vector<F>> s_gens,
                               std::size_t cap, bool generator_shortcut = true) {
  return detail::strong_chain(ctx, s_gens, cap, Subspace<F>::full(ctx.field(), ctx.dim()), generator_shortcut);
}

/// The chain seeded by S itself: T^(1) = span S, T^(i) = ideal generated by
/// [T^(i-1), S]. T^(i) is contained in S^(i), and for units of S the group
/// commutators still satisfy gamma_n(U(S)) in 1 + T^(n) for n >= 2, so its
/// vanishing index also bounds cl(U(S)) from above.
template <Field F>
LieSeries<F> seeded_strong_series(const AlgebraContext<F>& ctx, std::span<const Vector<F>> s_gens,
                                  std::size_t cap) {
  return detail::strong_chain(ctx, s_gens, cap, Subspace<F>::span(ctx.field(), ctx.dim(), s_gens), false);
}

/// Augmentation-power series (FG Delta(A))^n as a SeriesReport.
template <Field F>
LieSeries<F> augmentation_series(const AlgebraContext<F>& ctx, std::span<const Elem> a, std::size_t cap) {
  LieSeries<F> out;
  out.report.kind = SeriesKind::aug_power;
  out.terms = augmentation_powers(ctx, a, cap);
  for (const auto& t : out.terms) out.report.dims.push_back(t.dim());
  if (!out.terms.empty() && out.terms.back().is_zero()) {
    out.report.verdict = Verdict::vanished;
    out.report.index = out.terms.size();
    return out;
  }
  for (std::size_t k = 1; k < out.terms.size(); ++k)
    if (out.terms[k] == out.terms[k - 1]) {
      out.report.verdict = Verdict::stabilized_nonzero;
      out.report.index = k;
      out.report.repeat_of = k;
      out.terms.erase(out.terms.begin() + static_cast<std::ptrdiff_t>(k + 1), out.terms.end());
      out.report.dims.resize(k + 1);
      return out;
    }
  out.report.verdict = Verdict::cap_reached;
  out.report.index = out.terms.size();
  return out;
}

/// Lower central series of a subset H of a group, gamma_1 = H,
/// gamma_(n+1) = <(a, h) : a in gamma_n, h in H>. cl is the least n with
/// gamma_(n+1) = 1; a subset inside {1} has class 0.
SeriesReport group_class_series(const FiniteGroup& g, std::span<const Elem> h, std::size_t cap);

// ---------------------------------------------------------------------------
// p-group invariants

/// Least n with Delta(P)^n = 0 in F P, where F has characteristic p.
template <Field F>
std::size_t t_nil(const F& field, const GroupPtr& p) {
  if (field.characteristic() == 0)
    throw std::invalid_argument("t_nil: Delta(P) is not nilpotent in characteristic 0");
  std::vector<Elem> all(p->order());
  std::iota(all.begin(), all.end(), Elem{0});
  if (!is_p_group(*p, all, field.characteristic()))
    throw std::invalid_argument(
        fmt::format("t_nil: group of order {} is not a {}-group", p->order(), field.characteristic()));
  AlgebraContext<F> ctx(field, Orientation::trivial(p));
  auto powers = augmentation_powers(ctx, all, p->order() + 1);
  if (powers.empty() || !powers.back().is_zero())
    throw std::logic_error("t_nil: augmentation ideal failed to vanish");
  return powers.size();
}

struct DimensionChain {
  /// subgroups[i] = D_(i+1); the last entry is {1}.
  std::vector<ElementSet> subgroups;
};

/// D_n = {g : g - 1 in Delta(P)^n}, cross-checked against the Jennings
/// recursion D_n = <(D_(n-1), P), D_(ceil(n/p))^p>. Throws on disagreement.
template <Field F>
DimensionChain dimension_subgroups(const F& field, const GroupPtr& p) {
  const unsigned q = field.characteristic();
  if (q == 0) throw std::invalid_argument("dimension_subgroups: characteristic must be p");
  std::vector<Elem> all(p->order());
  std::iota(all.begin(), all.end(), Elem{0});
  if (!is_p_group(*p, all, q)) throw std::invalid_argument("dimension_subgroups: not a p-group");
  AlgebraContext<F> ctx(field, Orientation::trivial(p));
  auto powers = augmentation_powers(ctx, all, p->order() + 1);
  DimensionChain chain;
  for (const auto& delta_n : powers) {
    ElementSet d;
    for (Elem x : all) {
      auto v = ctx.basis(x);
      v[0] = field.sub(v[0], field.one());
      if (delta_n.contains(v)) d.push_back(x);
    }
    chain.subgroups.push_back(std::move(d));
    if (chain.subgroups.back().size() == 1) break;
  }
  std::vector<ElementSet> jennings{all};
  while (jennings.size() < chain.subgroups.size()) {
    const std::size_t n = jennings.size() + 1;
    ElementSet comm = commutator_subgroup(*p, jennings.back(), all);
    ElementSet pw = power_subgroup(*p, jennings[(n + q - 1) / q - 1], q);
    std::vector<Elem> gens = comm;
    gens.insert(gens.end(), pw.begin(), pw.end());
    jennings.push_back(subgroup_generated(*p, gens));
  }
  if (jennings != chain.subgroups)
    throw std::logic_error("dimension_subgroups: membership and Jennings recursion disagree");
  return chain;
}

/// P' contained in P^p.
bool is_powerful(const FiniteGroup& p, unsigned prime);

/// The subgroup generated by the p^i-th powers of P.
ElementSet power_of_exponent(const FiniteGroup& p, unsigned prime, unsigned i);

// ---------------------------------------------------------------------------
// The M_n and script-M_k subspaces

namespace detail {

/// span{(h1 - h1^-1) ... (hn - hn^-1) : hi in P}, built one factor at a time.
template <Field F>
Subspace<F> difference_products(const AlgebraContext<F>& ctx, std::span<const Elem> p, std::size_t n) {
  std::vector<Vector<F>> diffs;
  for (Elem h : p) {
    auto v = ctx.basis(h);
    v[ctx.group().inv(h)] = ctx.field().sub(v[ctx.group().inv(h)], ctx.field().one());
    if (!ctx.is_zero(v)) diffs.push_back(std::move(v));
  }
  Subspace<F> cur = Subspace<F>::span(ctx.field(), ctx.dim(), diffs);
  for (std::size_t k = 1; k < n; ++k) {
    SubspaceBuilder<F> b(ctx.field(), ctx.dim());
    for (const auto& d : diffs)
      for (const auto& v : cur.basis()) b.absorb(ctx.multiply(d, v));
    cur = b.build();
  }
  return cur;
}

}  // namespace detail

/// M_n = span{(h1 - h1^-1) ... (hn - hn^-1)(1 - c)a : hi in P, a in (Q8 x E) \ zeta}.
template <Field F>
Subspace<F> m_space(const AlgebraContext<F>& ctx, const Q8Decomposition& dec, std::size_t n) {
  if (n < 2) throw std::invalid_argument("m_space: n must be >= 2");
  const Subspace<F> f = detail::difference_products(ctx, dec.p_part, n);
  auto one_minus_c = ctx.one();
  one_minus_c[dec.c] = ctx.field().sub(one_minus_c[dec.c], ctx.field().one());
  SubspaceBuilder<F> b(ctx.field(), ctx.dim());
  for (const auto& v : f.basis()) {
    const auto w = ctx.multiply(v, one_minus_c);
    for (Elem a : dec.q8e_noncentral) b.absorb(ctx.right_translate(w, a));
  }
  return b.build();
}

/// The spanning set of gamma^k((FG)^+) for abelian P: the products
/// (h1 - h1^-1) ... (hk - hk^-1)(1 - a^2)a and their left multiples by g.
template <Field F>
Subspace<F> m_script_space(const AlgebraContext<F>& ctx, const Q8Decomposition& dec, std::size_t k) {
  if (k < 2) throw std::invalid_argument("m_script_space: k must be >= 2");
  const Subspace<F> f = detail::difference_products(ctx, dec.p_part, k);
  const FiniteGroup& g = ctx.group();
  SubspaceBuilder<F> b(ctx.field(), ctx.dim());
  for (Elem a : dec.q8e_noncentral) {
    auto tail = ctx.basis(a);
    const Elem a3 = g.mul(g.mul(a, a), a);
    tail[a3] = ctx.field().sub(tail[a3], ctx.field().one());  // (1 - a^2)a
    for (const auto& v : f.basis()) {
      const auto w = ctx.multiply(v, tail);
      b.absorb(w);
      b.absorb(ctx.left_translate(dec.g, w));
    }
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Symmetric-group action on formal generator tuples

/// Images of 0..n-1. Products compose left to right: (s t)(k) = t(s(k)),
/// which makes s . f_(1..n) = f_(s(1)..s(n)) a left action.
using Permutation = std::vector<unsigned>;

Permutation identity_permutation(unsigned n);
Permutation compose(const Permutation& first, const Permutation& then);
/// The cycle (i, i-1, ..., 1) in S_n, 1-based i.
Permutation descending_cycle(unsigned n, unsigned i);
/// Cycle notation, 1-based, "()" for the identity.
std::string to_string(const Permutation& p);

/// An element of Z S_n with canonical (sorted, merged, nonzero) terms.
struct SymPermSum {
  unsigned n = 0;
  std::vector<std::pair<Permutation, long long>> terms;

  static SymPermSum identity(unsigned n);
  SymPermSum operator+(const SymPermSum& other) const;
  SymPermSum operator*(const SymPermSum& other) const;
  SymPermSum operator*(const Permutation& p) const;
  long long coefficient_sum() const;
  std::string to_string() const;
};

/// x_(i,n): x_(2,n) = 1 + (2,1), x_(i,n) = x_(i-1,n) + x_(i-1,n)(i, i-1, ..., 1).
SymPermSum sym_element(unsigned i, unsigned n);
/// x_(n,n)
SymPermSum sym_action(unsigned n);

/// x . f_(1..n)(1 - c)a evaluated in FG, where the tuple is (h_1, ..., h_n) and
/// each permutation s sends it to f_(s(1)..s(n)).
template <Field F>
Vector<F> apply_sym_action(const AlgebraContext<F>& ctx, const SymPermSum& x, std::span<const Elem> hs,
                           Elem a, Elem c) {
  if (hs.size() != x.n) throw std::invalid_argument("apply_sym_action: tuple length differs from n");
  const F& f = ctx.field();
  auto tail = ctx.basis(a);
  tail[ctx.group().mul(c, a)] = f.sub(tail[ctx.group().mul(c, a)], f.one());  // (1 - c)a
  auto out = ctx.zero();
  for (const auto& [perm, coeff] : x.terms) {
    auto prod = ctx.one();
    for (unsigned k = 0; k < x.n; ++k) {
      const Elem h = hs[perm[k]];
      auto d = ctx.basis(h);
      d[ctx.group().inv(h)] = f.sub(d[ctx.group().inv(h)], f.one());
      prod = ctx.multiply(prod, d);
    }
    const auto term = ctx.multiply(prod, tail);
    f.axpy(std::span<typename F::value_type>(out), f.from_int(coeff),
           std::span<const typename F::value_type>(term));
  }
  return out;
}

}  // namespace ilab
