#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ilab/field.hpp"
#include "ilab/group.hpp"
#include "ilab/subspace.hpp"

namespace ilab {

class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ContextLimits {
  /// Coefficient growth over Q is unbounded; larger groups need an explicit raise.
  std::size_t rational_order_cap = 32;
};

/// The group algebra FG together with an orientation sigma, which fixes the
/// oriented involution (sum a_g g)* = sum a_g sigma(g) g^-1.
///
/// All arithmetic is on dense coefficient vectors indexed by group elements.
template <Field F>
class AlgebraContext {
 public:
  using value_type = typename F::value_type;
  using Vec = Vector<F>;

  AlgebraContext(F field, Orientation sigma, ContextLimits limits = {})
      : field_(std::move(field)), sigma_(std::move(sigma)) {
    if (field_.characteristic() == 0 && group().order() > limits.rational_order_cap)
      throw CapExceeded(fmt::format(
          "group order {} exceeds the characteristic-0 cap {}", group().order(),
          limits.rational_order_cap));
    std::vector<Elem> all(group().order());
    std::iota(all.begin(), all.end(), Elem{0});
    generators_ = generating_set(group(), all);
  }

  static std::shared_ptr<const AlgebraContext> create(F field, Orientation sigma,
                                                      ContextLimits limits = {}) {
    return std::make_shared<const AlgebraContext>(std::move(field), std::move(sigma), limits);
  }

  const F& field() const noexcept { return field_; }
  const FiniteGroup& group() const noexcept { return sigma_.group(); }
  const GroupPtr& group_ptr() const noexcept { return sigma_.group_ptr(); }
  const Orientation& orientation() const noexcept { return sigma_; }
  std::size_t dim() const noexcept { return group().order(); }
  /// Small generating set of G; FG is generated by these as an algebra.
  const std::vector<Elem>& generators() const noexcept { return generators_; }

  Vec zero() const { return Vec(dim(), field_.zero()); }
  Vec basis(Elem g) const {
    Vec v = zero();
    v[g] = field_.one();
    return v;
  }
  Vec one() const { return basis(group().identity()); }
  bool is_zero(const Vec& a) const {
    return std::all_of(a.begin(), a.end(), [&](const value_type& x) { return field_.is_zero(x); });
  }

  Vec add(const Vec& a, const Vec& b) const {
    check(a, b);
    Vec r(dim());
    for (std::size_t k = 0; k < dim(); ++k) r[k] = field_.add(a[k], b[k]);
    return r;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    check(a, b);
    Vec r(dim());
    for (std::size_t k = 0; k < dim(); ++k) r[k] = field_.sub(a[k], b[k]);
    return r;
  }
  Vec neg(const Vec& a) const {
    Vec r(dim());
    for (std::size_t k = 0; k < dim(); ++k) r[k] = field_.neg(a[k]);
    return r;
  }
  Vec scale(const value_type& s, const Vec& a) const {
    Vec r(dim());
    for (std::size_t k = 0; k < dim(); ++k) r[k] = field_.mul(s, a[k]);
    return r;
  }

  /// (ab)_k = sum_{gh = k} a_g b_h
  Vec multiply(const Vec& a, const Vec& b) const {
    check(a, b);
    const FiniteGroup& g = group();
    std::vector<Elem> nz_b;
    for (Elem h = 0; h < dim(); ++h)
      if (!field_.is_zero(b[h])) nz_b.push_back(h);
    Vec r = zero();
    for (Elem x = 0; x < dim(); ++x) {
      if (field_.is_zero(a[x])) continue;
      for (Elem h : nz_b) {
        value_type& slot = r[g.mul(x, h)];
        slot = field_.add(slot, field_.mul(a[x], b[h]));
      }
    }
    return r;
  }

  /// g * a
  Vec left_translate(Elem g, const Vec& a) const {
    check_dim(a.size(), dim());
    Vec r(dim());
    for (Elem h = 0; h < dim(); ++h) r[group().mul(g, h)] = a[h];
    return r;
  }
  /// a * g
  Vec right_translate(const Vec& a, Elem g) const {
    check_dim(a.size(), dim());
    Vec r(dim());
    for (Elem h = 0; h < dim(); ++h) r[group().mul(h, g)] = a[h];
    return r;
  }

  Vec involute(const Vec& a) const {
    check_dim(a.size(), dim());
    Vec r(dim());
    for (Elem h = 0; h < dim(); ++h)
      r[group().inv(h)] = sigma_.sign(h) > 0 ? a[h] : field_.neg(a[h]);
    return r;
  }

  /// [a, b] = ab - ba
  Vec bracket(const Vec& a, const Vec& b) const { return sub(multiply(a, b), multiply(b, a)); }

  value_type augmentation(const Vec& a) const {
    value_type s = field_.zero();
    for (const auto& x : a) s = field_.add(s, x);
    return s;
  }

  Vec from_terms(std::initializer_list<std::pair<long long, Elem>> terms) const {
    Vec v = zero();
    for (auto [c, g] : terms) v[g] = field_.add(v[g], field_.from_int(c));
    return v;
  }

  /// Sorted formal sum using group labels, e.g. "x + 2*y^2".
  std::string format(const Vec& a) const {
    std::string out;
    for (Elem g = 0; g < dim(); ++g) {
      if (field_.is_zero(a[g])) continue;
      std::string coeff = field_.to_string(a[g]);
      bool negative = !coeff.empty() && coeff.front() == '-';
      if (negative) coeff.erase(0, 1);
      if (!out.empty())
        out += negative ? " - " : " + ";
      else if (negative)
        out += "-";
      if (coeff != "1") out += coeff + "*";
      out += group().label(g);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check(const Vec& a, const Vec& b) const {
    check_dim(a.size(), dim());
    check_dim(b.size(), dim());
  }

  F field_;
  Orientation sigma_;
  std::vector<Elem> generators_;
};

template <Field F>
using ContextPtr = std::shared_ptr<const AlgebraContext<F>>;

/// An element of FG bound to its context; value semantics with arithmetic operators.
template <Field F>
class AlgebraElement {
 public:
  using value_type = typename F::value_type;

  AlgebraElement(ContextPtr<F> ctx, Vector<F> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    check_dim(coeffs_.size(), ctx_->dim());
  }
  static AlgebraElement group_element(ContextPtr<F> ctx, Elem g) {
    auto v = ctx->basis(g);
    return AlgebraElement(std::move(ctx), std::move(v));
  }
  static AlgebraElement one(ContextPtr<F> ctx) { return group_element(std::move(ctx), 0); }
  static AlgebraElement zero(ContextPtr<F> ctx) {
    auto v = ctx->zero();
    return AlgebraElement(std::move(ctx), std::move(v));
  }

  const ContextPtr<F>& context() const noexcept { return ctx_; }
  const Vector<F>& coeffs() const noexcept { return coeffs_; }
  const value_type& operator[](Elem g) const { return coeffs_.at(g); }
  bool is_zero() const { return ctx_->is_zero(coeffs_); }

  AlgebraElement involute() const { return {ctx_, ctx_->involute(coeffs_)}; }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    same(a, b);
    return {a.ctx_, a.ctx_->add(a.coeffs_, b.coeffs_)};
  }
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    same(a, b);
    return {a.ctx_, a.ctx_->sub(a.coeffs_, b.coeffs_)};
  }
  friend AlgebraElement operator-(const AlgebraElement& a) { return {a.ctx_, a.ctx_->neg(a.coeffs_)}; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    same(a, b);
    return {a.ctx_, a.ctx_->multiply(a.coeffs_, b.coeffs_)};
  }
  friend AlgebraElement operator*(const value_type& s, const AlgebraElement& a) {
    return {a.ctx_, a.ctx_->scale(s, a.coeffs_)};
  }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const { return ctx_->format(coeffs_); }

 private:
  static void same(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.ctx_ != b.ctx_) throw ContextMismatch("elements belong to different algebra contexts");
  }

  ContextPtr<F> ctx_;
  Vector<F> coeffs_;
};

template <Field F>
AlgebraElement<F> bracket(const AlgebraElement<F>& a, const AlgebraElement<F>& b) {
  return a * b - b * a;
}

// ---------------------------------------------------------------------------
// Symmetric and skew generating sets

/// The spanning sets of (FG)^+ and (FG)^-, one representative (the lower
/// element index) per orbit {g, g^-1}:
///   plus  = {g + g^-1 : g in N} u {g - g^-1 : g notin N, g^2 != 1}
///   minus = {g + g^-1 : g notin N} u {g - g^-1 : g in N, g^2 != 1}
template <Field F>
struct SymmetricGenerators {
  std::vector<Vector<F>> plus_part;
  std::vector<Vector<F>> minus_part;
  std::vector<Elem> plus_reps;
  std::vector<Elem> minus_reps;
};

template <Field F>
SymmetricGenerators<F> symmetric_generators(const AlgebraContext<F>& ctx) {
  const FiniteGroup& g = ctx.group();
  const F& f = ctx.field();
  SymmetricGenerators<F> out;
  for (Elem a = 0; a < g.order(); ++a) {
    const Elem ai = g.inv(a);
    if (ai < a) continue;
    const bool in_n = ctx.orientation().in_kernel(a);
    const bool involutive = g.mul(a, a) == g.identity();
    auto sum = ctx.basis(a);
    sum[ai] = f.add(sum[ai], f.one());
    auto diff = ctx.basis(a);
    diff[ai] = f.sub(diff[ai], f.one());
    if (in_n) {
      out.plus_part.push_back(sum);
      out.plus_reps.push_back(a);
      if (!involutive) {
        out.minus_part.push_back(diff);
        out.minus_reps.push_back(a);
      }
    } else {
      if (!involutive) {
        out.plus_part.push_back(diff);
        out.plus_reps.push_back(a);
      }
      out.minus_part.push_back(sum);
      out.minus_reps.push_back(a);
    }
  }
  return out;
}

template <Field F>
Subspace<F> symmetric_subspace(const AlgebraContext<F>& ctx) {
  const auto gens = symmetric_generators(ctx);
  return Subspace<F>::span(ctx.field(), ctx.dim(), gens.plus_part);
}

template <Field F>
Subspace<F> skew_subspace(const AlgebraContext<F>& ctx) {
  const auto gens = symmetric_generators(ctx);
  return Subspace<F>::span(ctx.field(), ctx.dim(), gens.minus_part);
}

/// Sum of the listed group elements with coefficient 1.
template <Field F>
Vector<F> hat(const AlgebraContext<F>& ctx, std::span<const Elem> subset) {
  auto v = ctx.zero();
  for (Elem g : subset) v[g] = ctx.field().add(v[g], ctx.field().one());
  return v;
}

// ---------------------------------------------------------------------------
// Subspaces, ideals and augmentation powers

/// span{u v : u in U, v in V}
template <Field F>
Subspace<F> subspace_product(const AlgebraContext<F>& ctx, const Subspace<F>& u, const Subspace<F>& v) {
  check_dim(u.ambient_dim(), ctx.dim());
  check_dim(v.ambient_dim(), ctx.dim());
  SubspaceBuilder<F> b(ctx.field(), ctx.dim());
  for (const auto& x : u.basis())
    for (const auto& y : v.basis()) {
      if (b.full()) return b.build();
      b.absorb(ctx.multiply(x, y));
    }
  return b.build();
}

/// span{v z : v in U}
template <Field F>
Subspace<F> subspace_times(const AlgebraContext<F>& ctx, const Subspace<F>& u, const Vector<F>& z) {
  SubspaceBuilder<F> b(ctx.field(), ctx.dim());
  for (const auto& x : u.basis()) b.absorb(ctx.multiply(x, z));
  return b.build();
}

/// span{z v : v in U}
template <Field F>
Subspace<F> times_subspace(const AlgebraContext<F>& ctx, const Vector<F>& z, const Subspace<F>& u) {
  SubspaceBuilder<F> b(ctx.field(), ctx.dim());
  for (const auto& x : u.basis()) b.absorb(ctx.multiply(z, x));
  return b.build();
}

/// Closes the builder's span under left and right multiplication by the
/// group generators, turning it into a two-sided ideal.
template <Field F>
void close_to_ideal(const AlgebraContext<F>& ctx, SubspaceBuilder<F>& b, std::size_t cursor = 0) {
  for (; cursor < b.dim() && !b.full(); ++cursor) {
    const Vector<F> r = b.row(cursor);
    for (Elem s : ctx.generators()) {
      b.absorb(ctx.left_translate(s, r));
      b.absorb(ctx.right_translate(r, s));
    }
  }
}

/// Right ideal closure only (span closed under right multiplication by G).
template <Field F>
void close_to_right_ideal(const AlgebraContext<F>& ctx, SubspaceBuilder<F>& b, std::size_t cursor = 0) {
  for (; cursor < b.dim() && !b.full(); ++cursor) {
    const Vector<F> r = b.row(cursor);
    for (Elem s : ctx.generators()) b.absorb(ctx.right_translate(r, s));
  }
}

/// Left ideal closure (span closed under left multiplication by G).
template <Field F>
void close_to_left_ideal(const AlgebraContext<F>& ctx, SubspaceBuilder<F>& b, std::size_t cursor = 0) {
  for (; cursor < b.dim() && !b.full(); ++cursor) {
    const Vector<F> r = b.row(cursor);
    for (Elem s : ctx.generators()) b.absorb(ctx.left_translate(s, r));
  }
}

/// Smallest two-sided ideal containing the vectors.
template <Field F>
Subspace<F> ideal_generated(const AlgebraContext<F>& ctx, std::span<const Vector<F>> vectors) {
  SubspaceBuilder<F> b(ctx.field(), ctx.dim());
  for (const auto& v : vectors) b.absorb(v);
  close_to_ideal(ctx, b);
  return b.build();
}

template <Field F>
Subspace<F> ideal_generated(const AlgebraContext<F>& ctx, const Subspace<F>& s) {
  SubspaceBuilder<F> b(s);
  close_to_ideal(ctx, b);
  return b.build();
}

/// FG * Delta(A): the left ideal spanned by g(a - 1).
template <Field F>
Subspace<F> left_augmentation_ideal(const AlgebraContext<F>& ctx, std::span<const Elem> a) {
  SubspaceBuilder<F> b(ctx.field(), ctx.dim());
  for (Elem x : generating_set(ctx.group(), a)) {
    auto v = ctx.basis(x);
    v[0] = ctx.field().sub(v[0], ctx.field().one());
    b.absorb(std::move(v));
  }
  close_to_left_ideal(ctx, b);
  return b.build();
}

/// The powers (FG Delta(A))^k for k = 1..max_power, stopping early at zero.
/// For normal A each step uses I^(k+1) = ideal{u (a - 1) : u in I^k, a in gens(A)};
/// otherwise it falls back to the full product of subspaces.
template <Field F>
std::vector<Subspace<F>> augmentation_powers(const AlgebraContext<F>& ctx, std::span<const Elem> a,
                                             std::size_t max_power) {
  if (!is_subgroup(ctx.group(), a)) throw GroupError("augmentation ideal: A is not a subgroup");
  const bool normal = is_normal(ctx.group(), a);
  const auto gens = generating_set(ctx.group(), a);
  std::vector<Subspace<F>> powers;
  if (max_power == 0) return powers;
  powers.push_back(left_augmentation_ideal(ctx, a));
  const Subspace<F> first = powers.front();
  while (powers.size() < max_power && !powers.back().is_zero()) {
    const Subspace<F>& cur = powers.back();
    if (normal) {
      SubspaceBuilder<F> b(ctx.field(), ctx.dim());
      for (const auto& u : cur.basis())
        for (Elem x : gens) b.absorb(ctx.sub(ctx.right_translate(u, x), u));
      close_to_ideal(ctx, b);
      powers.push_back(b.build());
    } else {
      powers.push_back(subspace_product(ctx, cur, first));
    }
  }
  return powers;
}

/// (FG Delta(A))^n, n >= 1.
template <Field F>
Subspace<F> augmentation_power(const AlgebraContext<F>& ctx, std::span<const Elem> a, std::size_t n) {
  if (n == 0) throw std::invalid_argument("augmentation_power: n must be >= 1");
  auto powers = augmentation_powers(ctx, a, n);
  if (powers.size() < n) return Subspace<F>::zero(ctx.field(), ctx.dim());
  return powers.back();
}

/// The centre of FG: span of the conjugacy class sums.
template <Field F>
Subspace<F> algebra_center(const AlgebraContext<F>& ctx) {
  const FiniteGroup& g = ctx.group();
  std::vector<char> seen(g.order(), 0);
  std::vector<Vector<F>> sums;
  for (Elem a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    ElementSet cls;
    for (Elem x = 0; x < g.order(); ++x) cls.push_back(g.mul(g.mul(g.inv(x), a), x));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (Elem c : cls) seen[c] = 1;
    sums.push_back(hat(ctx, std::span<const Elem>(cls)));
  }
  return Subspace<F>::span(ctx.field(), ctx.dim(), sums);
}

/// Number of conjugacy classes.
inline std::size_t class_count(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::size_t n = 0;
  for (Elem a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    ++n;
    for (Elem x = 0; x < g.order(); ++x) seen[g.mul(g.mul(g.inv(x), a), x)] = 1;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Units

template <Field F>
struct InvertResult {
  std::optional<Vector<F>> inverse;
  /// When a is not a unit: nonzero x with a x = 0.
  Vector<F> kernel_witness;

  bool is_unit() const noexcept { return inverse.has_value(); }
};

/// Exact inverse through the left regular representation x -> a x.
template <Field F>
InvertResult<F> invert(const AlgebraContext<F>& ctx, const Vector<F>& a) {
  check_dim(a.size(), ctx.dim());
  std::vector<Vector<F>> columns;
  columns.reserve(ctx.dim());
  for (Elem h = 0; h < ctx.dim(); ++h) columns.push_back(ctx.right_translate(a, h));
  auto solved = solve_square(ctx.field(), std::span<const Vector<F>>(columns), ctx.one());
  InvertResult<F> out;
  if (!solved.solution) {
    out.kernel_witness = std::move(solved.kernel_witness);
    return out;
  }
  if (ctx.multiply(a, *solved.solution) != ctx.one() || ctx.multiply(*solved.solution, a) != ctx.one())
    throw std::logic_error("invert: computed inverse fails verification");
  out.inverse = std::move(solved.solution);
  return out;
}

template <Field F>
std::optional<AlgebraElement<F>> invert(const AlgebraElement<F>& a) {
  auto r = invert(*a.context(), a.coeffs());
  if (!r.inverse) return std::nullopt;
  return AlgebraElement<F>(a.context(), std::move(*r.inverse));
}

// ---------------------------------------------------------------------------
// Quotients and subgroup algebras

/// F(G/A) with the induced orientation, and the natural map from FG.
template <Field F>
struct QuotientAlgebra {
  ContextPtr<F> ctx;
  std::vector<Elem> coset_of;
  bool induced_involution = false;
};

/// Builds F(G/A). The induced involution exists when A is contained in N; if
/// `require_involution` is set and A is not contained in N, this throws.
template <Field F>
QuotientAlgebra<F> make_quotient_algebra(const AlgebraContext<F>& ctx, std::span<const Elem> a,
                                         bool require_involution = true, ContextLimits limits = {}) {
  const bool inside_kernel = is_subset(a, ctx.orientation().kernel());
  if (require_involution && !inside_kernel)
    throw GroupError("quotient: A is not contained in the kernel N; no induced involution");
  QuotientGroup q = quotient_group(ctx.group(), a);
  auto gq = std::make_shared<const FiniteGroup>(std::move(q.group));
  ElementSet kernel;
  if (inside_kernel) {
    for (Elem x : ctx.orientation().kernel()) kernel.push_back(q.coset_of[x]);
    std::sort(kernel.begin(), kernel.end());
    kernel.erase(std::unique(kernel.begin(), kernel.end()), kernel.end());
  } else {
    kernel.resize(gq->order());
    std::iota(kernel.begin(), kernel.end(), Elem{0});
  }
  QuotientAlgebra<F> out;
  out.ctx = AlgebraContext<F>::create(ctx.field(), Orientation(gq, std::move(kernel)), limits);
  out.coset_of = std::move(q.coset_of);
  out.induced_involution = inside_kernel;
  return out;
}

/// The natural map: coefficients summed over cosets.
template <Field F>
Vector<F> quotient_push(const QuotientAlgebra<F>& q, const Vector<F>& a) {
  check_dim(a.size(), q.coset_of.size());
  auto r = q.ctx->zero();
  const F& f = q.ctx->field();
  for (Elem g = 0; g < a.size(); ++g) r[q.coset_of[g]] = f.add(r[q.coset_of[g]], a[g]);
  return r;
}

/// FH inside FG, with the restricted orientation.
template <Field F>
struct SubgroupAlgebra {
  ContextPtr<F> ctx;
  std::vector<Elem> embedding;
};

template <Field F>
SubgroupAlgebra<F> make_subgroup_algebra(const AlgebraContext<F>& ctx, std::span<const Elem> h,
                                         ContextLimits limits = {}) {
  SubgroupEmbedding emb = subgroup_as_group(ctx.group(), h);
  ElementSet kernel;
  for (Elem i = 0; i < emb.embedding.size(); ++i)
    if (ctx.orientation().in_kernel(emb.embedding[i])) kernel.push_back(i);
  auto gh = std::make_shared<const FiniteGroup>(std::move(emb.group));
  SubgroupAlgebra<F> out;
  out.ctx = AlgebraContext<F>::create(ctx.field(), Orientation(gh, std::move(kernel)), limits);
  out.embedding = std::move(emb.embedding);
  return out;
}

template <Field F>
Vector<F> embed(const SubgroupAlgebra<F>& s, const AlgebraContext<F>& ambient, const Vector<F>& a) {
  auto r = ambient.zero();
  for (Elem i = 0; i < a.size(); ++i) r[s.embedding[i]] = a[i];
  return r;
}

}  // namespace ilab
