#pragma once

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ilab/algebra.hpp"
#include "ilab/catalog.hpp"
#include "ilab/group_spec.hpp"
#include "ilab/lie.hpp"

namespace testing_support {

using namespace ilab;

inline GroupPtr group(const std::string& spec, std::size_t cap = 512) {
  return build_group_ptr(GroupSpec::parse(expand_spec(spec)), {.order_cap = cap});
}

template <Field F>
ContextPtr<F> context(F field, const std::string& spec, const std::string& kernel = "full",
                      std::size_t rational_cap = 64) {
  auto g = group(spec);
  auto sigma = make_orientation(g, parse_kernel(*g, kernel));
  return AlgebraContext<F>::create(std::move(field), std::move(sigma), {.rational_order_cap = rational_cap});
}

inline ContextPtr<PrimeField> catalog_context(const std::string& name) {
  const auto& e = catalog_entry(name);
  return context(PrimeField(e.characteristic), e.spec, e.kernel);
}

inline std::vector<Elem> all_elements(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return all;
}

template <class T>
std::span<const T> view(const std::vector<T>& v) {
  return std::span<const T>(v);
}

/// Uniform element of FG for a prime field.
inline Vector<PrimeField> random_vector(const AlgebraContext<PrimeField>& ctx, std::mt19937_64& rng) {
  auto v = ctx.zero();
  for (auto& x : v) x = ctx.field().from_int(static_cast<long long>(rng() % ctx.field().characteristic()));
  return v;
}

/// Small random rational coefficients, sparse.
inline Vector<RationalField> random_vector(const AlgebraContext<RationalField>& ctx, std::mt19937_64& rng) {
  auto v = ctx.zero();
  for (auto& x : v)
    if (rng() % 3 == 0) x = mpq_class(static_cast<long>(rng() % 7) - 3, static_cast<unsigned long>(rng() % 3 + 1));
  for (auto& x : v) x.canonicalize();
  return v;
}

}  // namespace testing_support
