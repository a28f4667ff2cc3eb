#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ilab {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Runtime description of the coefficient field: 0 (the rationals) or an odd prime.
struct FieldSpec {
  unsigned characteristic = 0;

  static FieldSpec parse(const std::string& text);
  std::string to_string() const;
};

bool is_odd_prime(unsigned p);

template <class F>
concept Field = requires(const F f, typename F::value_type a, typename F::value_type b,
                         std::span<typename F::value_type> y,
                         std::span<const typename F::value_type> x, long long n) {
  { f.characteristic() } -> std::convertible_to<unsigned>;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.add(a, b) } -> std::same_as<typename F::value_type>;
  { f.sub(a, b) } -> std::same_as<typename F::value_type>;
  { f.mul(a, b) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  f.axpy(y, a, x);
};

/// The prime field F_p for an odd prime p. Residues are kept in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(unsigned p) : p_(p), magic_(~std::uint64_t{0} / p + 1) {
    if (!is_odd_prime(p)) throw FieldError("PrimeField needs an odd prime");
    if (p >= (1u << 16)) throw FieldError("PrimeField supports primes below 65536");
  }

  unsigned characteristic() const noexcept { return p_; }
  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1; }
  value_type from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }
  value_type add(value_type a, value_type b) const noexcept {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return reduce(static_cast<std::uint32_t>(a * b));
  }
  value_type inv(value_type a) const {
    if (a == 0) throw FieldError("division by zero in F_p");
    // a^(p-2)
    value_type result = 1, base = a;
    unsigned e = p_ - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  bool is_zero(value_type a) const noexcept { return a == 0; }
  std::string to_string(value_type a) const { return std::to_string(a); }

  /// y += alpha * x
  void axpy(std::span<value_type> y, value_type alpha,
            std::span<const value_type> x) const noexcept {
    if (alpha == 0) return;
    const std::size_t n = y.size();
    for (std::size_t k = 0; k < n; ++k)
      if (x[k]) y[k] = reduce(y[k] + alpha * x[k]);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept {
    return a.p_ == b.p_;
  }

 private:
  // Lemire's fastmod for 32-bit numerators.
  value_type reduce(std::uint32_t a) const noexcept {
    const std::uint64_t low = magic_ * a;
    return static_cast<value_type>((static_cast<__uint128_t>(low) * p_) >> 64);
  }

  unsigned p_;
  std::uint64_t magic_;
};

/// The rationals, exact via GMP.
class RationalField {
 public:
  using value_type = mpq_class;

  unsigned characteristic() const noexcept { return 0; }
  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long long v) const { return value_type(static_cast<long>(v)); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw FieldError("division by zero in Q");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  std::string to_string(const value_type& a) const { return a.get_str(); }

  void axpy(std::span<value_type> y, const value_type& alpha,
            std::span<const value_type> x) const {
    if (sgn(alpha) == 0) return;
    const std::size_t n = y.size();
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(x[k]) != 0) y[k] += alpha * x[k];
  }

  friend bool operator==(const RationalField&, const RationalField&) noexcept { return true; }
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

/// Calls `fn(field)` with the concrete field type selected by `spec`.
template <class Fn>
decltype(auto) with_field(FieldSpec spec, Fn&& fn) {
  if (spec.characteristic == 0) return fn(RationalField{});
  return fn(PrimeField{spec.characteristic});
}

}  // namespace ilab
