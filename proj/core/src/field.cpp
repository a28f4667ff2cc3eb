#include "ilab/field.hpp"

#include <charconv>

#include <fmt/format.h>

namespace ilab {

bool is_odd_prime(unsigned p) {
  if (p < 3 || p % 2 == 0) return false;
  for (unsigned d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw FieldError(fmt::format("bad characteristic '{}'", text));
  if (v == 2) throw FieldError("characteristic 2 is not supported: 2 must be invertible");
  if (v != 0 && !is_odd_prime(v))
    throw FieldError(fmt::format("characteristic {} is neither 0 nor an odd prime", v));
  return FieldSpec{v};
}

std::string FieldSpec::to_string() const {
  return characteristic == 0 ? std::string("Q") : fmt::format("F{}", characteristic);
}

}  // namespace ilab
