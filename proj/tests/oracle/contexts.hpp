#pragma once

#include <optional>
#include <string>
#include <vector>

#include "naive.hpp"

namespace naive {

/// One catalog context rebuilt from coordinates, with the values to freeze.
struct OracleContext {
  std::string label;  // matches the library's name@field labels
  int p;
  Factor group;
  std::optional<Factor> sylow;  // P, when t_nil is wanted
  bool strong_plus = false;     // t^L((FG)^+)
  bool strong_fg = false;       // t^L(FG)
};

inline std::vector<OracleContext> oracle_contexts() {
  const Factor q = quaternion_ext();
  const Factor c2 = cyclic(2);
  const Factor c2_neg = cyclic(2, -1);
  auto q8 = [&](std::string label, int p, std::vector<Factor> extra, std::vector<Factor> sylow) {
    std::vector<Factor> parts{q};
    parts.insert(parts.end(), extra.begin(), extra.end());
    OracleContext c{std::move(label), p, product(parts), std::nullopt, true, false};
    c.sylow = sylow.empty() ? cyclic(1) : product(sylow);
    return c;
  };
  auto pgroup = [&](std::string label, Factor g) {
    return OracleContext{std::move(label), 3, std::move(g), std::nullopt, true, true};
  };
  return {
      q8("q8ext@F3", 3, {}, {}),
      q8("q8ext-c2@F3", 3, {c2}, {}),
      q8("q8ext-f5@F5", 5, {}, {}),
      q8("q8ext-c2-f5@F5", 5, {c2}, {}),
      q8("q8ext-c3@F3", 3, {cyclic(3)}, {cyclic(3)}),
      q8("q8ext-c2-c3@F3", 3, {c2, cyclic(3)}, {cyclic(3)}),
      q8("q8ext-c9@F3", 3, {cyclic(9)}, {cyclic(9)}),
      q8("q8ext-c3c3@F3", 3, {cyclic(3), cyclic(3)}, {cyclic(3), cyclic(3)}),
      q8("q8ext-c2-c9@F3", 3, {c2, cyclic(9)}, {cyclic(9)}),
      q8("q8ext-c2-c3c3@F3", 3, {c2, cyclic(3), cyclic(3)}, {cyclic(3), cyclic(3)}),
      q8("q8ext-c5@F5", 5, {cyclic(5)}, {cyclic(5)}),
      q8("q8ext-c2-c5@F5", 5, {c2, cyclic(5)}, {cyclic(5)}),
      pgroup("c3@F3", cyclic(3)),
      pgroup("c9@F3", cyclic(9)),
      pgroup("heis3@F3", heisenberg3()),
      pgroup("heis3-c2@F3", product({heisenberg3(), c2_neg})),
      pgroup("ex9-c2@F3", product({metacyclic27(), c2_neg})),
      pgroup("wr3-c2@F3", product({wreath3(), c2_neg})),
  };
}

struct OracleValues {
  std::optional<int> t, t_upper, t_nil, t_upper_fg;
};

inline OracleValues evaluate(const OracleContext& c) {
  const Group g = close(c.group);
  const Algebra A{&g, c.p};
  const Span s = symmetric_span(A);
  OracleValues v;
  v.t = lie_index(A, s);
  if (c.strong_plus) v.t_upper = strong_index(A, s);
  if (c.strong_fg) {
    Span all(c.p, g.n);
    for (int a = 0; a < g.n; ++a) all.add(A.elem(a));
    v.t_upper_fg = strong_index(A, all);
  }
  if (c.sylow) {
    const Group pg = close(*c.sylow);
    v.t_nil = augmentation_nilpotency(Algebra{&pg, c.p});
  }
  return v;
}

}  // namespace naive
