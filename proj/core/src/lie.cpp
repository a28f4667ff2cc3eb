#include "ilab/lie.hpp"

#include <algorithm>
#include <numeric>

namespace ilab {

std::string_view to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::lower_lie: return "lower-lie";
    case SeriesKind::strong_lie: return "strong-lie";
    case SeriesKind::aug_power: return "aug-power";
    case SeriesKind::group_lcs: return "group-lcs";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::vanished: return "vanished";
    case Verdict::stabilized_nonzero: return "stabilized_nonzero";
    case Verdict::cap_reached: return "cap_reached";
  }
  return "unknown";
}

SeriesReport group_class_series(const FiniteGroup& g, std::span<const Elem> h, std::size_t cap) {
  SeriesReport r;
  r.kind = SeriesKind::group_lcs;
  ElementSet cur(h.begin(), h.end());
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  r.dims.push_back(cur.size());
  std::vector<ElementSet> seen;
  for (std::size_t n = 1;; ++n) {
    if (cur.empty() || (cur.size() == 1 && cur[0] == g.identity())) {
      r.verdict = Verdict::vanished;
      r.index = n - 1;  // least n with gamma_(n+1) = 1
      return r;
    }
    if (n >= cap) {
      r.verdict = Verdict::cap_reached;
      r.index = n;
      return r;
    }
    seen.push_back(cur);
    ElementSet next = commutator_subgroup(g, cur, h);
    // gamma_1 is only a set; later terms are subgroups and determine their successors
    if (auto it = std::find(seen.begin() + 1, seen.end(), next); it != seen.end()) {
      r.verdict = Verdict::stabilized_nonzero;
      r.index = n;
      r.repeat_of = static_cast<std::size_t>(it - seen.begin()) + 1;
      return r;
    }
    r.dims.push_back(next.size());
    cur = std::move(next);
  }
}

bool is_powerful(const FiniteGroup& p, unsigned prime) {
  std::vector<Elem> all(p.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return is_subset(derived_subgroup(p).elements, power_subgroup(p, all, prime));
}

ElementSet power_of_exponent(const FiniteGroup& p, unsigned prime, unsigned i) {
  unsigned e = 1;
  for (unsigned k = 0; k < i; ++k) e *= prime;
  std::vector<Elem> all(p.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return power_subgroup(p, all, e);
}

// ---------------------------------------------------------------------------

Permutation identity_permutation(unsigned n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

Permutation compose(const Permutation& first, const Permutation& then) {
  if (first.size() != then.size()) throw std::invalid_argument("compose: degree mismatch");
  Permutation r(first.size());
  for (std::size_t k = 0; k < first.size(); ++k) r[k] = then[first[k]];
  return r;
}

Permutation descending_cycle(unsigned n, unsigned i) {
  if (i < 1 || i > n) throw std::invalid_argument("descending_cycle: i out of range");
  Permutation p = identity_permutation(n);
  // i -> i-1 -> ... -> 1 -> i, 1-based
  for (unsigned k = 2; k <= i; ++k) p[k - 1] = k - 2;
  p[0] = i - 1;
  return p;
}

std::string to_string(const Permutation& p) {
  std::string out;
  std::vector<char> done(p.size(), 0);
  for (unsigned s = 0; s < p.size(); ++s) {
    if (done[s] || p[s] == s) continue;
    out += "(";
    unsigned k = s;
    bool first = true;
    while (!done[k]) {
      done[k] = 1;
      if (!first) out += ",";
      out += std::to_string(k + 1);
      first = false;
      k = p[k];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

namespace {

SymPermSum canonical(unsigned n, std::vector<std::pair<Permutation, long long>> terms) {
  std::map<Permutation, long long> acc;
  for (auto& [p, c] : terms) acc[p] += c;
  SymPermSum s;
  s.n = n;
  for (auto& [p, c] : acc)
    if (c != 0) s.terms.emplace_back(p, c);
  return s;
}

}  // namespace

SymPermSum SymPermSum::identity(unsigned n) { return canonical(n, {{identity_permutation(n), 1}}); }

SymPermSum SymPermSum::operator+(const SymPermSum& other) const {
  if (n != other.n) throw std::invalid_argument("SymPermSum: degree mismatch");
  auto all = terms;
  all.insert(all.end(), other.terms.begin(), other.terms.end());
  return canonical(n, std::move(all));
}

SymPermSum SymPermSum::operator*(const SymPermSum& other) const {
  if (n != other.n) throw std::invalid_argument("SymPermSum: degree mismatch");
  std::vector<std::pair<Permutation, long long>> all;
  for (const auto& [p, a] : terms)
    for (const auto& [q, b] : other.terms) all.emplace_back(compose(p, q), a * b);
  return canonical(n, std::move(all));
}

SymPermSum SymPermSum::operator*(const Permutation& p) const { return *this * canonical(n, {{p, 1}}); }

long long SymPermSum::coefficient_sum() const {
  long long s = 0;
  for (const auto& t : terms) s += t.second;
  return s;
}

std::string SymPermSum::to_string() const {
  std::string out;
  for (const auto& [p, c] : terms) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += std::to_string(c) + "*";
    out += ilab::to_string(p);
  }
  return out.empty() ? "0" : out;
}

SymPermSum sym_element(unsigned i, unsigned n) {
  if (n < 2 || i < 2 || i > n) throw std::invalid_argument("sym_element: need 2 <= i <= n");
  SymPermSum x = SymPermSum::identity(n) + SymPermSum::identity(n) * descending_cycle(n, 2);
  for (unsigned k = 3; k <= i; ++k) x = x + x * descending_cycle(n, k);
  return x;
}

SymPermSum sym_action(unsigned n) { return sym_element(n, n); }

}  // namespace ilab
