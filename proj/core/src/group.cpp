#include "ilab/group.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

namespace ilab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

ElementSet sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Elem> table,
                         std::vector<std::string> labels,
                         std::map<std::string, Elem> generator_names)
    : order_(order),
      table_(std::move(table)),
      labels_(std::move(labels)),
      names_(std::move(generator_names)) {
  const std::size_t n = order_;
  if (n == 0) throw GroupError("group order must be positive");
  if (table_.size() != n * n)
    throw GroupError(fmt::format("table has {} entries, expected {}", table_.size(), n * n));
  for (Elem e : table_)
    if (e >= n) throw GroupError("table entry out of range");
  for (Elem a = 0; a < n; ++a)
    if (mul(0, a) != a || mul(a, 0) != a)
      throw GroupError("element 0 is not a two-sided identity");
  // Latin square rows give unique inverses.
  inverse_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    std::size_t found = 0;
    for (Elem b = 0; b < n; ++b) {
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        ++found;
      }
    }
    if (found != 1) throw GroupError(fmt::format("element {} has no unique inverse", a));
    if (mul(inverse_[a], a) != 0) throw GroupError("left and right inverses differ");
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const Elem ab = mul(a, b);
      for (Elem c = 0; c < n; ++c)
        if (mul(ab, c) != mul(a, mul(b, c)))
          throw GroupError(fmt::format("associativity fails at ({}, {}, {})", a, b, c));
    }
  orders_.assign(n, 1);
  for (Elem a = 0; a < n; ++a) {
    Elem p = a;
    std::size_t k = 1;
    while (p != 0) {
      p = mul(p, a);
      ++k;
    }
    orders_[a] = k;
  }
  if (labels_.size() != n) {
    labels_.resize(n);
    for (Elem a = 0; a < n; ++a)
      if (labels_[a].empty()) labels_[a] = a == 0 ? "1" : fmt::format("t{}", a + 1);
  }
  for (const auto& [name, e] : names_)
    if (e >= n) throw GroupError("generator name points outside the group");
}

Elem FiniteGroup::pow(Elem a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  k %= static_cast<long long>(orders_[a]);
  Elem r = 0;
  for (long long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

bool FiniteGroup::is_abelian() const noexcept {
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = a + 1; b < order_; ++b)
      if (!commute(a, b)) return false;
  return true;
}

Elem FiniteGroup::parse_word(std::string_view word) const {
  word = trim(word);
  if (word.empty()) throw GroupError("empty group word");
  if (word == "1" || word == "e") return 0;
  for (Elem a = 0; a < order_; ++a)
    if (labels_[a] == word) return a;
  Elem result = 0;
  std::size_t pos = 0;
  while (pos <= word.size()) {
    const std::size_t star = word.find('*', pos);
    std::string_view factor =
        trim(word.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos));
    long long exponent = 1;
    if (const auto caret = factor.find('^'); caret != std::string_view::npos) {
      std::string_view e = trim(factor.substr(caret + 1));
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exponent);
      if (ec != std::errc{} || ptr != e.data() + e.size())
        throw GroupError(fmt::format("bad exponent in word '{}'", word));
      factor = trim(factor.substr(0, caret));
    }
    Elem base;
    if (auto it = names_.find(std::string(factor)); it != names_.end()) {
      base = it->second;
    } else {
      auto lit = std::find(labels_.begin(), labels_.end(), factor);
      if (lit == labels_.end())
        throw GroupError(fmt::format("unknown generator '{}' in word '{}'", factor, word));
      base = static_cast<Elem>(lit - labels_.begin());
    }
    result = mul(result, pow(base, exponent));
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return result;
}

// ---------------------------------------------------------------------------

bool contains(std::span<const Elem> set, Elem a) {
  return std::binary_search(set.begin(), set.end(), a);
}

bool is_subset(std::span<const Elem> small, std::span<const Elem> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

ElementSet subgroup_generated(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> seen(g.order(), 0);
  std::deque<Elem> queue{g.identity()};
  seen[0] = 1;
  std::vector<Elem> out{0};
  while (!queue.empty()) {
    const Elem a = queue.front();
    queue.pop_front();
    for (Elem s : gens) {
      const Elem b = g.mul(a, s);
      if (!seen[b]) {
        seen[b] = 1;
        out.push_back(b);
        queue.push_back(b);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subgroup(const FiniteGroup& g, std::span<const Elem> subset) {
  if (subset.empty() || !contains(subset, 0)) return false;
  for (Elem a : subset)
    for (Elem b : subset)
      if (!contains(subset, g.mul(a, g.inv(b)))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, std::span<const Elem> subgroup) {
  for (Elem h : subgroup)
    for (Elem x = 0; x < g.order(); ++x)
      if (!contains(subgroup, g.mul(g.mul(g.inv(x), h), x))) return false;
  return true;
}

ElementSet commutator_subgroup(const FiniteGroup& g, std::span<const Elem> xs,
                               std::span<const Elem> ys) {
  std::vector<Elem> comms;
  for (Elem a : xs)
    for (Elem b : ys) comms.push_back(g.commutator(a, b));
  comms = sorted_unique(std::move(comms));
  return subgroup_generated(g, comms);
}

bool is_cyclic(const FiniteGroup& g, std::span<const Elem> subgroup) {
  for (Elem a : subgroup)
    if (g.element_order(a) == subgroup.size()) return true;
  return false;
}

DerivedSubgroup derived_subgroup(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  DerivedSubgroup d;
  d.elements = commutator_subgroup(g, all, all);
  d.order = d.elements.size();
  d.cyclic = is_cyclic(g, d.elements);
  return d;
}

ElementSet centralizer(const FiniteGroup& g, std::span<const Elem> subset,
                       std::span<const Elem> within) {
  ElementSet out;
  for (Elem a : within) {
    bool ok = true;
    for (Elem b : subset)
      if (!g.commute(a, b)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(a);
  }
  return sorted_unique(std::move(out));
}

ElementSet center(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return centralizer(g, all, all);
}

ElementSet power_subgroup(const FiniteGroup& g, std::span<const Elem> subset, unsigned p) {
  std::vector<Elem> powers;
  for (Elem a : subset) powers.push_back(g.pow(a, p));
  powers = sorted_unique(std::move(powers));
  return subgroup_generated(g, powers);
}

std::vector<ElementSet> lower_central_series(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  std::vector<ElementSet> series{all};
  while (true) {
    ElementSet next = commutator_subgroup(g, series.back(), all);
    if (next == series.back()) break;
    series.push_back(std::move(next));
    if (series.back().size() == 1) break;
  }
  return series;
}

bool is_nilpotent(const FiniteGroup& g) {
  return lower_central_series(g).back().size() == 1;
}

bool is_p_group(const FiniteGroup& g, std::span<const Elem> subset, unsigned p) {
  for (Elem a : subset) {
    std::size_t o = g.element_order(a);
    while (o % p == 0) o /= p;
    if (o != 1) return false;
  }
  return true;
}

ElementSet p_elements(const FiniteGroup& g, std::span<const Elem> subset, unsigned p) {
  ElementSet out;
  for (Elem a : subset) {
    std::size_t o = g.element_order(a);
    while (o % p == 0) o /= p;
    if (o == 1) out.push_back(a);
  }
  return sorted_unique(std::move(out));
}

std::vector<Elem> generating_set(const FiniteGroup& g, std::span<const Elem> subset) {
  std::vector<Elem> gens;
  ElementSet current{0};
  for (Elem a : subset) {
    if (contains(current, a)) continue;
    gens.push_back(a);
    current = subgroup_generated(g, gens);
    if (current.size() == subset.size()) break;
  }
  return gens;
}

ElementSet sylow_subgroup(const FiniteGroup& g, unsigned p) {
  if (!is_nilpotent(g))
    throw GroupError("sylow_subgroup: group is not nilpotent; unsupported input");
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  ElementSet sub = p_elements(g, all, p);
  if (!is_subgroup(g, sub))
    throw GroupError("sylow_subgroup: p-elements do not form a subgroup");
  return sub;
}

QuotientGroup quotient_group(const FiniteGroup& g, std::span<const Elem> a) {
  if (!is_subgroup(g, a)) throw GroupError("quotient_group: not a subgroup");
  if (!is_normal(g, a)) throw GroupError("quotient_group: subgroup is not normal");
  const std::size_t n = g.order();
  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> coset(n, unset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x) {
    if (coset[x] != unset) continue;
    const Elem id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem h : a) coset[g.mul(x, h)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> table(m * m);
  for (Elem i = 0; i < m; ++i)
    for (Elem j = 0; j < m; ++j) table[i * m + j] = coset[g.mul(reps[i], reps[j])];
  std::vector<std::string> labels(m);
  for (Elem i = 0; i < m; ++i) labels[i] = g.label(reps[i]);
  std::map<std::string, Elem> names;
  for (const auto& [name, e] : g.generator_names()) names[name] = coset[e];
  return {FiniteGroup(m, std::move(table), std::move(labels), std::move(names)),
          std::move(coset)};
}

SubgroupEmbedding subgroup_as_group(const FiniteGroup& g, std::span<const Elem> h) {
  if (!is_subgroup(g, h)) throw GroupError("subgroup_as_group: not a subgroup");
  const std::size_t m = h.size();
  std::vector<Elem> index_of(g.order(), 0);
  for (Elem i = 0; i < m; ++i) index_of[h[i]] = i;
  std::vector<Elem> table(m * m);
  for (Elem i = 0; i < m; ++i)
    for (Elem j = 0; j < m; ++j) table[i * m + j] = index_of[g.mul(h[i], h[j])];
  std::vector<std::string> labels;
  for (Elem e : h) labels.push_back(g.label(e));
  std::map<std::string, Elem> names;
  for (const auto& [name, e] : g.generator_names())
    if (contains(h, e)) names[name] = index_of[e];
  return {FiniteGroup(m, std::move(table), std::move(labels), std::move(names)),
          std::vector<Elem>(h.begin(), h.end())};
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> table(n * n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j)
      table[i * n + j] = static_cast<Elem>(a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb));
  std::vector<std::string> labels(n);
  for (Elem i = 0; i < n; ++i) {
    const Elem x = i / nb, y = i % nb;
    if (x == 0 && y == 0)
      labels[i] = "1";
    else if (y == 0)
      labels[i] = a.label(x);
    else if (x == 0)
      labels[i] = b.label(y);
    else
      labels[i] = a.label(x) + b.label(y);
  }
  std::map<std::string, Elem> names;
  for (const auto& [name, e] : a.generator_names()) names[name] = static_cast<Elem>(e * nb);
  for (const auto& [name, e] : b.generator_names()) {
    if (names.contains(name))
      throw GroupError(fmt::format("duplicate generator name '{}' in product", name));
    names[name] = e;
  }
  return FiniteGroup(n, std::move(table), std::move(labels), std::move(names));
}

FiniteGroup read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroupError(fmt::format("cannot open table file '{}'", path));
  long long n = 0;
  if (!(in >> n) || n <= 0) throw GroupError("table file: missing or invalid order");
  const std::size_t order = static_cast<std::size_t>(n);
  std::vector<Elem> raw(order * order);
  for (std::size_t k = 0; k < order * order; ++k) {
    long long v = 0;
    if (!(in >> v)) throw GroupError("table file: truncated table");
    if (v < 1 || v > n) throw GroupError("table file: entry out of range");
    raw[k] = static_cast<Elem>(v - 1);
  }
  std::string extra;
  if (in >> extra) throw GroupError("table file: trailing data");
  // Find the identity and move it to index 0.
  std::optional<Elem> id;
  for (Elem e = 0; e < order && !id; ++e) {
    bool ok = true;
    for (Elem a = 0; a < order && ok; ++a)
      ok = raw[e * order + a] == a && raw[a * order + e] == a;
    if (ok) id = e;
  }
  if (!id) throw GroupError("table file: no identity element");
  std::vector<Elem> perm(order);  // file index -> internal index
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::swap(perm[0], perm[*id]);
  std::vector<Elem> table(order * order);
  std::vector<std::string> labels(order);
  for (Elem i = 0; i < order; ++i) {
    labels[perm[i]] = perm[i] == 0 ? "1" : fmt::format("t{}", i + 1);
    for (Elem j = 0; j < order; ++j)
      table[perm[i] * order + perm[j]] = perm[raw[i * order + j]];
  }
  return FiniteGroup(order, std::move(table), std::move(labels));
}

std::string write_table(const FiniteGroup& g) {
  std::ostringstream out;
  const std::size_t n = g.order();
  out << n << '\n';
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = 0; j < n; ++j) out << (j ? " " : "") << g.mul(i, j) + 1;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

Orientation::Orientation(GroupPtr group, ElementSet kernel)
    : group_(std::move(group)), kernel_(std::move(kernel)) {
  const FiniteGroup& g = *group_;
  std::sort(kernel_.begin(), kernel_.end());
  if (!is_subgroup(g, kernel_)) throw GroupError("orientation kernel is not a subgroup");
  const std::size_t index = g.order() / kernel_.size();
  if (index * kernel_.size() != g.order() || (index != 1 && index != 2))
    throw GroupError(fmt::format("orientation kernel has index {}, expected 1 or 2",
                                 g.order() / kernel_.size()));
  sign_.assign(g.order(), -1);
  for (Elem a : kernel_) sign_[a] = 1;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (sign_[g.mul(a, b)] != sign_[a] * sign_[b])
        throw GroupError("orientation sign map is not a homomorphism");
}

Orientation Orientation::trivial(GroupPtr group) {
  ElementSet all(group->order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Orientation(std::move(group), std::move(all));
}

Orientation make_orientation(GroupPtr group, ElementSet kernel) {
  return Orientation(std::move(group), std::move(kernel));
}

std::vector<ElementSet> admissible_kernels(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  std::vector<ElementSet> kernels{all};
  if (g.order() % 2 != 0) return kernels;
  // Every index-2 subgroup contains H0 = <G', squares>, and G/H0 is an
  // elementary abelian 2-group; index-2 subgroups are its hyperplanes.
  std::vector<Elem> seeds = derived_subgroup(g).elements;
  for (Elem a : all) seeds.push_back(g.mul(a, a));
  seeds = sorted_unique(std::move(seeds));
  const ElementSet h0 = subgroup_generated(g, seeds);
  // Basis of G/H0 by greedy extension.
  std::vector<Elem> basis;
  ElementSet span = h0;
  for (Elem a : all) {
    if (contains(span, a)) continue;
    basis.push_back(a);
    std::vector<Elem> gens = h0;
    gens.insert(gens.end(), basis.begin(), basis.end());
    span = subgroup_generated(g, gens);
  }
  // coordinates of each element in the basis
  const std::size_t r = basis.size();
  std::vector<unsigned> coord(g.order(), 0);
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    Elem rep = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1u << i)) rep = g.mul(rep, basis[i]);
    for (Elem h : h0) coord[g.mul(rep, h)] = mask;
  }
  for (unsigned functional = 1; functional < (1u << r); ++functional) {
    ElementSet kernel;
    for (Elem a : all)
      if (std::popcount(coord[a] & functional) % 2 == 0) kernel.push_back(a);
    kernels.push_back(std::move(kernel));
  }
  return kernels;
}

ElementSet parse_kernel(const FiniteGroup& g, std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "full" || text == "trivial") {
    ElementSet all(g.order());
    std::iota(all.begin(), all.end(), Elem{0});
    return all;
  }
  std::vector<Elem> gens;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    gens.push_back(g.parse_word(
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return subgroup_generated(g, gens);
}

}  // namespace ilab
