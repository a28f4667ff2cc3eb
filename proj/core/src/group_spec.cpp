#include "ilab/group_spec.hpp"

#include "ilab/field.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include <fmt/format.h>

namespace ilab {

namespace {

std::string power_label(const std::string& name, unsigned k) {
  if (k == 0) return "";
  if (k == 1) return name;
  return fmt::format("{}^{}", name, k);
}

std::string join_labels(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) out += p;
  return out.empty() ? "1" : out;
}

/// Generator names are numbered per atom kind in traversal order.
struct NameCounter {
  unsigned cyclic = 0;
  unsigned elem2 = 0;
  unsigned q8 = 0;
  unsigned extraspecial = 0;

  static std::string suffix(unsigned k) { return k <= 1 ? "" : std::to_string(k); }
};

FiniteGroup make_cyclic(unsigned n, const std::string& name) {
  std::vector<Elem> table(std::size_t{n} * n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) table[i * n + j] = (i + j) % n;
  std::vector<std::string> labels(n);
  for (Elem i = 0; i < n; ++i) labels[i] = join_labels({power_label(name, i)});
  std::map<std::string, Elem> names;
  if (n > 1) names[name] = 1;
  return FiniteGroup(n, std::move(table), std::move(labels), std::move(names));
}

FiniteGroup make_elem2(unsigned k, unsigned first_index) {
  const std::size_t n = std::size_t{1} << k;
  std::vector<Elem> table(n * n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) table[i * n + j] = i ^ j;
  std::vector<std::string> labels(n);
  std::map<std::string, Elem> names;
  for (unsigned b = 0; b < k; ++b) names[fmt::format("e{}", first_index + b)] = Elem{1} << b;
  for (Elem i = 0; i < n; ++i) {
    std::string s;
    for (unsigned b = 0; b < k; ++b)
      if (i & (1u << b)) s += fmt::format("e{}", first_index + b);
    labels[i] = s.empty() ? "1" : s;
  }
  return FiniteGroup(n, std::move(table), std::move(labels), std::move(names));
}

/// Normal form x^i y^j, index j*4 + i, with yx = x^-1 y and y^2 = x^2.
FiniteGroup make_q8(const std::string& xs, const std::string& ys) {
  auto index = [](unsigned i, unsigned j) { return static_cast<Elem>(j * 4 + i); };
  std::vector<Elem> table(64);
  for (unsigned j1 = 0; j1 < 2; ++j1)
    for (unsigned i1 = 0; i1 < 4; ++i1)
      for (unsigned j2 = 0; j2 < 2; ++j2)
        for (unsigned i2 = 0; i2 < 4; ++i2) {
          unsigned i = (j1 == 0 ? i1 + i2 : i1 + 4 - i2) % 4;
          unsigned j = j1 + j2;
          if (j == 2) {
            i = (i + 2) % 4;
            j = 0;
          }
          table[index(i1, j1) * 8 + index(i2, j2)] = index(i, j);
        }
  std::vector<std::string> labels(8);
  for (unsigned j = 0; j < 2; ++j)
    for (unsigned i = 0; i < 4; ++i)
      labels[index(i, j)] = join_labels({power_label(xs, i), power_label(ys, j)});
  return FiniteGroup(8, std::move(table), std::move(labels), {{xs, index(1, 0)}, {ys, index(0, 1)}});
}

/// Heisenberg group mod p (exponent p): (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
/// Exponent p^2 variant: a^i b^j with b^-1 a b = a^(1+p).
FiniteGroup make_extraspecial(unsigned p, bool exponent_p2, const std::string& suffix) {
  const std::string an = "a" + suffix, bn = "b" + suffix, zn = "z" + suffix;
  const std::size_t n = std::size_t{p} * p * p;
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels(n);
  std::map<std::string, Elem> names;
  if (!exponent_p2) {
    auto index = [p](unsigned a, unsigned b, unsigned c) { return static_cast<Elem>(a + p * b + p * p * c); };
    for (unsigned a1 = 0; a1 < p; ++a1)
      for (unsigned b1 = 0; b1 < p; ++b1)
        for (unsigned c1 = 0; c1 < p; ++c1) {
          labels[index(a1, b1, c1)] =
              join_labels({power_label(an, a1), power_label(bn, b1), power_label(zn, c1)});
          for (unsigned a2 = 0; a2 < p; ++a2)
            for (unsigned b2 = 0; b2 < p; ++b2)
              for (unsigned c2 = 0; c2 < p; ++c2)
                table[index(a1, b1, c1) * n + index(a2, b2, c2)] =
                    index((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p);
        }
    names = {{an, index(1, 0, 0)}, {bn, index(0, 1, 0)}, {zn, index(0, 0, 1)}};
  } else {
    const unsigned m = p * p;
    // b a^k = a^(k s) b where s = (1+p)^-1 mod p^2
    unsigned s = 1;
    while ((s * (1 + p)) % m != 1) ++s;
    std::vector<unsigned> spow(p, 1);
    for (unsigned j = 1; j < p; ++j) spow[j] = (spow[j - 1] * s) % m;
    auto index = [m](unsigned i, unsigned j) { return static_cast<Elem>(i + m * j); };
    for (unsigned i1 = 0; i1 < m; ++i1)
      for (unsigned j1 = 0; j1 < p; ++j1) {
        labels[index(i1, j1)] = join_labels({power_label(an, i1), power_label(bn, j1)});
        for (unsigned i2 = 0; i2 < m; ++i2)
          for (unsigned j2 = 0; j2 < p; ++j2)
            table[index(i1, j1) * n + index(i2, j2)] =
                index((i1 + i2 * spow[j1]) % m, (j1 + j2) % p);
      }
    names = {{an, index(1, 0)}, {bn, index(0, 1)}};
  }
  return FiniteGroup(n, std::move(table), std::move(labels), std::move(names));
}

FiniteGroup build(const GroupSpec& spec, const BuildOptions& opt, NameCounter& names);

std::size_t predicted_order(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::cyclic: return spec.n;
    case GroupSpec::Kind::elementary_abelian2: return std::size_t{1} << spec.n;
    case GroupSpec::Kind::q8: return 8;
    case GroupSpec::Kind::q8_central_ext: return 16;
    case GroupSpec::Kind::extraspecial: return std::size_t{spec.n} * spec.n * spec.n;
    case GroupSpec::Kind::direct_product: {
      std::size_t n = 1;
      for (const auto& c : spec.children) n *= predicted_order(c);
      return n;
    }
    default: return 0;  // known only after construction
  }
}

void check_cap(std::size_t order, const BuildOptions& opt) {
  if (order > opt.order_cap)
    throw CapExceeded(fmt::format("group order {} exceeds the order cap {}", order, opt.order_cap));
}

FiniteGroup build(const GroupSpec& spec, const BuildOptions& opt, NameCounter& names) {
  if (const std::size_t predicted = predicted_order(spec)) check_cap(predicted, opt);
  switch (spec.kind) {
    case GroupSpec::Kind::cyclic:
      if (spec.n == 0) throw GroupError("cyclic group of order 0");
      return make_cyclic(spec.n, fmt::format("h{}", ++names.cyclic));
    case GroupSpec::Kind::elementary_abelian2: {
      const unsigned first = names.elem2 + 1;
      names.elem2 += spec.n;
      return make_elem2(spec.n, first);
    }
    case GroupSpec::Kind::q8: {
      const auto sfx = NameCounter::suffix(++names.q8);
      return make_q8("x" + sfx, "y" + sfx);
    }
    case GroupSpec::Kind::q8_central_ext: {
      // central product of Q8 and C4 = <g>, identifying x^2 with g^2
      const auto sfx = NameCounter::suffix(++names.q8);
      const std::string gname = "g" + sfx;
      FiniteGroup prod = direct_product(make_q8("x" + sfx, "y" + sfx), make_cyclic(4, gname));
      const Elem w = prod.parse_word(fmt::format("x{}^2*{}^2", sfx, gname));
      const ElementSet gens{w};
      return quotient_group(prod, subgroup_generated(prod, gens)).group;
    }
    case GroupSpec::Kind::extraspecial:
      if (!is_odd_prime(spec.n)) throw GroupError("extraspecial groups need an odd prime");
      return make_extraspecial(spec.n, spec.large_exponent,
                               NameCounter::suffix(++names.extraspecial));
    case GroupSpec::Kind::table_file: {
      FiniteGroup g = read_table_file(spec.path);
      check_cap(g.order(), opt);
      return g;
    }
    case GroupSpec::Kind::direct_product: {
      if (spec.children.empty()) throw GroupError("empty product");
      FiniteGroup acc = build(spec.children.front(), opt, names);
      for (std::size_t i = 1; i < spec.children.size(); ++i) {
        FiniteGroup next = build(spec.children[i], opt, names);
        check_cap(acc.order() * next.order(), opt);
        acc = direct_product(acc, next);
      }
      return acc;
    }
    case GroupSpec::Kind::quotient: {
      if (spec.children.size() != 1) throw GroupError("quotient takes one group");
      FiniteGroup base = build(spec.children.front(), opt, names);
      std::vector<Elem> gens;
      for (const auto& w : spec.words) gens.push_back(base.parse_word(w));
      ElementSet a = subgroup_generated(base, gens);
      return quotient_group(base, a).group;
    }
  }
  throw GroupError("unknown group spec kind");
}

// --- parsing ---------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  GroupSpec parse_all() {
    GroupSpec g = parse_spec();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return g;
  }

 private:
  [[noreturn]] void fail(std::string_view why) const {
    throw GroupError(fmt::format("group spec '{}': {} at offset {}", s_, why, pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(fmt::format("expected '{}'", c));
  }
  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }
  unsigned number() {
    skip_ws();
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  std::string until_any(std::string_view stops) {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && stops.find(s_[pos_]) == std::string_view::npos) ++pos_;
    std::string out(s_.substr(start, pos_ - start));
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }

  GroupSpec parse_spec() {
    const std::string name = ident();
    if (name == "q8") return GroupSpec::q8();
    if (name == "q8ext") return GroupSpec::q8ext();
    if (name == "cyclic" || name == "elem2") {
      expect(':');
      const unsigned n = number();
      return name == "cyclic" ? GroupSpec::cyclic(n) : GroupSpec::elementary_abelian2(n);
    }
    if (name == "extraspecial") {
      expect(':');
      const unsigned p = number();
      bool big = false;
      if (eat(':')) {
        const unsigned e = number();
        if (e == p * p)
          big = true;
        else if (e != p)
          fail("extraspecial exponent must be p or p^2");
      }
      return GroupSpec::extraspecial(p, big);
    }
    if (name == "table") {
      expect(':');
      return GroupSpec::table(until_any(",)]"));
    }
    if (name == "product") {
      expect('(');
      GroupSpec acc = parse_spec();
      while (eat(',')) acc = GroupSpec::product(std::move(acc), parse_spec());
      expect(')');
      return acc;
    }
    if (name == "quotient") {
      expect('(');
      GroupSpec base = parse_spec();
      expect(',');
      expect('[');
      std::vector<std::string> words;
      if (!eat(']')) {
        do {
          words.push_back(until_any(",]"));
        } while (eat(','));
        expect(']');
      }
      expect(')');
      return GroupSpec::quotient(std::move(base), std::move(words));
    }
    fail(fmt::format("unknown group atom '{}'", name));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupSpec GroupSpec::cyclic(unsigned n) {
  GroupSpec s;
  s.kind = Kind::cyclic;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::elementary_abelian2(unsigned k) {
  GroupSpec s;
  s.kind = Kind::elementary_abelian2;
  s.n = k;
  return s;
}
GroupSpec GroupSpec::q8() {
  GroupSpec s;
  s.kind = Kind::q8;
  return s;
}
GroupSpec GroupSpec::q8ext() {
  GroupSpec s;
  s.kind = Kind::q8_central_ext;
  return s;
}
GroupSpec GroupSpec::extraspecial(unsigned p, bool exponent_p2) {
  GroupSpec s;
  s.kind = Kind::extraspecial;
  s.n = p;
  s.large_exponent = exponent_p2;
  return s;
}
GroupSpec GroupSpec::table(std::string path) {
  GroupSpec s;
  s.kind = Kind::table_file;
  s.path = std::move(path);
  return s;
}
GroupSpec GroupSpec::product(GroupSpec a, GroupSpec b) {
  GroupSpec s;
  s.kind = Kind::direct_product;
  s.children = {std::move(a), std::move(b)};
  return s;
}
GroupSpec GroupSpec::quotient(GroupSpec a, std::vector<std::string> words) {
  GroupSpec s;
  s.kind = Kind::quotient;
  s.children = {std::move(a)};
  s.words = std::move(words);
  return s;
}

GroupSpec GroupSpec::parse(std::string_view text) { return Parser(text).parse_all(); }

std::string GroupSpec::to_string() const {
  switch (kind) {
    case Kind::cyclic: return fmt::format("cyclic:{}", n);
    case Kind::elementary_abelian2: return fmt::format("elem2:{}", n);
    case Kind::q8: return "q8";
    case Kind::q8_central_ext: return "q8ext";
    case Kind::extraspecial:
      return large_exponent ? fmt::format("extraspecial:{}:{}", n, n * n)
                            : fmt::format("extraspecial:{}", n);
    case Kind::table_file: return "table:" + path;
    case Kind::direct_product: {
      std::string out = "product(";
      for (std::size_t i = 0; i < children.size(); ++i)
        out += (i ? ", " : "") + children[i].to_string();
      return out + ")";
    }
    case Kind::quotient: {
      std::string out = "quotient(" + children.front().to_string() + ", [";
      for (std::size_t i = 0; i < words.size(); ++i) out += (i ? ", " : "") + words[i];
      return out + "])";
    }
  }
  return {};
}

std::size_t default_order_cap() {
  if (const char* env = std::getenv("INVOLUTION_LAB_CAP_ORDER")) {
    std::size_t v = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
  }
  return 256;
}

FiniteGroup build_group(const GroupSpec& spec, const BuildOptions& options) {
  NameCounter names;
  FiniteGroup g = build(spec, options, names);
  check_cap(g.order(), options);
  return g;
}

GroupPtr build_group_ptr(const GroupSpec& spec, const BuildOptions& options) {
  return std::make_shared<const FiniteGroup>(build_group(spec, options));
}

}  // namespace ilab
