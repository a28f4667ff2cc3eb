#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ilab {

/// Index of a group element. Element 0 is always the identity.
using Elem = std::uint32_t;

/// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<Elem>;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size limit was hit; the computation was not attempted.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite group stored as a dense multiplication table.
///
/// The constructor checks closure, the identity at index 0, two-sided inverses
/// and associativity over all triples, so every FiniteGroup in the program is
/// a validated group.
class FiniteGroup {
 public:
  FiniteGroup(std::size_t order, std::vector<Elem> table,
              std::vector<std::string> labels,
              std::map<std::string, Elem> generator_names = {});

  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return 0; }

  Elem mul(Elem a, Elem b) const noexcept { return table_[a * order_ + b]; }
  Elem inv(Elem a) const noexcept { return inverse_[a]; }
  Elem pow(Elem a, long long k) const;
  /// (a, b) = a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const noexcept {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }
  std::size_t element_order(Elem a) const noexcept { return orders_[a]; }
  bool commute(Elem a, Elem b) const noexcept { return mul(a, b) == mul(b, a); }
  bool is_abelian() const noexcept;

  const std::string& label(Elem a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<Elem>& table() const noexcept { return table_; }

  /// Named generators ("x", "y", "g", "h1", ...) introduced by the group-spec atoms.
  const std::map<std::string, Elem>& generator_names() const noexcept {
    return names_;
  }

  /// Resolves a word such as "x^2*h1" or a bare element label.
  Elem parse_word(std::string_view word) const;

 private:
  std::size_t order_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::size_t> orders_;
  std::vector<std::string> labels_;
  std::map<std::string, Elem> names_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Subgroup and structure queries. All returned ElementSets are sorted.

ElementSet subgroup_generated(const FiniteGroup& g, std::span<const Elem> gens);
bool is_subgroup(const FiniteGroup& g, std::span<const Elem> subset);
bool is_normal(const FiniteGroup& g, std::span<const Elem> subgroup);
bool contains(std::span<const Elem> set, Elem a);
bool is_subset(std::span<const Elem> small, std::span<const Elem> big);

/// Subgroup generated by all (x, y), x in `xs`, y in `ys`.
ElementSet commutator_subgroup(const FiniteGroup& g, std::span<const Elem> xs,
                               std::span<const Elem> ys);

struct DerivedSubgroup {
  ElementSet elements;
  std::size_t order = 0;
  bool cyclic = false;
};
DerivedSubgroup derived_subgroup(const FiniteGroup& g);

bool is_cyclic(const FiniteGroup& g, std::span<const Elem> subgroup);
ElementSet center(const FiniteGroup& g);
/// Elements of `within` commuting with every element of `subset`.
ElementSet centralizer(const FiniteGroup& g, std::span<const Elem> subset,
                       std::span<const Elem> within);
/// Subgroup generated by the p-th powers of the elements of `subset`.
ElementSet power_subgroup(const FiniteGroup& g, std::span<const Elem> subset,
                          unsigned p);
/// gamma_1 = G, gamma_{i+1} = (gamma_i, G), until it stabilizes.
std::vector<ElementSet> lower_central_series(const FiniteGroup& g);
bool is_nilpotent(const FiniteGroup& g);
bool is_p_group(const FiniteGroup& g, std::span<const Elem> subset, unsigned p);
/// Greedy small generating set of the subgroup `subset` (index order).
std::vector<Elem> generating_set(const FiniteGroup& g, std::span<const Elem> subset);
/// Elements of `subset` whose order is a power of p (1 included).
ElementSet p_elements(const FiniteGroup& g, std::span<const Elem> subset, unsigned p);

/// Elements of p-power order; requires G nilpotent so that this is a subgroup.
ElementSet sylow_subgroup(const FiniteGroup& g, unsigned p);

struct QuotientGroup {
  FiniteGroup group;
  std::vector<Elem> coset_of;  // G -> G/A
};
QuotientGroup quotient_group(const FiniteGroup& g, std::span<const Elem> normal_subgroup);

struct SubgroupEmbedding {
  FiniteGroup group;
  std::vector<Elem> embedding;  // subgroup index -> element of the ambient group
};
SubgroupEmbedding subgroup_as_group(const FiniteGroup& g, std::span<const Elem> subgroup);

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Table file: first line the order n, then n rows of n 1-based indices.
FiniteGroup read_table_file(const std::string& path);
std::string write_table(const FiniteGroup& g);

// ---------------------------------------------------------------------------
// Orientations

/// A homomorphism G -> {+1, -1}, stored as its sign table and kernel N.
class Orientation {
 public:
  Orientation(GroupPtr group, ElementSet kernel);
  static Orientation trivial(GroupPtr group);

  const FiniteGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  int sign(Elem a) const noexcept { return sign_[a]; }
  bool in_kernel(Elem a) const noexcept { return sign_[a] > 0; }
  const ElementSet& kernel() const noexcept { return kernel_; }
  bool is_trivial() const noexcept { return kernel_.size() == group_->order(); }

 private:
  GroupPtr group_;
  std::vector<int> sign_;
  ElementSet kernel_;
};

/// Validates that `kernel` is a subgroup of index 1 or 2 and builds the sign map.
Orientation make_orientation(GroupPtr group, ElementSet kernel);

/// Every subgroup that can be the kernel of an orientation (index 1 or 2).
std::vector<ElementSet> admissible_kernels(const FiniteGroup& g);

/// Kernel given as "full" or a comma separated list of generator words.
ElementSet parse_kernel(const FiniteGroup& g, std::string_view text);

// ---------------------------------------------------------------------------
// The structure required by the Q8 theorems: G = <Q8, g> x E x P.

struct Q8Decomposition {
  Elem x = 0;
  Elem y = 0;
  Elem g = 0;
  Elem c = 0;                  // x^2, generates (Q8 x E)^2
  ElementSet q8;               // <x, y>
  ElementSet e_part;           // elementary abelian 2-group
  ElementSet p_part;           // Sylow p-subgroup of N (trivial in char 0)
  ElementSet q8_times_e;       // Q8 x E
  ElementSet q8e_center;       // zeta(Q8 x E)
  ElementSet q8e_noncentral;   // (Q8 x E) \ zeta(Q8 x E)
};

enum class DecompositionFailure {
  none,
  trivial_orientation,
  no_q8_subgroup,
  no_admissible_g,
  not_direct_product_shape,
};

std::string_view to_string(DecompositionFailure f);

struct DecompositionResult {
  std::optional<Q8Decomposition> value;
  DecompositionFailure failure = DecompositionFailure::none;
  std::string detail;

  explicit operator bool() const noexcept { return value.has_value(); }
};

/// Exhaustive witness search for x, y, g, E, P. `characteristic` is the field
/// characteristic; 0 forces P = 1.
DecompositionResult decompose_q8_structure(const Orientation& sigma,
                                           unsigned characteristic);

}  // namespace ilab
