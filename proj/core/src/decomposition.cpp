#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "ilab/group.hpp"

namespace ilab {

std::string_view to_string(DecompositionFailure f) {
  switch (f) {
    case DecompositionFailure::none: return "none";
    case DecompositionFailure::trivial_orientation: return "trivial orientation";
    case DecompositionFailure::no_q8_subgroup: return "no Q8 subgroup";
    case DecompositionFailure::no_admissible_g:
      return "no g outside N with (g,x)=(g,y)=1 and g^2=x^2";
    case DecompositionFailure::not_direct_product_shape:
      return "G is not <Q8,g> x E x P with E^2=1 and P a p-group";
  }
  return "unknown";
}

namespace {

bool is_q8_pair(const FiniteGroup& g, Elem x, Elem y) {
  if (g.element_order(x) != 4 || g.element_order(y) != 4) return false;
  if (g.mul(x, x) != g.mul(y, y)) return false;
  // x^y = x^-1
  if (g.mul(g.mul(g.inv(y), x), y) != g.inv(x)) return false;
  const Elem gens[] = {x, y};
  return subgroup_generated(g, gens).size() == 8;
}

struct Shape {
  bool ok = false;
  std::string why;
  ElementSet e_part, p_part;
};

/// N = Q8 x E x P with E elementary abelian 2-group and P a p-group.
Shape check_kernel_shape(const FiniteGroup& g, const Orientation& sigma, Elem x, Elem y,
                         unsigned characteristic) {
  Shape s;
  const ElementSet& n = sigma.kernel();
  if (!sigma.in_kernel(x) || !sigma.in_kernel(y)) {
    s.why = "Q8 is not contained in the kernel N";
    return s;
  }
  const Elem c = g.mul(x, x);
  const Elem q8_gens[] = {x, y};
  const ElementSet q8 = subgroup_generated(g, q8_gens);
  const ElementSet cent = centralizer(g, q8, n);
  const ElementSet two = p_elements(g, cent, 2);
  ElementSet odd = characteristic == 0 ? ElementSet{0} : p_elements(g, cent, characteristic);
  if (!is_subgroup(g, two) || !is_subgroup(g, odd)) {
    s.why = "centralizer of Q8 in N does not split into 2- and p-parts";
    return s;
  }
  if (two.size() * odd.size() != cent.size()) {
    s.why = characteristic == 0
                ? "centralizer of Q8 in N has elements of odd order (char 0 needs P = 1)"
                : fmt::format("centralizer of Q8 in N has elements of order prime to 2 and {}",
                              characteristic);
    return s;
  }
  for (Elem t : two) {
    if (g.mul(t, t) != 0) {
      s.why = "2-part of the centralizer is not elementary abelian";
      return s;
    }
    for (Elem q : odd)
      if (!g.commute(t, q)) {
        s.why = "2-part and p-part of the centralizer do not commute";
        return s;
      }
  }
  // complement of <c> in the elementary abelian 2-part
  std::vector<Elem> basis{c};
  ElementSet span = subgroup_generated(g, basis);
  for (Elem t : two) {
    if (contains(span, t)) continue;
    basis.push_back(t);
    span = subgroup_generated(g, basis);
  }
  const std::vector<Elem> e_gens(basis.begin() + 1, basis.end());
  s.e_part = subgroup_generated(g, e_gens);
  s.p_part = odd;
  if (8 * s.e_part.size() * s.p_part.size() != n.size()) {
    s.why = "N is larger than Q8 x E x P";
    return s;
  }
  s.ok = true;
  return s;
}

}  // namespace

DecompositionResult decompose_q8_structure(const Orientation& sigma, unsigned characteristic) {
  const FiniteGroup& g = sigma.group();
  DecompositionResult result;
  if (sigma.is_trivial()) {
    result.failure = DecompositionFailure::trivial_orientation;
    result.detail = "the theorem needs a nontrivial orientation";
    return result;
  }
  std::vector<Elem> order4;
  for (Elem a = 0; a < g.order(); ++a)
    if (g.element_order(a) == 4) order4.push_back(a);
  // pairs inside N first
  std::stable_partition(order4.begin(), order4.end(),
                        [&](Elem a) { return sigma.in_kernel(a); });

  bool found_q8 = false;
  bool found_g = false;
  std::string shape_why;
  for (Elem x : order4) {
    for (Elem y : order4) {
      if (!is_q8_pair(g, x, y)) continue;
      found_q8 = true;
      const Elem c = g.mul(x, x);
      std::vector<Elem> candidates;
      for (Elem z = 0; z < g.order(); ++z)
        if (!sigma.in_kernel(z) && g.commute(z, x) && g.commute(z, y) && g.mul(z, z) == c)
          candidates.push_back(z);
      if (candidates.empty()) continue;
      found_g = true;
      Shape shape = check_kernel_shape(g, sigma, x, y, characteristic);
      if (!shape.ok) {
        if (shape_why.empty()) shape_why = shape.why;
        continue;
      }
      for (Elem z : candidates) {
        const bool central_to_ep =
            std::all_of(shape.e_part.begin(), shape.e_part.end(), [&](Elem e) { return g.commute(z, e); }) &&
            std::all_of(shape.p_part.begin(), shape.p_part.end(), [&](Elem h) { return g.commute(z, h); });
        if (!central_to_ep) continue;
        Q8Decomposition d;
        d.x = x;
        d.y = y;
        d.g = z;
        d.c = c;
        const Elem q8_gens[] = {x, y};
        d.q8 = subgroup_generated(g, q8_gens);
        d.e_part = shape.e_part;
        d.p_part = shape.p_part;
        std::vector<Elem> qe_gens{x, y};
        for (Elem e : generating_set(g, d.e_part)) qe_gens.push_back(e);
        d.q8_times_e = subgroup_generated(g, qe_gens);
        d.q8e_center = centralizer(g, d.q8_times_e, d.q8_times_e);
        std::set_difference(d.q8_times_e.begin(), d.q8_times_e.end(), d.q8e_center.begin(),
                            d.q8e_center.end(), std::back_inserter(d.q8e_noncentral));
        result.value = std::move(d);
        return result;
      }
      if (shape_why.empty()) shape_why = "no admissible g centralizes E x P";
    }
  }
  if (!found_q8) {
    result.failure = DecompositionFailure::no_q8_subgroup;
    result.detail = "no pair x, y with <x, y> isomorphic to Q8";
  } else if (!found_g) {
    result.failure = DecompositionFailure::no_admissible_g;
    result.detail = "exhaustive search over G \\ N found no g with (g,x)=(g,y)=1 and g^2=x^2";
  } else {
    result.failure = DecompositionFailure::not_direct_product_shape;
    result.detail = shape_why;
  }
  return result;
}

}  // namespace ilab
