#pragma once

// Random generators and brute-force oracles shared by the test binaries.

#include "manicoh/abelian.hpp"
#include "manicoh/manifold.hpp"

#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

namespace manicoh {

// gtest value printers
inline void PrintTo(const FgAbGroup& g, std::ostream* os) { *os << g.invariant_string(); }
inline void PrintTo(const Matrix& m, std::ostream* os) { *os << m.to_string(); }

}  // namespace manicoh

namespace manicoh::testing {

using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long long lo, long long hi);

// Cyclic orders > 1 with product ≤ max_order.
std::vector<long long> random_orders(Rng& rng, long long max_order, std::size_t max_factors);

// Every list of cyclic orders (each ≥ 2, non-decreasing) with product ≤ max_order.
std::vector<std::vector<long long>> cyclic_sums_up_to(long long max_order);

// Explicit finite group ⊕ Z/orders[i], elements as coordinate vectors.
struct FiniteGroup {
  std::vector<long long> orders;

  std::size_t size() const;
  std::vector<long long> element(std::size_t index) const;
  std::size_t index(const std::vector<long long>& e) const;
  std::vector<long long> add(const std::vector<long long>& a, const std::vector<long long>& b) const;
  FgAbGroup group() const;
};

// Isomorphism type of a finite abelian group from the sizes of its p^k-torsion
// subgroups, given the element orders of all elements.
FgAbGroup type_from_element_orders(const std::vector<long long>& orders);

// Order of an element of a group given by an addition table on indices 0..n-1 (0 = identity).
long long element_order(std::size_t e, const std::vector<std::vector<std::size_t>>& table);

// Middle groups of 0 → A → E → C → 0 by enumerating, for C = ⊕ Z/c_i, every choice
// of a_i = c_i·s(e_i) ∈ A and building E = A × C with carry addition.
std::vector<FgAbGroup> brute_middle_groups(const std::vector<long long>& a, const std::vector<long long>& c);

// Isomorphism types of subgroups, from closures of all generator tuples up to the rank.
std::vector<FgAbGroup> brute_subgroup_types(const std::vector<long long>& orders);

// |Hom(C, A)| by testing every tuple of generator images.
std::size_t brute_hom_count(const std::vector<long long>& c, const std::vector<long long>& a);

Int gcd_of_minors(const Matrix& m, std::size_t k);

TorsionGroup random_odd_torsion(Rng& rng, std::size_t max_factors);

// Valid descriptor with random attaching data; l, k ≤ max_rank.
ManifoldDescriptor random_descriptor(Rng& rng, int n, unsigned max_rank, std::size_t max_torsion = 2);

}  // namespace manicoh::testing
