#pragma once

#include "manicoh/matrix.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace manicoh {

struct PrimePower {
  Int p;
  unsigned r = 1;

  Int order() const;
  bool operator==(const PrimePower&) const = default;
  bool operator<(const PrimePower& o) const { return p != o.p ? p < o.p : r < o.r; }
};

// Finitely generated abelian group Z^f ⊕ (⊕ Z/p^r), torsion sorted by (p, r).
// Equality of values is isomorphism.
class FgAbGroup {
 public:
  FgAbGroup() = default;

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup free(unsigned rank);
  // order 0 gives Z, order 1 the trivial group.
  static FgAbGroup cyclic(const Int& order);
  static FgAbGroup from_invariants(unsigned free_rank, const std::vector<Int>& orders);
  static FgAbGroup from_prime_powers(unsigned free_rank, std::vector<PrimePower> torsion);

  unsigned free_rank() const { return free_rank_; }
  const std::vector<PrimePower>& torsion() const { return torsion_; }

  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  Int order() const;  // throws for infinite groups
  Int exponent() const;
  std::size_t min_generators() const;
  // d1 | d2 | ... with every d > 1.
  std::vector<Int> invariant_factors() const;
  FgAbGroup torsion_subgroup() const;
  bool has_p_torsion(const Int& p) const;

  FgAbGroup operator+(const FgAbGroup& other) const;  // direct sum
  FgAbGroup power(unsigned k) const;

  std::string to_string() const;            // prime-power form
  std::string invariant_string() const;     // invariant-factor form

  bool operator==(const FgAbGroup&) const = default;
  bool operator<(const FgAbGroup& o) const;

 private:
  unsigned free_rank_ = 0;
  std::vector<PrimePower> torsion_;
};

inline bool is_isomorphic(const FgAbGroup& a, const FgAbGroup& b) { return a == b; }

// Direct sum kept in the order and grouping a formula prints it in.
struct CyclicTerm {
  Int order;  // 0 means Z
  unsigned multiplicity = 1;
  bool operator==(const CyclicTerm&) const = default;
};

class DisplaySum {
 public:
  DisplaySum& add(const Int& order, unsigned multiplicity = 1);
  DisplaySum& add(const FgAbGroup& g);
  const std::vector<CyclicTerm>& terms() const { return terms_; }
  FgAbGroup group() const;
  std::string to_string() const;

 private:
  std::vector<CyclicTerm> terms_;
};

std::string superscript(unsigned k);
std::string cyclic_name(const Int& order);

// Z^generators modulo the column span of `relations`.
struct Presentation {
  std::size_t generators = 0;
  Matrix relations;

  static Presentation of(const FgAbGroup& g);
  static Presentation free(std::size_t rank);
  FgAbGroup group() const;
};

// `matrix` is codomain.generators x domain.generators.
struct GroupHom {
  Presentation domain;
  Presentation codomain;
  Matrix matrix;
};

struct SmithForm {
  Matrix d;
  Matrix u;
  Matrix v;
  Matrix u_inv;
  Matrix v_inv;
  std::size_t rank = 0;
  std::vector<Int> diagonal() const;
};

class MalformedHomomorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// U·m·V = D, d1 | d2 | ..., all d >= 0, U and V unimodular.
SmithForm smith_normal_form(const Matrix& m);

bool in_column_lattice(const Matrix& lattice, const std::vector<Int>& v);
void check_homomorphism(const GroupHom& h);

FgAbGroup cokernel(const GroupHom& h);
FgAbGroup kernel(const GroupHom& h);
FgAbGroup image(const GroupHom& h);

FgAbGroup tensor(const FgAbGroup& g, const Int& m);  // g ⊗ Z/m
FgAbGroup hom(const FgAbGroup& c, const FgAbGroup& a);
FgAbGroup ext(const FgAbGroup& c, const FgAbGroup& a);  // Ext¹(C, A)

struct ExtensionProblem {
  FgAbGroup sub;
  FgAbGroup quot;
};

// Isomorphism classes of E with 0 → sub → E → quot → 0, sorted.
std::vector<FgAbGroup> middle_groups(const ExtensionProblem& p, std::size_t max_classes = 1u << 20);

// Isomorphism types of subgroups of g (equivalently of its quotients when g is finite), sorted.
std::vector<FgAbGroup> subgroup_types(const FgAbGroup& g);

}  // namespace manicoh
