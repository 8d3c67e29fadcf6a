#pragma once

#include "manicoh/abelian.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace manicoh {

// Finite group ⊕ Z/p^r given as (p, r) factors with multiplicity, kept sorted.
struct TorsionGroup {
  std::vector<PrimePower> factors;

  static TorsionGroup of(std::vector<PrimePower> factors);
  FgAbGroup group() const;
  // exponents r_1 ≤ r_2 ≤ ... of the 3-primary factors
  std::vector<unsigned> three_exponents() const;
  std::size_t three_count() const { return three_exponents().size(); }
  bool operator==(const TorsionGroup&) const = default;
};

struct BlockSpec {
  std::string name;
  Int modulus;
  std::size_t length = 0;
};

// Coefficient blocks of the top-cell attaching map, one entry per wedge summand.
struct Block {
  std::string name;
  Int modulus;
  std::vector<Int> entries;
  bool operator==(const Block&) const = default;
};

struct AttachingVector {
  int n = 0;
  std::vector<Block> blocks;
  // exponents r_j of the 3-primary factors, matching the Z/3 blocks entry by entry
  std::vector<unsigned> three_exponents;

  const Block& block(std::string_view name) const;
  Block& block(std::string_view name);
  bool has_block(std::string_view name) const;
  bool is_zero() const;
  std::string to_string() const;
  bool operator==(const AttachingVector&) const = default;
  bool operator<(const AttachingVector& o) const;
};

// Block layout for dimension parameter n; throws for n outside {2, 3, 4}.
std::vector<BlockSpec> block_schema(int n, unsigned l, unsigned k, unsigned c, std::size_t t);

// Matrices act on column vectors in the dual bases of the descriptor's cohomology.
struct SteenrodData {
  std::map<int, Matrix> sq2;   // Sq²: H^m(;Z/2) → H^{m+2}(;Z/2), keyed by m
  std::map<int, Matrix> rho2;  // overrides of the canonical mod-2 reduction
  std::map<int, Matrix> p1;    // P¹: H^m(;Z/3) → H^{m+4}(;Z/3)
  std::map<int, Matrix> rho3;
  // n = 2: entry i·l + j is e_i ∪ e_j in the generators of H⁴(M)
  std::optional<std::vector<std::vector<Int>>> cup_products;
  // mod-2 classes of H²(M;Z/2) on which Θ₀ vanishes
  std::optional<std::vector<std::vector<Int>>> theta_zero;

  bool empty() const;
};

struct ManifoldDescriptor {
  int n = 2;
  unsigned l = 0;
  unsigned k = 0;
  TorsionGroup torsion;
  bool spin = true;
  unsigned c = 0;
  AttachingVector attach;
  std::optional<SteenrodData> steenrod;

  unsigned epsilon() const { return spin ? 0 : 1; }
  int top_degree() const { return 2 * n + 2; }
};

// Zero attaching data in the descriptor's schema, except y = e₁ for a nonspin n = 2 manifold.
AttachingVector default_attach(int n, unsigned l, unsigned k, const TorsionGroup& t, bool spin, unsigned c);
ManifoldDescriptor make_descriptor(int n, unsigned l, unsigned k, const TorsionGroup& t, bool spin, unsigned c);

struct Violation {
  std::string path;
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const ManifoldDescriptor& d);

class InvalidDescriptor : public std::invalid_argument {
 public:
  explicit InvalidDescriptor(std::vector<Violation> v);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Throws InvalidDescriptor when validate() reports violations.
void require_valid(const ManifoldDescriptor& d);

class DescriptorParseError : public std::runtime_error {
 public:
  DescriptorParseError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// JSON descriptor; missing attach blocks default to zero (n = 2, nonspin: y = e₁).
ManifoldDescriptor parse_descriptor(std::string_view text);
SteenrodData parse_steenrod(std::string_view text);

// Degrees 0 .. 2n+2, trivial groups included.
std::map<int, FgAbGroup> homology_table(const ManifoldDescriptor& d);
// modulus 0 means integer coefficients
std::map<int, FgAbGroup> cohomology_table(const ManifoldDescriptor& d, const Int& modulus = 0);

// H^m(M; Z/modulus) in the fixed basis: duals of free generators, then
// Hom(T_m, ·) generators, then Ext(T_{m-1}, ·) generators.
Presentation cohomology_presentation(const ManifoldDescriptor& d, int degree, const Int& modulus = 0);

Matrix canonical_rho(const ManifoldDescriptor& d, int degree, const Int& p);

struct IntegralOperations {
  std::map<int, GroupHom> sq2_z;  // H^m(;Z) → H^{m+2}(;Z/2)
  std::map<int, GroupHom> p1_z;   // H^m(;Z) → H^{m+4}(;Z/3)
};

// Sq²_Z = Sq² ∘ ρ₂ and P¹_Z = P¹ ∘ ρ₃ for every degree with data; throws on shape mismatch.
IntegralOperations compose_steenrod(const ManifoldDescriptor& d);

}  // namespace manicoh
