#pragma once

#include "manicoh/manifold.hpp"
#include "manicoh/stable.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace manicoh {

class UnsupportedDegree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CohomotopyResult {
  enum class Kind { ExactGroup, Extension, TorsorOver, StructuralStatement, Unknown };

  Kind kind = Kind::Unknown;
  int degree = 0;
  GroupValue group;          // ExactGroup
  SesDescriptor extension;   // Extension
  int torsor_degree = 0;     // TorsorOver, and the partner degree of a bijection statement
  std::string key;           // StructuralStatement and Unknown
  std::string text;
  std::map<std::string, std::string> data;
  std::vector<std::string> notes;
  std::string provenance;

  static CohomotopyResult exact(int degree, GroupValue g, std::string provenance);
  static CohomotopyResult extension_of(int degree, SesDescriptor s);
  static CohomotopyResult torsor(int degree, int over, std::string provenance);
  static CohomotopyResult statement(int degree, std::string key, std::string text);
  static CohomotopyResult unknown(int degree, std::string key, std::string text);
};

std::string kind_name(CohomotopyResult::Kind k);

inline constexpr const char* kPi4Reason = "no effective way known for π⁴, n=3,4";

// π^i(M) for one degree i ≥ 1 of a validated descriptor.
CohomotopyResult compute_degree(const ManifoldDescriptor& d, int degree);
// Degrees 1 .. 2n+2; every higher degree is trivial.
std::map<int, CohomotopyResult> compute_all(const ManifoldDescriptor& d);

// Degrees where compute_all and corollary34 both give a value but disagree; empty when consistent.
std::vector<std::string> consistency_mismatches(const ManifoldDescriptor& d);

// n = 2, π³ as the extension 0 → G₁₂ ⊕ T → π³ → Z^k ⊕ (Z/2)^{l−c−ε} → 0, never collapsed.
SesDescriptor pi3_extension_n2(const ManifoldDescriptor& d);

// n = 3, the group G in π³(M) ≅ H³(M) ⊕ (Z/2)^{l−c} ⊕ G.
SesDescriptor pi3_g_extension_n3(const ManifoldDescriptor& d);

enum class Liftable { Yes, No, NeedsOracle };
std::string liftable_name(Liftable l);

// Θ₀(u) == 0 for a class u with u² = 0, given on integral coordinates of H²(M).
using ThetaOracle = std::function<bool(const std::vector<Int>&)>;

// Whether u ∈ H²(M) lifts to π²(M); n = 2 only. Without an oracle, SteenrodData::theta_zero is consulted.
Liftable pi2_liftable(const ManifoldDescriptor& d, const std::vector<Int>& u,
                      const std::optional<ThetaOracle>& theta = std::nullopt);

// n = 4: the fibres of π⁵(M) → π⁶(ΣM) are in bijection with π⁹(M).
CohomotopyResult pi5_fiber_report(const ManifoldDescriptor& d);

}  // namespace manicoh
