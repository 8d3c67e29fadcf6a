#pragma once

#include "manicoh/manifold.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace manicoh {

// A group that is either computed or only named, with the input that would pin it down.
struct GroupValue {
  std::optional<FgAbGroup> known;
  std::string symbol;
  std::string needs;

  static GroupValue of(const FgAbGroup& g);
  // `display` keeps the grouping of a closed formula, e.g. "Z/2 ⊕ Z/12"
  static GroupValue of(const FgAbGroup& g, std::string display);
  static GroupValue symbolic(std::string symbol, std::string needs);
  bool is_known() const { return known.has_value(); }
  std::string to_string() const;
  // known values compare as groups, symbolic ones by symbol
  bool operator==(const GroupValue& o) const;
};

enum class SplitStatus { Yes, No, Unknown };
std::string split_name(SplitStatus s);

// 0 → sub → E → quot → 0
struct SesDescriptor {
  GroupValue sub;
  std::vector<FgAbGroup> sub_candidates;  // set when sub is only bounded
  GroupValue quot;
  SplitStatus split = SplitStatus::Unknown;
  std::optional<FgAbGroup> middle;
  std::vector<FgAbGroup> middle_candidates;
  std::string provenance;
  std::vector<std::string> notes;

  // Fills middle / middle_candidates from sub, quot and the split status.
  void resolve_middle();
  bool operator==(const SesDescriptor&) const = default;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Cohomology of a complex X with dim X ≤ n + m, and the primary operations on it.
struct StableInput {
  int n = 3;
  int m = 1;
  std::map<int, FgAbGroup> h_z;
  std::map<int, FgAbGroup> h_z2;
  std::map<int, FgAbGroup> h_z3;
  std::map<int, FgAbGroup> h_z24;
  std::map<int, GroupHom> sq2_z;  // H^d(;Z) → H^{d+2}(;Z/2), keyed by d
  std::map<int, Matrix> sq2;      // Sq² on H^d(;Z/2) in the standard basis of (Z/2)^r
  std::map<int, GroupHom> p1_z;   // H^d(;Z) → H^{d+4}(;Z/3)

  FgAbGroup z(int d) const;
  FgAbGroup z2(int d) const;
  FgAbGroup z3(int d) const;
  FgAbGroup z24(int d) const;
};

// Taylor's description of π^n(X) for dim X ≤ n + 1.
SesDescriptor taylor_pi_n(const StableInput& x);

// The three stable-range extension descriptions of π^n(X), case ∈ {1, 2, 3}.
SesDescriptor theorem33_case(const StableInput& x, int which);

// G₂₄ for n = 3: Z/gcd(24, x + 8u + 8w), as the cokernel of Z → Z/24.
FgAbGroup g24_from_coefficients(const Int& x, const Int& u, const Int& w);

// Normalized (x, u, w) of an n = 3 attaching vector, zero where a block is empty.
struct G24Coefficients {
  Int x = 0;
  Int u = 0;
  Int w = 0;
};
G24Coefficients g24_coefficients(const ManifoldDescriptor& d);

struct StableValue {
  enum class Kind { Group, Ses, NotCovered };
  Kind kind = Kind::NotCovered;
  GroupValue group;
  SesDescriptor ses;
  std::string reason;
};

// Degrees 2n+1, 2n, 2n−1, 2n−2, 2n−3 of a validated descriptor.
std::map<int, StableValue> corollary34(const ManifoldDescriptor& d);

// kernel of Sq²_Z or P¹_Z out of H^degree(M), symbolic without the matrices
GroupValue sq2z_kernel(const ManifoldDescriptor& d, int degree);
GroupValue p1z_kernel(const ManifoldDescriptor& d, int degree);

}  // namespace manicoh
