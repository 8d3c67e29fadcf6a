#pragma once

#include "manicoh/homotopy_tables.hpp"
#include "manicoh/manifold.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace manicoh {

enum class MoveKind {
  Add,            // entry_i += ±entry_j inside one block
  Negate,         // degree −1 self-map of one summand
  MooreTransfer,  // add between Moore slots, allowed in one exponent direction
  PairAdd,        // n = 4: (z¹_i, z²_i) += ±(z¹_j, z²_j)
  PairNegate,     // n = 4: (z¹_i, z²_i) ↦ (−z¹_i, z²_i)
  Inclusion,      // n = 4: z²_i += y_j through S⁵ → C⁷_η
};

std::string move_kind_name(MoveKind k);

enum class MooreDirection { TowardMin, TowardMax };

struct MoveRule {
  MoveKind kind;
  std::string block;
  std::string source_block;  // differs from block only for Inclusion
  std::optional<MooreDirection> direction;
  std::string description;
};

// The rewrite rules licensed for dimension parameter n.
std::vector<MoveRule> move_set(int n);

// Generator and modulus source of each attaching block.
struct BlockInfo {
  std::string name;
  std::string generator;
  int source_dim = 0;
  // summand of the tabulated homotopy group the block's coefficients live in
  std::optional<Space> table_target;
  std::size_t table_summand = 0;
  std::optional<MooreDirection> moore;
};

std::vector<BlockInfo> block_info(int n);

// One generator of the move group, on the flattened entries of an attaching vector.
struct ElementaryMove {
  MoveKind kind;
  struct Add {
    std::size_t dst;
    std::size_t src;
    int sign;
  };
  std::vector<Add> adds;  // applied simultaneously
  std::vector<std::size_t> negations;
  std::string label;
};

std::vector<ElementaryMove> elementary_moves(const AttachingVector& shape);
AttachingVector apply_move(const AttachingVector& v, const ElementaryMove& m);

// Blocks compared in schema order, each block compared from its last entry down to its first.
bool canonical_less(const AttachingVector& a, const AttachingVector& b);

struct NormalizedAttachment {
  AttachingVector vector;
  unsigned r_j0 = 0;  // exponent of the Moore summand carrying the min-direction block, 0 if unused
  unsigned r_j1 = 0;  // n = 3: exponent carrying the w block
  std::optional<unsigned> delta;  // n = 3: 1 iff x is even

  bool is_zero() const { return vector.is_zero(); }
};

// Closed-form canonical representative of the move orbit of v.
NormalizedAttachment normalize(const AttachingVector& v);

// Support patterns a normalized vector must have; empty means it conforms.
std::vector<std::string> normal_form_violations(const AttachingVector& v);

struct OracleLimits {
  std::size_t max_block_entries = 3;
  std::size_t max_component_states = std::size_t(1) << 24;
  std::size_t max_orbit_size = std::size_t(1) << 20;
};

class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Orbit restricted to the blocks that moves couple together.
struct OrbitComponent {
  std::vector<std::string> blocks;
  std::vector<std::vector<Int>> states;  // concatenated entries of `blocks`
};

std::vector<OrbitComponent> orbit_components(const AttachingVector& v, const OracleLimits& limits = {});
// Full orbit by breadth-first closure; refuses above the limits.
std::set<AttachingVector> orbit_oracle(const AttachingVector& v, const OracleLimits& limits = {});
// Minimal orbit element under canonical_less, found by search.
AttachingVector oracle_canonical(const AttachingVector& v, const OracleLimits& limits = {});

struct Summand {
  Space space;
  unsigned multiplicity = 1;
};

struct Cofibre {
  int top_dim = 0;
  std::vector<Space> codomain;
  NormalizedAttachment attach;
  std::string expression;  // e.g. "3·ν′ + η₅"
  bool splits_further = false;

  std::string to_string() const;
};

struct WedgeDecomposition {
  int n = 0;
  std::vector<Summand> summands;
  Cofibre cofibre;

  std::string to_string() const;
  std::size_t count(const Space& s) const;  // multiplicity among the free summands
};

WedgeDecomposition suspension_splitting(const ManifoldDescriptor& d);

// Reduced integral homology of the wedge, degrees with nonzero groups only.
std::map<int, FgAbGroup> wedge_homology(const WedgeDecomposition& w);

struct HomologyCheck {
  bool ok = true;
  std::vector<std::string> mismatches;
};

HomologyCheck homology_check(const WedgeDecomposition& w, const ManifoldDescriptor& d);

}  // namespace manicoh
