#pragma once

#include "manicoh/abelian.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manicoh {

// S^d, the Moore space P^d(q) = S^{d-1} ∪_q e^d, or the Chang complex C^d_η.
struct Space {
  enum class Kind { Sphere, Moore, Chang };

  Kind kind = Kind::Sphere;
  int dim = 1;
  Int order = 0;  // Moore spaces only

  static Space sphere(int d);
  static Space moore(int d, const Int& q);
  static Space chang(int d);

  std::string to_string() const;

  bool operator==(const Space&) const = default;
  bool operator<(const Space& o) const;
};

std::string kind_name(Space::Kind k);

struct RelationSide {
  std::string text;
  std::optional<std::vector<Int>> coords;  // coordinates in the relation's group
  std::optional<Int> order_divides;        // known bound on the element's order
};

struct Relation {
  RelationSide lhs;
  RelationSide rhs;
  std::vector<Int> group;  // cyclic orders (0 = Z) of the group both sides live in
  std::vector<std::string> symbols;
  std::string note;

  std::string text() const;
  // Checks that the two sides can be the same element: equal coordinates, or
  // an explicit element whose order divides the other side's order bound.
  bool consistent() const;
};

// Order of the element with coordinates `coords` in ⊕ Z/orders[i]; 0 when infinite.
Int element_order(const std::vector<Int>& orders, const std::vector<Int>& coords);

struct HomotopyEntry {
  std::string id;
  int source_dim = 0;
  Space target;
  std::vector<Int> summands;  // cyclic orders, 0 = Z, aligned with generators
  std::vector<std::string> generators;
  std::vector<Relation> relations;

  FgAbGroup group() const;
};

// dim expression of a table row: either a constant or n + offset
struct DimExpr {
  bool uses_n = false;
  int offset = 0;

  static DimExpr parse(std::string_view s);
  std::string to_string() const;
};

struct TableRow {
  std::string id;
  Space::Kind kind = Space::Kind::Sphere;
  DimExpr dim;
  DimExpr source;
  int n_min = 0;
  std::optional<int> n_max;
  // Moore rows: "2", "3", "odd" or ">=5"
  std::string prime_rule;
  unsigned r_min = 1;
  std::optional<unsigned> r_max;
  std::vector<Int> summands;
  std::vector<std::string> generators;
  std::vector<Relation> relations;

  bool prime_matches(const Int& p) const;
};

class HomotopyTable {
 public:
  static HomotopyTable parse(std::string_view json);
  static const HomotopyTable& builtin();

  // Absent means the pair lies outside the tabulated range, not that the group vanishes.
  std::optional<HomotopyEntry> lookup(int source_dim, const Space& target) const;
  const std::vector<TableRow>& rows() const { return rows_; }

 private:
  std::vector<TableRow> rows_;
};

std::optional<HomotopyEntry> lookup(int source_dim, const Space& target);
std::vector<Relation> relations_for(const HomotopyEntry& entry);

// Parses "Z" or "Z/m"; returns 0 for Z.
Int parse_cyclic(std::string_view s);

}  // namespace manicoh
