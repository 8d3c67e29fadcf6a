#include "manicoh/homotopy_tables.hpp"

#include <json.hpp>

#include <stdexcept>
#include <utility>

namespace manicoh {

namespace detail {
extern const std::string_view kHomotopyTableJson;
}

namespace {

using nlohmann::json;

std::optional<std::pair<Int, unsigned>> prime_power_of(Int q) {
  if (q < 2) return std::nullopt;
  Int p = 0;
  for (Int d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return std::make_pair(q, 1u);
  unsigned r = 0;
  while (q % p == 0) {
    q /= p;
    ++r;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, r);
}

std::string scalar_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw std::invalid_argument("expected a string or integer, got " + j.dump());
}

std::vector<Int> parse_group(const json& j) {
  std::vector<Int> out;
  for (const auto& s : j) out.push_back(parse_cyclic(s.get<std::string>()));
  return out;
}

RelationSide parse_side(const json& j) {
  RelationSide s;
  s.text = j.at("text").get<std::string>();
  if (j.contains("coords")) {
    std::vector<Int> c;
    for (const auto& v : j["coords"]) c.emplace_back(v.get<long long>());
    s.coords = std::move(c);
  }
  if (j.contains("order_divides")) s.order_divides = Int(j["order_divides"].get<long long>());
  return s;
}

Space::Kind parse_kind(const std::string& s) {
  if (s == "sphere") return Space::Kind::Sphere;
  if (s == "moore") return Space::Kind::Moore;
  if (s == "chang") return Space::Kind::Chang;
  throw std::invalid_argument("unknown space kind '" + s + "'");
}

}  // namespace

Space Space::sphere(int d) {
  if (d < 1) throw std::invalid_argument("sphere dimension must be at least 1");
  return {Kind::Sphere, d, 0};
}

Space Space::moore(int d, const Int& q) {
  if (d < 2) throw std::invalid_argument("Moore space dimension must be at least 2");
  if (q <= 1) throw std::invalid_argument("Moore space order must exceed 1");
  return {Kind::Moore, d, q};
}

Space Space::chang(int d) {
  if (d < 4) throw std::invalid_argument("Chang complex dimension must be at least 4");
  return {Kind::Chang, d, 0};
}

std::string Space::to_string() const {
  switch (kind) {
    case Kind::Sphere:
      return "S" + superscript(static_cast<unsigned>(dim));
    case Kind::Moore:
      return "P" + superscript(static_cast<unsigned>(dim)) + "(" + order.str() + ")";
    case Kind::Chang:
      return "C" + superscript(static_cast<unsigned>(dim)) + "_η";
  }
  return {};
}

bool Space::operator<(const Space& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (dim != o.dim) return dim < o.dim;
  return order < o.order;
}

std::string kind_name(Space::Kind k) {
  switch (k) {
    case Space::Kind::Sphere:
      return "sphere";
    case Space::Kind::Moore:
      return "moore";
    case Space::Kind::Chang:
      return "chang";
  }
  return {};
}

Int parse_cyclic(std::string_view s) {
  if (s == "Z") return 0;
  if (s.size() > 2 && s.substr(0, 2) == "Z/") {
    Int m(std::string(s.substr(2)));
    if (m < 2) throw std::invalid_argument("cyclic order must be at least 2 in '" + std::string(s) + "'");
    return m;
  }
  throw std::invalid_argument("cannot parse cyclic group '" + std::string(s) + "'");
}

Int element_order(const std::vector<Int>& orders, const std::vector<Int>& coords) {
  if (orders.size() != coords.size()) throw std::invalid_argument("coordinate count differs from summand count");
  Int l = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == 0) {
      if (coords[i] != 0) return 0;
      continue;
    }
    Int c = mod_floor(coords[i], orders[i]);
    if (c == 0) continue;
    Int o = orders[i] / boost::multiprecision::gcd(c, orders[i]);
    l = l / boost::multiprecision::gcd(l, o) * o;
  }
  return l;
}

std::string Relation::text() const { return lhs.text + " = " + rhs.text; }

bool Relation::consistent() const {
  auto reduce = [&](const std::vector<Int>& c) {
    std::vector<Int> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = group[i] == 0 ? c[i] : mod_floor(c[i], group[i]);
    return out;
  };
  for (const auto* side : {&lhs, &rhs})
    if (side->coords && side->coords->size() != group.size()) return false;
  if (lhs.coords && rhs.coords) return reduce(*lhs.coords) == reduce(*rhs.coords);
  auto bounded = [&](const RelationSide& explicit_side, const RelationSide& other) {
    if (!explicit_side.coords || !other.order_divides) return true;
    Int o = element_order(group, *explicit_side.coords);
    return o != 0 && *other.order_divides % o == 0;
  };
  return bounded(lhs, rhs) && bounded(rhs, lhs);
}

FgAbGroup HomotopyEntry::group() const {
  DisplaySum s;
  for (const auto& o : summands) s.add(o);
  return s.group();
}

DimExpr DimExpr::parse(std::string_view s) {
  DimExpr e;
  if (s.empty()) throw std::invalid_argument("empty dimension expression");
  if (s[0] == 'n') {
    e.uses_n = true;
    s.remove_prefix(1);
    if (s.empty()) return e;
    if (s[0] != '+') throw std::invalid_argument("dimension expression must be n or n+k");
    s.remove_prefix(1);
  }
  e.offset = std::stoi(std::string(s));
  return e;
}

std::string DimExpr::to_string() const {
  if (!uses_n) return std::to_string(offset);
  return offset == 0 ? "n" : "n+" + std::to_string(offset);
}

bool TableRow::prime_matches(const Int& p) const {
  if (prime_rule == "2") return p == 2;
  if (prime_rule == "3") return p == 3;
  if (prime_rule == "odd") return p % 2 == 1;
  if (prime_rule == ">=5") return p >= 5;
  return false;
}

HomotopyTable HomotopyTable::parse(std::string_view text) {
  json doc = json::parse(text);
  HomotopyTable t;
  for (const auto& e : doc.at("entries")) {
    TableRow row;
    row.id = e.at("id").get<std::string>();
    try {
      const auto& sp = e.at("space");
      row.kind = parse_kind(sp.at("kind").get<std::string>());
      row.dim = DimExpr::parse(scalar_string(sp.at("dim")));
      if (row.kind == Space::Kind::Moore) {
        row.prime_rule = scalar_string(sp.at("prime"));
        if (sp.contains("r_min")) row.r_min = sp["r_min"].get<unsigned>();
        if (sp.contains("r_max")) row.r_max = sp["r_max"].get<unsigned>();
      }
      row.source = DimExpr::parse(scalar_string(e.at("source")));
      if (row.dim.uses_n != row.source.uses_n)
        throw std::invalid_argument("space and source must both depend on n or both be constant");
      if (e.contains("n_min")) row.n_min = e["n_min"].get<int>();
      if (e.contains("n_max")) row.n_max = e["n_max"].get<int>();
      row.summands = parse_group(e.at("group"));
      row.generators = e.at("generators").get<std::vector<std::string>>();
      if (row.generators.size() != row.summands.size())
        throw std::invalid_argument("one generator per cyclic summand expected");
      if (e.contains("relations")) {
        for (const auto& r : e["relations"]) {
          Relation rel;
          rel.lhs = parse_side(r.at("lhs"));
          rel.rhs = parse_side(r.at("rhs"));
          rel.group = r.contains("in") ? parse_group(r["in"]) : row.summands;
          if (r.contains("symbols")) rel.symbols = r["symbols"].get<std::vector<std::string>>();
          if (r.contains("note")) rel.note = r["note"].get<std::string>();
          row.relations.push_back(std::move(rel));
        }
      }
    } catch (const std::exception& ex) {
      throw std::invalid_argument("homotopy table entry '" + row.id + "': " + ex.what());
    }
    t.rows_.push_back(std::move(row));
  }
  return t;
}

const HomotopyTable& HomotopyTable::builtin() {
  static const HomotopyTable table = parse(detail::kHomotopyTableJson);
  return table;
}

std::optional<HomotopyEntry> HomotopyTable::lookup(int source_dim, const Space& target) const {
  std::optional<std::pair<Int, unsigned>> pp;
  if (target.kind == Space::Kind::Moore) {
    pp = prime_power_of(target.order);
    if (!pp) return std::nullopt;
  }
  for (const auto& row : rows_) {
    if (row.kind != target.kind) continue;
    if (row.kind == Space::Kind::Moore) {
      if (!row.prime_matches(pp->first) || pp->second < row.r_min) continue;
      if (row.r_max && pp->second > *row.r_max) continue;
    }
    if (row.dim.uses_n) {
      int n = target.dim - row.dim.offset;
      if (n < row.n_min || (row.n_max && n > *row.n_max)) continue;
      if (source_dim != n + row.source.offset) continue;
    } else if (target.dim != row.dim.offset || source_dim != row.source.offset) {
      continue;
    }
    return HomotopyEntry{row.id, source_dim, target, row.summands, row.generators, row.relations};
  }
  return std::nullopt;
}

std::optional<HomotopyEntry> lookup(int source_dim, const Space& target) {
  return HomotopyTable::builtin().lookup(source_dim, target);
}

std::vector<Relation> relations_for(const HomotopyEntry& entry) { return entry.relations; }

}  // namespace manicoh
