#include "manicoh/splitting.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>

namespace manicoh {

namespace {

Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

struct Flat {
  std::vector<Int> values;
  std::vector<Int> moduli;
  std::vector<std::size_t> offsets;  // per block
};

Flat flatten(const AttachingVector& v) {
  Flat f;
  for (const auto& b : v.blocks) {
    f.offsets.push_back(f.values.size());
    for (const auto& e : b.entries) {
      f.values.push_back(e);
      f.moduli.push_back(b.modulus);
    }
  }
  return f;
}

AttachingVector unflatten(const AttachingVector& shape, const std::vector<Int>& values) {
  AttachingVector out = shape;
  std::size_t pos = 0;
  for (auto& b : out.blocks)
    for (auto& e : b.entries) e = mod_floor(values[pos++], b.modulus);
  return out;
}

std::size_t block_index(const AttachingVector& v, std::string_view name) {
  for (std::size_t i = 0; i < v.blocks.size(); ++i)
    if (v.blocks[i].name == name) return i;
  throw std::out_of_range("no attaching block '" + std::string(name) + "'");
}

std::optional<MooreDirection> moore_direction(int n, std::string_view block) {
  for (const auto& info : block_info(n))
    if (info.name == block) return info.moore;
  return std::nullopt;
}

bool transfer_allowed(MooreDirection dir, unsigned r_src, unsigned r_dst) {
  return dir == MooreDirection::TowardMin ? r_src <= r_dst : r_src >= r_dst;
}

bool is_paired_block(int n, std::string_view name) { return n == 4 && (name == "z1" || name == "z2"); }

void normalize_plain(std::vector<Int>& e, const Int& m) {
  if (e.empty()) return;
  if (e.size() == 1) {
    Int v = mod_floor(e[0], m);
    e[0] = std::min(v, Int(mod_floor(m - v, m)));
    return;
  }
  Int g = m;
  for (const auto& v : e) g = gcd_int(g, v);
  std::fill(e.begin(), e.end(), Int(0));
  e[0] = mod_floor(g, m);
}

// Returns the exponent of the surviving slot, 0 when the block vanishes.
unsigned normalize_moore(std::vector<Int>& e, const Int& m, const std::vector<unsigned>& exps, MooreDirection dir) {
  if (e.size() != exps.size()) throw std::invalid_argument("Moore block length differs from the 3-primary factor count");
  std::optional<unsigned> target;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (mod_floor(e[i], m) == 0) continue;
    if (!target || (dir == MooreDirection::TowardMin ? exps[i] < *target : exps[i] > *target)) target = exps[i];
  }
  std::fill(e.begin(), e.end(), Int(0));
  if (!target) return 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (exps[i] == *target) {
      e[i] = 1;
      break;
    }
  return *target;
}

// n = 4: y, z¹, z² are coupled through the paired and inclusion moves.
void normalize_coupled(std::vector<Int>& y, std::vector<Int>& z1, std::vector<Int>& z2) {
  normalize_plain(y, 2);
  const bool y_nonzero = std::any_of(y.begin(), y.end(), [](const Int& v) { return v != 0; });
  const std::size_t c = z1.size();
  if (c == 0) return;
  for (auto& v : z1) v = mod_floor(v, 24);
  for (auto& v : z2) v = mod_floor(v, 2);
  if (y_nonzero) {
    normalize_plain(z1, 24);
    std::fill(z2.begin(), z2.end(), Int(0));
    return;
  }
  if (c == 1) {
    normalize_plain(z1, 24);
    return;
  }
  Int d = 24;
  for (const auto& v : z1) d = gcd_int(d, v);
  const bool z2_zero = std::all_of(z2.begin(), z2.end(), [](const Int& v) { return v == 0; });
  std::vector<Int> out2(c, Int(0));
  if ((24 / d) % 2 == 1) {
    if (!z2_zero) out2[0] = 1;
  } else {
    std::vector<Int> u(c);
    for (std::size_t i = 0; i < c; ++i) u[i] = (z1[i] / d) % 2;
    if (!z2_zero) {
      if (z2 == u) {
        out2[0] = 1;
      } else {
        out2[1] = 1;
      }
    }
  }
  std::fill(z1.begin(), z1.end(), Int(0));
  z1[0] = mod_floor(d, 24);
  z2 = std::move(out2);
}

std::vector<std::vector<std::string>> coupled_components(int n, const AttachingVector& v) {
  std::vector<std::vector<std::string>> out;
  for (const auto& b : v.blocks) {
    if (n == 4 && (b.name == "z1" || b.name == "z2")) continue;
    if (n == 4 && b.name == "y") {
      out.push_back({"y", "z1", "z2"});
      continue;
    }
    out.push_back({b.name});
  }
  return out;
}

bool reversed_block_less(const std::vector<Int>& a, const std::vector<Int>& b,
                         const std::vector<std::size_t>& lengths) {
  std::size_t start = 0;
  for (auto len : lengths) {
    for (std::size_t i = start + len; i-- > start;)
      if (a[i] != b[i]) return a[i] < b[i];
    start += len;
  }
  return false;
}

std::string space_list(const std::vector<Space>& spaces) {
  std::string s;
  for (const auto& sp : spaces) s += (s.empty() ? "" : " ∨ ") + sp.to_string();
  return s.empty() ? "∗" : s;
}

std::string map_name(int top_dim) {
  switch (top_dim) {
    case 7:
      return "ħ";
    case 9:
      return "φ";
    default:
      return "φ̃";
  }
}

void add_summand(std::vector<Summand>& out, const Space& s, long long mult) {
  if (mult <= 0) return;
  for (auto& x : out)
    if (x.space == s) {
      x.multiplicity += static_cast<unsigned>(mult);
      return;
    }
  out.push_back({s, static_cast<unsigned>(mult)});
}

// P^dim(T) or P^dim(T / Z/3^r) as a wedge of Moore spaces of prime-power order.
void add_moore(std::vector<Summand>& out, int dim, const TorsionGroup& t, unsigned drop_three_exponent) {
  bool dropped = drop_three_exponent == 0;
  for (const auto& f : t.factors) {
    if (!dropped && f.p == 3 && f.r == drop_three_exponent) {
      dropped = true;
      continue;
    }
    add_summand(out, Space::moore(dim, f.order()), 1);
  }
}

void add_group(std::map<int, FgAbGroup>& h, int degree, const FgAbGroup& g) {
  if (g.is_trivial()) return;
  h[degree] = h[degree] + g;
}

void add_space_homology(std::map<int, FgAbGroup>& h, const Space& s, unsigned mult) {
  for (unsigned i = 0; i < mult; ++i) {
    switch (s.kind) {
      case Space::Kind::Sphere:
        add_group(h, s.dim, FgAbGroup::free(1));
        break;
      case Space::Kind::Moore:
        add_group(h, s.dim - 1, FgAbGroup::cyclic(s.order));
        break;
      case Space::Kind::Chang:
        add_group(h, s.dim - 2, FgAbGroup::free(1));
        add_group(h, s.dim, FgAbGroup::free(1));
        break;
    }
  }
}

std::string multiplicity_prefix(unsigned m) { return m == 1 ? "" : std::to_string(m) + "×"; }

}  // namespace

std::string move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::Add:
      return "add";
    case MoveKind::Negate:
      return "negate";
    case MoveKind::MooreTransfer:
      return "moore-transfer";
    case MoveKind::PairAdd:
      return "pair-add";
    case MoveKind::PairNegate:
      return "pair-negate";
    case MoveKind::Inclusion:
      return "inclusion";
  }
  return {};
}

std::vector<BlockInfo> block_info(int n) {
  using MD = MooreDirection;
  switch (n) {
    case 2:
      return {{"x", "ν′", 6, Space::sphere(3), 0, {}},
              {"y", "η₅", 6, Space::sphere(5), 0, {}},
              {"z", "i₃α", 6, std::nullopt, 0, MD::TowardMin},
              {"w", "i₃^ην′", 6, Space::chang(5), 0, {}}};
    case 3:
      return {{"x", "ν₅", 8, Space::sphere(5), 0, {}},
              {"y", "η₄ν₅", 8, Space::sphere(4), 1, {}},
              {"z", "i₄^ην₄η₇", 8, Space::chang(6), 0, {}},
              {"u", "Σ²α̃", 8, Space::moore(5, 3), 0, MD::TowardMin},
              {"w", "i₅Σ²α", 8, Space::moore(6, 3), 0, MD::TowardMax}};
    case 4:
      return {{"x", "ν₇", 10, Space::sphere(7), 0, {}},
              {"y", "ν₅η²", 10, std::nullopt, 0, {}},
              {"z1", "Σν̃₆", 10, Space::chang(7), 0, {}},
              {"z2", "i₅^ην₅η²", 10, Space::chang(7), 1, {}},
              {"w", "Σ⁴α̃", 10, Space::moore(7, 3), 0, MD::TowardMin}};
    default:
      throw std::invalid_argument("n must be 2, 3 or 4");
  }
}

std::vector<MoveRule> move_set(int n) {
  std::vector<MoveRule> rules;
  for (const auto& info : block_info(n)) {
    if (is_paired_block(n, info.name)) continue;
    if (info.moore) {
      const bool to_min = *info.moore == MooreDirection::TowardMin;
      rules.push_back({MoveKind::MooreTransfer, info.name, info.name, info.moore,
                       std::string("add ±entry_i to entry_j when r_i ") + (to_min ? "≤" : "≥") +
                           " r_j; support collects at the " + (to_min ? "minimal" : "maximal") + " exponent"});
    } else {
      rules.push_back({MoveKind::Add, info.name, info.name, std::nullopt, "add ±entry_j to entry_i, i ≠ j"});
    }
    rules.push_back({MoveKind::Negate, info.name, info.name, std::nullopt, "negate one entry"});
  }
  if (n == 4) {
    rules.push_back({MoveKind::PairAdd, "z1", "z2", std::nullopt, "add ±(z¹_j, z²_j) to (z¹_i, z²_i), i ≠ j"});
    rules.push_back({MoveKind::PairNegate, "z1", "z2", std::nullopt, "(z¹_i, z²_i) ↦ (−z¹_i, z²_i)"});
    rules.push_back({MoveKind::Inclusion, "z2", "y", std::nullopt, "add y_j to z²_i through S⁵ → C⁷_η"});
  }
  return rules;
}

std::vector<ElementaryMove> elementary_moves(const AttachingVector& shape) {
  std::vector<ElementaryMove> moves;
  const Flat f = flatten(shape);
  const int n = shape.n;
  for (std::size_t b = 0; b < shape.blocks.size(); ++b) {
    const auto& blk = shape.blocks[b];
    if (is_paired_block(n, blk.name)) continue;
    const std::size_t off = f.offsets[b];
    const std::size_t len = blk.entries.size();
    const auto dir = moore_direction(n, blk.name);
    for (std::size_t i = 0; i < len; ++i) {
      moves.push_back({MoveKind::Negate, {}, {off + i}, "negate " + blk.name + "[" + std::to_string(i) + "]"});
      for (std::size_t j = 0; j < len; ++j) {
        if (i == j) continue;
        if (dir && !transfer_allowed(*dir, shape.three_exponents.at(j), shape.three_exponents.at(i))) continue;
        const MoveKind kind = dir ? MoveKind::MooreTransfer : MoveKind::Add;
        for (int sign : {1, -1})
          moves.push_back({kind, {{off + i, off + j, sign}}, {},
                           blk.name + "[" + std::to_string(i) + "] " + (sign > 0 ? "+=" : "-=") + " " + blk.name + "[" +
                               std::to_string(j) + "]"});
      }
    }
  }
  if (n == 4) {
    const std::size_t o1 = f.offsets[block_index(shape, "z1")];
    const std::size_t o2 = f.offsets[block_index(shape, "z2")];
    const std::size_t oy = f.offsets[block_index(shape, "y")];
    const std::size_t c = shape.block("z1").entries.size();
    const std::size_t ly = shape.block("y").entries.size();
    for (std::size_t i = 0; i < c; ++i) {
      moves.push_back({MoveKind::PairNegate, {}, {o1 + i}, "negate pair " + std::to_string(i)});
      for (std::size_t j = 0; j < c; ++j) {
        if (i == j) continue;
        for (int sign : {1, -1})
          moves.push_back({MoveKind::PairAdd, {{o1 + i, o1 + j, sign}, {o2 + i, o2 + j, sign}}, {},
                           "pair " + std::to_string(i) + (sign > 0 ? " += " : " -= ") + "pair " + std::to_string(j)});
      }
      for (std::size_t j = 0; j < ly; ++j)
        moves.push_back({MoveKind::Inclusion, {{o2 + i, oy + j, 1}}, {},
                         "z2[" + std::to_string(i) + "] += y[" + std::to_string(j) + "]"});
    }
  }
  return moves;
}

AttachingVector apply_move(const AttachingVector& v, const ElementaryMove& m) {
  Flat f = flatten(v);
  std::vector<Int> next = f.values;
  for (const auto& a : m.adds) next[a.dst] += a.sign * f.values[a.src];
  for (auto i : m.negations) next[i] = -next[i];
  return unflatten(v, next);
}

bool canonical_less(const AttachingVector& a, const AttachingVector& b) {
  if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size();
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    const auto& x = a.blocks[k].entries;
    const auto& y = b.blocks[k].entries;
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = x.size(); i-- > 0;)
      if (x[i] != y[i]) return x[i] < y[i];
  }
  return false;
}

NormalizedAttachment normalize(const AttachingVector& v) {
  NormalizedAttachment out;
  out.vector = v;
  auto& w = out.vector;
  for (auto& b : w.blocks)
    for (auto& e : b.entries) e = mod_floor(e, b.modulus);
  const auto infos = block_info(v.n);
  if (infos.size() != w.blocks.size()) throw std::invalid_argument("attaching vector does not match the n = " + std::to_string(v.n) + " schema");
  for (std::size_t i = 0; i < infos.size(); ++i)
    if (infos[i].name != w.blocks[i].name) throw std::invalid_argument("attaching block order does not match the schema");

  for (auto& b : w.blocks) {
    if (is_paired_block(v.n, b.name) || (v.n == 4 && b.name == "y")) continue;
    if (auto dir = moore_direction(v.n, b.name)) {
      unsigned r = normalize_moore(b.entries, b.modulus, w.three_exponents, *dir);
      if (*dir == MooreDirection::TowardMin) {
        out.r_j0 = r;
      } else {
        out.r_j1 = r;
      }
    } else {
      normalize_plain(b.entries, b.modulus);
    }
  }
  if (v.n == 4) normalize_coupled(w.block("y").entries, w.block("z1").entries, w.block("z2").entries);
  if (v.n == 3 && !w.block("x").entries.empty())
    out.delta = w.block("x").entries[0] % 2 == 0 ? 1u : 0u;
  return out;
}

std::vector<std::string> normal_form_violations(const AttachingVector& v) {
  std::vector<std::string> out;
  auto nonzero = [](const std::vector<Int>& e) {
    return static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [](const Int& x) { return x != 0; }));
  };
  for (const auto& b : v.blocks) {
    for (const auto& e : b.entries)
      if (e < 0 || e >= b.modulus) out.push_back(b.name + ": entry not reduced");
    if (nonzero(b.entries) > 1) out.push_back(b.name + ": more than one nonzero entry");
    if (is_paired_block(v.n, b.name) && b.name == "z2") continue;
    auto dir = moore_direction(v.n, b.name);
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
      if (b.entries[i] == 0) continue;
      if (dir) {
        if (b.entries[i] != 1) out.push_back(b.name + ": Moore coefficient is not 1");
        for (std::size_t j = 0; j < i; ++j)
          if (v.three_exponents[j] == v.three_exponents[i]) out.push_back(b.name + ": support is not the first slot of its exponent");
      } else {
        if (i != 0) out.push_back(b.name + ": support is not the first slot");
        if (b.entries.size() == 1 && b.entries[0] * 2 > b.modulus) out.push_back(b.name + ": value above half the modulus");
        if (b.entries.size() > 1 && b.modulus % b.entries[0] != 0) out.push_back(b.name + ": value is not a divisor of the modulus");
      }
    }
  }
  if (v.n == 4) {
    const auto& y = v.block("y").entries;
    const auto& z2 = v.block("z2").entries;
    const bool yn = nonzero(y) > 0;
    if (yn && nonzero(z2) > 0) out.push_back("z2: must vanish when y ≠ 0");
    for (std::size_t i = 2; i < z2.size(); ++i)
      if (z2[i] != 0) out.push_back("z2: support beyond the second slot");
  }
  return out;
}

std::vector<OrbitComponent> orbit_components(const AttachingVector& v, const OracleLimits& limits) {
  for (const auto& b : v.blocks)
    if (b.entries.size() > limits.max_block_entries)
      throw OracleRefused("block " + b.name + " has " + std::to_string(b.entries.size()) +
                          " entries; the orbit oracle is limited to " + std::to_string(limits.max_block_entries));
  const Flat f = flatten(v);
  const auto moves = elementary_moves(v);
  std::vector<OrbitComponent> out;
  for (const auto& names : coupled_components(v.n, v)) {
    std::vector<std::size_t> idx;
    for (const auto& nm : names) {
      const std::size_t b = block_index(v, nm);
      for (std::size_t i = 0; i < v.blocks[b].entries.size(); ++i) idx.push_back(f.offsets[b] + i);
    }
    std::vector<std::size_t> local(f.values.size(), SIZE_MAX);
    for (std::size_t i = 0; i < idx.size(); ++i) local[idx[i]] = i;

    std::vector<int> mod(idx.size());
    std::vector<std::uint64_t> radix(idx.size());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      mod[i] = f.moduli[idx[i]].convert_to<int>();
      radix[i] = total;
      total *= static_cast<std::uint64_t>(mod[i]);
      if (total > limits.max_component_states)
        throw OracleRefused("component state space exceeds " + std::to_string(limits.max_component_states));
    }

    struct LocalMove {
      std::vector<ElementaryMove::Add> adds;
      std::vector<std::size_t> negs;
    };
    std::vector<LocalMove> lm;
    for (const auto& m : moves) {
      const bool inside = std::all_of(m.adds.begin(), m.adds.end(),
                                      [&](const auto& a) { return local[a.dst] != SIZE_MAX && local[a.src] != SIZE_MAX; }) &&
                          std::all_of(m.negations.begin(), m.negations.end(), [&](auto i) { return local[i] != SIZE_MAX; });
      if (!inside || (m.adds.empty() && m.negations.empty())) continue;
      LocalMove l;
      for (const auto& a : m.adds) l.adds.push_back({local[a.dst], local[a.src], a.sign});
      for (auto i : m.negations) l.negs.push_back(local[i]);
      lm.push_back(std::move(l));
    }

    auto decode = [&](std::uint64_t code, std::vector<int>& s) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = static_cast<int>(code % static_cast<std::uint64_t>(mod[i]));
        code /= static_cast<std::uint64_t>(mod[i]);
      }
    };
    auto encode = [&](const std::vector<int>& s) {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < s.size(); ++i) code += radix[i] * static_cast<std::uint64_t>(s[i]);
      return code;
    };

    std::vector<int> start(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) start[i] = mod_floor(f.values[idx[i]], f.moduli[idx[i]]).convert_to<int>();
    std::vector<std::uint8_t> seen(total, 0);
    std::deque<std::uint64_t> queue{encode(start)};
    seen[queue.front()] = 1;
    std::vector<std::uint64_t> orbit;
    std::vector<int> cur(idx.size()), next(idx.size());
    while (!queue.empty()) {
      const std::uint64_t code = queue.front();
      queue.pop_front();
      orbit.push_back(code);
      decode(code, cur);
      for (const auto& m : lm) {
        next = cur;
        for (const auto& a : m.adds) next[a.dst] = ((cur[a.dst] + a.sign * cur[a.src]) % mod[a.dst] + mod[a.dst]) % mod[a.dst];
        for (auto i : m.negs) next[i] = (mod[i] - next[i]) % mod[i];
        const std::uint64_t nc = encode(next);
        if (!seen[nc]) {
          seen[nc] = 1;
          queue.push_back(nc);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    OrbitComponent comp;
    comp.blocks = names;
    for (auto code : orbit) {
      decode(code, cur);
      comp.states.emplace_back(cur.begin(), cur.end());
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::set<AttachingVector> orbit_oracle(const AttachingVector& v, const OracleLimits& limits) {
  const auto comps = orbit_components(v, limits);
  std::size_t size = 1;
  for (const auto& c : comps) {
    size *= c.states.size();
    if (size > limits.max_orbit_size)
      throw OracleRefused("orbit has more than " + std::to_string(limits.max_orbit_size) + " elements");
  }
  std::set<AttachingVector> out;
  std::vector<std::size_t> pick(comps.size(), 0);
  for (;;) {
    AttachingVector w = v;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      std::size_t pos = 0;
      for (const auto& nm : comps[c].blocks)
        for (auto& e : w.block(nm).entries) e = comps[c].states[pick[c]][pos++];
    }
    out.insert(std::move(w));
    std::size_t c = 0;
    while (c < comps.size() && ++pick[c] == comps[c].states.size()) pick[c++] = 0;
    if (c == comps.size()) break;
  }
  return out;
}

AttachingVector oracle_canonical(const AttachingVector& v, const OracleLimits& limits) {
  AttachingVector w = v;
  for (const auto& comp : orbit_components(v, limits)) {
    std::vector<std::size_t> lengths;
    for (const auto& nm : comp.blocks) lengths.push_back(v.block(nm).entries.size());
    const auto best = std::min_element(comp.states.begin(), comp.states.end(),
                                       [&](const auto& a, const auto& b) { return reversed_block_less(a, b, lengths); });
    std::size_t pos = 0;
    for (const auto& nm : comp.blocks)
      for (auto& e : w.block(nm).entries) e = (*best)[pos++];
  }
  return w;
}

std::string Cofibre::to_string() const {
  const std::string top = "S" + superscript(static_cast<unsigned>(top_dim - 1));
  const std::string name = map_name(top_dim);
  if (codomain.empty()) return "S" + superscript(static_cast<unsigned>(top_dim)) + " (cofibre of " + top + " → ∗)";
  std::string s = "C_" + name + " (" + name + " = " + (expression.empty() ? "0" : expression) + ": " + top + " → " +
                  space_list(codomain) + ")";
  if (splits_further)
    s += " [splits further into S" + superscript(static_cast<unsigned>(top_dim)) + " ∨ " + space_list(codomain) + "]";
  return s;
}

std::string WedgeDecomposition::to_string() const {
  std::string s;
  for (const auto& x : summands) s += multiplicity_prefix(x.multiplicity) + x.space.to_string() + " ∨ ";
  return s + cofibre.to_string();
}

std::size_t WedgeDecomposition::count(const Space& sp) const {
  for (const auto& x : summands)
    if (x.space == sp) return x.multiplicity;
  return 0;
}

WedgeDecomposition suspension_splitting(const ManifoldDescriptor& d) {
  require_valid(d);
  WedgeDecomposition w;
  w.n = d.n;
  const NormalizedAttachment na = normalize(d.attach);
  const long long free_part = static_cast<long long>(d.l) - static_cast<long long>(d.c);
  const long long k = d.k;
  const long long c = d.c;
  auto& s = w.summands;
  std::vector<Space> cod;
  switch (d.n) {
    case 2:
      add_summand(s, Space::sphere(3), free_part - 1);
      add_summand(s, Space::sphere(5), free_part - 1);
      add_summand(s, Space::sphere(4), k);
      add_moore(s, 4, d.torsion, na.r_j0);
      add_moore(s, 5, d.torsion, 0);
      add_summand(s, Space::chang(5), c - 1);
      if (free_part >= 1) {
        cod.push_back(Space::sphere(3));
        cod.push_back(Space::sphere(5));
      }
      if (na.r_j0 > 0) cod.push_back(Space::moore(4, Int(boost::multiprecision::pow(Int(3), na.r_j0))));
      if (c >= 1) cod.push_back(Space::chang(5));
      break;
    case 3:
      add_summand(s, Space::sphere(5), k - 1);
      add_summand(s, Space::sphere(4), free_part - 1);
      add_summand(s, Space::sphere(6), free_part);
      add_summand(s, Space::chang(6), c - 1);
      add_moore(s, 5, d.torsion, na.r_j0);
      add_moore(s, 6, d.torsion, na.r_j1);
      if (k >= 1) cod.push_back(Space::sphere(5));
      if (free_part >= 1) cod.push_back(Space::sphere(4));
      if (c >= 1) cod.push_back(Space::chang(6));
      if (na.r_j0 > 0) cod.push_back(Space::moore(5, Int(boost::multiprecision::pow(Int(3), na.r_j0))));
      if (na.r_j1 > 0) cod.push_back(Space::moore(6, Int(boost::multiprecision::pow(Int(3), na.r_j1))));
      break;
    case 4:
      add_summand(s, Space::sphere(6), k);
      add_summand(s, Space::sphere(5), free_part - 1);
      add_summand(s, Space::sphere(7), free_part - 1);
      add_summand(s, Space::chang(7), c - 2);
      add_moore(s, 6, d.torsion, 0);
      add_moore(s, 7, d.torsion, na.r_j0);
      if (free_part >= 1) {
        cod.push_back(Space::sphere(7));
        cod.push_back(Space::sphere(5));
      }
      for (long long i = 0; i < std::min<long long>(c, 2); ++i) cod.push_back(Space::chang(7));
      if (na.r_j0 > 0) cod.push_back(Space::moore(7, Int(boost::multiprecision::pow(Int(3), na.r_j0))));
      break;
  }
  w.cofibre.top_dim = 2 * d.n + 3;
  w.cofibre.codomain = std::move(cod);
  w.cofibre.attach = na;
  w.cofibre.splits_further = na.is_zero();

  const auto infos = block_info(d.n);
  std::string expr;
  for (std::size_t b = 0; b < na.vector.blocks.size(); ++b) {
    const auto& blk = na.vector.blocks[b];
    for (std::size_t i = 0; i < blk.entries.size(); ++i) {
      if (blk.entries[i] == 0) continue;
      std::string term = (blk.entries[i] == 1 ? "" : blk.entries[i].str() + "·") + infos[b].generator;
      if (blk.entries.size() > 1) term += "[" + std::to_string(i + 1) + "]";
      expr += (expr.empty() ? "" : " + ") + term;
    }
  }
  w.cofibre.expression = expr;
  return w;
}

std::map<int, FgAbGroup> wedge_homology(const WedgeDecomposition& w) {
  std::map<int, FgAbGroup> h;
  for (const auto& s : w.summands) add_space_homology(h, s.space, s.multiplicity);
  for (const auto& s : w.cofibre.codomain) add_space_homology(h, s, 1);
  add_group(h, w.cofibre.top_dim, FgAbGroup::free(1));
  return h;
}

HomologyCheck homology_check(const WedgeDecomposition& w, const ManifoldDescriptor& d) {
  HomologyCheck out;
  const auto wedge = wedge_homology(w);
  const auto hm = homology_table(d);
  const int top = d.top_degree() + 1;
  for (int i = 1; i <= top; ++i) {
    const FgAbGroup expected = hm.count(i - 1) && i - 1 > 0 ? hm.at(i - 1) : FgAbGroup{};
    const FgAbGroup got = wedge.count(i) ? wedge.at(i) : FgAbGroup{};
    if (!(expected == got))
      out.mismatches.push_back("degree " + std::to_string(i) + ": wedge has " + got.to_string() + ", H_" +
                               std::to_string(i - 1) + "(M) is " + expected.to_string());
  }
  for (const auto& [deg, g] : wedge)
    if (deg < 1 || deg > top) out.mismatches.push_back("degree " + std::to_string(deg) + ": wedge has stray " + g.to_string());
  out.ok = out.mismatches.empty();
  return out;
}

}  // namespace manicoh
