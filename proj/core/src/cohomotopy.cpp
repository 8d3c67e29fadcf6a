#include "manicoh/cohomotopy.hpp"

#include "manicoh/splitting.hpp"

#include <set>

namespace manicoh {

CohomotopyResult CohomotopyResult::exact(int degree, GroupValue g, std::string provenance) {
  CohomotopyResult r;
  r.kind = Kind::ExactGroup;
  r.degree = degree;
  r.group = std::move(g);
  r.provenance = std::move(provenance);
  return r;
}

CohomotopyResult CohomotopyResult::extension_of(int degree, SesDescriptor s) {
  CohomotopyResult r;
  r.kind = Kind::Extension;
  r.degree = degree;
  r.provenance = s.provenance;
  r.extension = std::move(s);
  return r;
}

CohomotopyResult CohomotopyResult::torsor(int degree, int over, std::string provenance) {
  CohomotopyResult r;
  r.kind = Kind::TorsorOver;
  r.degree = degree;
  r.torsor_degree = over;
  r.provenance = std::move(provenance);
  return r;
}

CohomotopyResult CohomotopyResult::statement(int degree, std::string key, std::string text) {
  CohomotopyResult r;
  r.kind = Kind::StructuralStatement;
  r.degree = degree;
  r.key = std::move(key);
  r.text = std::move(text);
  return r;
}

CohomotopyResult CohomotopyResult::unknown(int degree, std::string key, std::string text) {
  CohomotopyResult r;
  r.kind = Kind::Unknown;
  r.degree = degree;
  r.key = std::move(key);
  r.text = std::move(text);
  return r;
}

std::string kind_name(CohomotopyResult::Kind k) {
  using K = CohomotopyResult::Kind;
  switch (k) {
    case K::ExactGroup: return "exact";
    case K::Extension: return "extension";
    case K::TorsorOver: return "torsor";
    case K::StructuralStatement: return "statement";
    case K::Unknown: return "unknown";
  }
  return "unknown";
}

std::string liftable_name(Liftable l) {
  switch (l) {
    case Liftable::Yes: return "yes";
    case Liftable::No: return "no";
    case Liftable::NeedsOracle: return "needs-oracle";
  }
  return "needs-oracle";
}

namespace {

const FgAbGroup kZ2 = FgAbGroup::cyclic(2);

FgAbGroup z2_power(long long e) { return e > 0 ? kZ2.power(static_cast<unsigned>(e)) : FgAbGroup{}; }

// [P^{m+2}(q), S^m] in the stable range: 0 at odd primes, Z/4 for 2‖q, (Z/2)² for 4 | q.
// q = 0 stands for the wedge S^{m+1} ∨ S^{m+2}.
FgAbGroup moore_into_sphere_two_above(const Int& q) {
  if (q == 0 || q % 4 == 0) return kZ2.power(2);
  if (q % 2 == 0) return FgAbGroup::cyclic(4);
  return {};
}

FgAbGroup cohomology(const ManifoldDescriptor& d, int degree) {
  const auto h = cohomology_table(d, 0);
  return h.count(degree) ? h.at(degree) : FgAbGroup{};
}

// Candidates fixed ⊕ E over every E in middle_groups(sub, quot) and every sub.
std::vector<FgAbGroup> constrained_middles(const std::vector<FgAbGroup>& subs, const FgAbGroup& quot,
                                           const FgAbGroup& fixed) {
  std::set<FgAbGroup> out;
  for (const auto& s : subs)
    for (const auto& e : middle_groups({s, quot})) out.insert(fixed + e);
  return {out.begin(), out.end()};
}

CohomotopyResult from_stable(int degree, const StableValue& v) {
  if (v.kind == StableValue::Kind::Group) return CohomotopyResult::exact(degree, v.group, "stable range");
  return CohomotopyResult::extension_of(degree, v.ses);
}

CohomotopyResult trivial(int degree) {
  return CohomotopyResult::exact(degree, GroupValue::of(FgAbGroup{}), "vanishing range");
}

CohomotopyResult top(int degree) {
  return CohomotopyResult::exact(degree, GroupValue::of(FgAbGroup::free(1)), "top degree");
}

CohomotopyResult eta_bijection(int degree) {
  auto r = CohomotopyResult::statement(degree, "eta-bijection",
                                       "η♯: π³(M) → π²(M) is a bijection of sets");
  r.torsor_degree = 3;
  r.data["partner_degree"] = "3";
  r.provenance = "composition with η";
  return r;
}

CohomotopyResult pi4_unknown(int degree) { return CohomotopyResult::unknown(degree, "pi4-unstable", kPi4Reason); }

CohomotopyResult degree_n2(const ManifoldDescriptor& d, int i) {
  if (i == 1 || i > 6) return trivial(i);
  if (i == 6) return top(i);
  if (i == 5 || i == 4) return from_stable(i, corollary34(d).at(i));
  if (i == 3) {
    if (d.k == 0 && d.l == 0) {
      const FgAbGroup t = d.torsion.group();
      auto r = CohomotopyResult::exact(3, GroupValue::of(t + FgAbGroup::cyclic(12),
                                                          DisplaySum().add(t).add(12).to_string()),
                                       "degree 3, no free homology");
      return r;
    }
    return CohomotopyResult::extension_of(3, pi3_extension_n2(d));
  }
  return CohomotopyResult::torsor(2, 3, "free transitive action of π³");
}

CohomotopyResult degree_n3(const ManifoldDescriptor& d, int i) {
  if (i == 1 || i > 8) return trivial(i);
  if (i == 8) return top(i);
  if (i == 2) return eta_bijection(i);
  if (i == 4) return pi4_unknown(i);
  if (i == 6 || i == 7) return from_stable(i, corollary34(d).at(i));
  if (i == 5) {
    const auto ses = corollary34(d).at(5).ses;
    DisplaySum display;
    display.add(*ses.quot.known).add(*ses.sub.known);
    auto r = CohomotopyResult::exact(5, GroupValue::of(*ses.middle, display.to_string()), "degree 5, split");
    r.data["G24"] = ses.sub.known->to_string();
    const auto c = g24_coefficients(d);
    r.data["x"] = c.x.str();
    r.data["u"] = c.u.str();
    r.data["w"] = c.w.str();
    return r;
  }
  // i == 3
  const auto g = pi3_g_extension_n3(d);
  const FgAbGroup fixed = cohomology(d, 3) + z2_power(static_cast<long long>(d.l) - d.c);
  if (g.middle) {
    DisplaySum display;
    display.add(cohomology(d, 3)).add(2, d.l - d.c).add(*g.middle);
    auto r = CohomotopyResult::exact(3, GroupValue::of(fixed + *g.middle, display.to_string()), g.provenance);
    r.notes = g.notes;
    r.data["G"] = g.middle->to_string();
    return r;
  }
  SesDescriptor s = g;
  s.quot = GroupValue::of(fixed + *g.quot.known);
  s.middle_candidates = constrained_middles({*g.sub.known}, *g.quot.known, fixed);
  s.notes.push_back("H³(M) ⊕ (Z/2)^{l−c} splits off");
  return CohomotopyResult::extension_of(3, std::move(s));
}

CohomotopyResult degree_n4(const ManifoldDescriptor& d, int i) {
  if (i == 1 || i > 10) return trivial(i);
  if (i == 10) return top(i);
  if (i == 2) return eta_bijection(i);
  if (i == 4) return pi4_unknown(i);
  if (i == 5) return pi5_fiber_report(d);
  if (i >= 6) return from_stable(i, corollary34(d).at(i));
  // i == 3
  const unsigned a = d.k + d.l - d.c;
  const unsigned b = d.l - d.c;
  DisplaySum display;
  display.add(2, a).add(12, b).add(6, d.c).add(tensor(d.torsion.group(), 3));
  return CohomotopyResult::exact(3, GroupValue::of(display.group(), display.to_string()), "degree 3 closed form");
}

}  // namespace

SesDescriptor pi3_extension_n2(const ManifoldDescriptor& d) {
  require_valid(d);
  if (d.n != 2) throw UnsupportedDegree("the G₁₂ extension is for n = 2");
  const FgAbGroup t = d.torsion.group();
  const long long a = static_cast<long long>(d.l) - d.c - d.epsilon();
  const FgAbGroup two_part = z2_power(a);
  SesDescriptor s;
  s.provenance = "degree 3, n = 2";
  s.sub = GroupValue::symbolic("G₁₂ ⊕ T", "coefficient formula for G₁₂");
  for (const auto& g : subgroup_types(FgAbGroup::cyclic(12))) s.sub_candidates.push_back(g + t);
  s.quot = GroupValue::of(FgAbGroup::free(d.k) + two_part, DisplaySum().add(0, d.k).add(2, a > 0 ? a : 0).to_string());
  s.split = SplitStatus::Unknown;
  // The (Z/2)^{l−c−ε} quotient has a section and the action on T is trivial, so
  // both split off; the free quotient then splits from the remaining abelian extension.
  std::set<FgAbGroup> out;
  for (const auto& g : subgroup_types(FgAbGroup::cyclic(12)))
    for (const auto& e : constrained_middles({g}, FgAbGroup::free(d.k), t + two_part)) out.insert(e);
  s.middle_candidates.assign(out.begin(), out.end());
  s.notes.push_back("π³(M) → (Z/2)^{l−c−ε} admits a splitting section");
  s.notes.push_back("the quotient acts trivially on T");
  s.notes.push_back("abelian candidates only; π³(M) need not be abelian");
  return s;
}

SesDescriptor pi3_g_extension_n3(const ManifoldDescriptor& d) {
  require_valid(d);
  if (d.n != 3) throw UnsupportedDegree("the group G of degree 3 is for n = 3");
  const Int x = g24_coefficients(d).x;
  // δ = 1 exactly when the S⁵ summand carrying x exists and ην₅ is not hit, i.e. x is even
  const unsigned delta = d.k >= 1 && x % 2 == 0 ? 1 : 0;
  SesDescriptor s;
  s.provenance = "degree 3, n = 3";
  s.sub = GroupValue::of(kZ2);
  s.quot = GroupValue::of(z2_power(static_cast<long long>(d.k) - 1 + delta));
  s.split = SplitStatus::Unknown;
  s.notes.push_back("δ = " + std::to_string(delta) + " from the parity of x");
  if (d.k == 1 && d.l == 0 && d.torsion.factors.empty() && delta == 1) {
    // M = S⁴ ∪ e⁸ with x even: ΣM ≃ C_{x·ν₅} and G ≅ [P⁶(x), BS³] ≅ [P⁵(x), S³]
    const FgAbGroup g = moore_into_sphere_two_above(x);
    s.split = g == kZ2.power(2) ? SplitStatus::Yes : SplitStatus::No;
    s.notes.push_back("G ≅ [P⁵(x), S³] = " + g.to_string());
  }
  s.resolve_middle();
  return s;
}

CohomotopyResult compute_degree(const ManifoldDescriptor& d, int degree) {
  if (degree <= 0) throw std::invalid_argument("cohomotopy degree must be positive, got " + std::to_string(degree));
  require_valid(d);
  switch (d.n) {
    case 2: return degree_n2(d, degree);
    case 3: return degree_n3(d, degree);
    case 4: return degree_n4(d, degree);
  }
  throw UnsupportedDegree("n must be 2, 3 or 4");
}

std::map<int, CohomotopyResult> compute_all(const ManifoldDescriptor& d) {
  std::map<int, CohomotopyResult> out;
  for (int i = 1; i <= d.top_degree(); ++i) out.emplace(i, compute_degree(d, i));
  return out;
}

std::vector<std::string> consistency_mismatches(const ManifoldDescriptor& d) {
  using K = CohomotopyResult::Kind;
  std::vector<std::string> out;
  const auto all = compute_all(d);
  for (const auto& [i, v] : corollary34(d)) {
    if (v.kind == StableValue::Kind::NotCovered || !all.count(i)) continue;
    const auto& r = all.at(i);
    const std::string where = "π" + superscript(static_cast<unsigned>(i)) + ": ";
    bool same = false;
    if (v.kind == StableValue::Kind::Group && r.kind == K::ExactGroup) {
      same = v.group == r.group;
    } else if (v.kind == StableValue::Kind::Ses && r.kind == K::Extension) {
      same = v.ses.sub == r.extension.sub && v.ses.quot == r.extension.quot && v.ses.split == r.extension.split &&
             v.ses.middle == r.extension.middle && v.ses.middle_candidates == r.extension.middle_candidates;
    } else if (v.kind == StableValue::Kind::Ses && r.kind == K::ExactGroup) {
      same = v.ses.middle && r.group.known && *v.ses.middle == *r.group.known;
    }
    if (!same)
      out.push_back(where + "stable value " + (v.kind == StableValue::Kind::Group ? v.group.to_string() : "extension") +
                    " vs " + kind_name(r.kind) + " " + (r.kind == K::ExactGroup ? r.group.to_string() : ""));
  }
  return out;
}

Liftable pi2_liftable(const ManifoldDescriptor& d, const std::vector<Int>& u, const std::optional<ThetaOracle>& theta) {
  if (d.n != 2) throw UnsupportedDegree("π² lifting is for n = 2");
  const Presentation h2 = cohomology_presentation(d, 2, 0);
  if (u.size() != h2.generators)
    throw std::invalid_argument("class has " + std::to_string(u.size()) + " coordinates, H²(M) has " +
                                std::to_string(h2.generators) + " generators");
  bool zero = true;
  for (const auto& c : u) zero = zero && c == 0;
  if (zero) return Liftable::Yes;

  if (!d.steenrod || !d.steenrod->cup_products) throw PreconditionError("needs cup products on H²(M)");
  const auto& cup = *d.steenrod->cup_products;
  const Presentation h4 = cohomology_presentation(d, 4, 0);
  std::vector<Int> square(h4.generators, 0);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) {
      const auto& e = cup.at(i * u.size() + j);
      for (std::size_t r = 0; r < square.size(); ++r) square[r] += u[i] * u[j] * e.at(r);
    }
  if (!in_column_lattice(h4.relations, square)) return Liftable::No;
  if (!d.spin) return Liftable::Yes;

  if (theta) return (*theta)(u) ? Liftable::Yes : Liftable::No;
  if (d.steenrod->theta_zero) {
    const Matrix rho = canonical_rho(d, 2, 2);
    std::vector<Int> reduced = rho * u;
    for (auto& c : reduced) c = mod_floor(c, 2);
    for (auto v : *d.steenrod->theta_zero) {
      for (auto& c : v) c = mod_floor(c, 2);
      if (v == reduced) return Liftable::Yes;
    }
    return Liftable::No;
  }
  return Liftable::NeedsOracle;
}

CohomotopyResult pi5_fiber_report(const ManifoldDescriptor& d) {
  if (d.n != 4) throw UnsupportedDegree("the π⁵ fibre report is for n = 4");
  require_valid(d);
  const FgAbGroup pi9 = *corollary34(d).at(9).group.known;
  const std::string pi9_text = "π⁹(M) ≅ " + pi9.invariant_string();
  auto r = CohomotopyResult::statement(
      5, "suspension-fiber-bijection", "each non-empty fibre of E♯: π⁵(M) → π⁶(ΣM) is in bijection with " + pi9_text);
  r.data["fiber_size"] = pi9.order().str();
  r.data["cross_reference"] = pi9_text;
  r.data["map"] = "E♯: π⁵(M) → π⁶(ΣM)";
  r.torsor_degree = 9;
  r.provenance = "EHP sequence on S⁵";
  r.notes.push_back("no global enumeration of π⁵(M)");
  return r;
}

}  // namespace manicoh
