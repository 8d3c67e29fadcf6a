#include "manicoh/stable.hpp"

#include "manicoh/splitting.hpp"

#include <set>

namespace manicoh {

GroupValue GroupValue::of(const FgAbGroup& g) { return GroupValue{g, g.invariant_string(), {}}; }

GroupValue GroupValue::of(const FgAbGroup& g, std::string display) {
  return GroupValue{g, std::move(display), {}};
}

GroupValue GroupValue::symbolic(std::string symbol, std::string needs) {
  return GroupValue{std::nullopt, std::move(symbol), std::move(needs)};
}

std::string GroupValue::to_string() const { return symbol.empty() && known ? known->to_string() : symbol; }

bool GroupValue::operator==(const GroupValue& o) const {
  if (known || o.known) return known == o.known;
  return symbol == o.symbol && needs == o.needs;
}

std::string split_name(SplitStatus s) {
  switch (s) {
    case SplitStatus::Yes: return "yes";
    case SplitStatus::No: return "no";
    case SplitStatus::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

std::vector<FgAbGroup> extensions(const FgAbGroup& sub, const FgAbGroup& quot, SplitStatus split) {
  if (split == SplitStatus::Yes) return {sub + quot};
  auto all = middle_groups({sub, quot});
  // A non-split extension of finitely generated abelian groups is never abstractly sub ⊕ quot.
  if (split == SplitStatus::No) std::erase(all, sub + quot);
  return all;
}

std::string sup(int d) { return superscript(static_cast<unsigned>(d)); }

}  // namespace

void SesDescriptor::resolve_middle() {
  middle.reset();
  middle_candidates.clear();
  if (!quot.known) return;
  std::vector<FgAbGroup> subs;
  if (sub.known)
    subs.push_back(*sub.known);
  else
    subs = sub_candidates;
  if (subs.empty()) return;
  std::set<FgAbGroup> out;
  try {
    for (const auto& s : subs)
      for (auto& e : extensions(s, *quot.known, split)) out.insert(std::move(e));
  } catch (const EnumerationTooLarge& e) {
    notes.push_back(std::string("middle group enumeration refused: ") + e.what());
    return;
  }
  middle_candidates.assign(out.begin(), out.end());
  if (middle_candidates.empty()) notes.push_back("no extension is consistent with the split status");
  if (middle_candidates.size() == 1) middle = middle_candidates.front();
}

FgAbGroup StableInput::z(int d) const { return h_z.count(d) ? h_z.at(d) : FgAbGroup{}; }
FgAbGroup StableInput::z2(int d) const { return h_z2.count(d) ? h_z2.at(d) : FgAbGroup{}; }
FgAbGroup StableInput::z3(int d) const { return h_z3.count(d) ? h_z3.at(d) : FgAbGroup{}; }
FgAbGroup StableInput::z24(int d) const { return h_z24.count(d) ? h_z24.at(d) : FgAbGroup{}; }

namespace {

// |coker| of the map Z^cols → target given by `m`, as an Int (target is finite).
Int cokernel_order(const Matrix& m, const Presentation& target) {
  return cokernel(GroupHom{Presentation::free(m.cols()), target, m}).order();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

void require_two_torsion_free(const StableInput& x) {
  if (x.n >= 5)
    require(!x.z(x.n).has_p_torsion(2), "H" + sup(x.n) + "(X) must be 2-torsion-free for n ≥ 5");
}

std::vector<FgAbGroup> elementary_two_quotients(const FgAbGroup& bound) {
  // quotients of H(X;Z/2) = (Z/2)^r are (Z/2)^j, j ≤ r
  std::vector<FgAbGroup> out;
  for (unsigned j = 0; j <= bound.min_generators(); ++j) out.push_back(FgAbGroup::cyclic(2).power(j));
  return out;
}

GroupValue kernel_or_symbol(const std::map<int, GroupHom>& ops, int degree, const FgAbGroup& source,
                            const FgAbGroup& target, const std::string& symbol, const std::string& needs) {
  if (auto it = ops.find(degree); it != ops.end()) return GroupValue::of(kernel(it->second));
  if (target.is_trivial()) return GroupValue::of(source);
  return GroupValue::symbolic(symbol, needs);
}

}  // namespace

SesDescriptor taylor_pi_n(const StableInput& x) {
  require(x.n >= 3, "n ≥ 3 required");
  require(x.m <= 1, "dim X ≤ n + 1 required");
  const int n = x.n;
  SesDescriptor out;
  out.provenance = "dimension n+1 sequence";
  out.quot = GroupValue::of(x.z(n));

  const FgAbGroup top2 = x.z2(n + 1);
  const auto sq2z = x.sq2_z.find(n - 1);
  const auto sq2 = x.sq2.find(n - 1);
  const std::string sub_symbol = "H" + sup(n + 1) + "(X;Z/2)/Sq²_Z(H" + sup(n - 1) + "(X))";

  if (top2.is_trivial() || x.z(n - 1).is_trivial()) {
    out.sub = GroupValue::of(top2);
  } else if (sq2z != x.sq2_z.end()) {
    out.sub = GroupValue::of(cokernel(sq2z->second));
  } else {
    out.sub = GroupValue::symbolic(sub_symbol, "needs Sq² matrices");
    out.sub_candidates = elementary_two_quotients(top2);
  }

  if (top2.is_trivial() || x.z2(n - 1).is_trivial()) {
    out.split = SplitStatus::Yes;
  } else if (sq2 != x.sq2.end() && (sq2z != x.sq2_z.end() || x.z(n - 1).is_trivial())) {
    const Presentation target = sq2z != x.sq2_z.end() ? sq2z->second.codomain : Presentation::of(top2);
    if (sq2->second.rows() != target.generators)
      throw PreconditionError("Sq² matrix has " + std::to_string(sq2->second.rows()) + " rows, expected " +
                              std::to_string(target.generators));
    const Matrix a = sq2z != x.sq2_z.end() ? sq2z->second.matrix : Matrix(target.generators, 0);
    const Matrix& b = sq2->second;
    const Int ca = cokernel_order(a, target);
    const Int cab = cokernel_order(hconcat(a, b), target);
    const Int cb = cokernel_order(b, target);
    out.split = ca == cab && cb == cab ? SplitStatus::Yes : SplitStatus::No;
  } else {
    out.split = SplitStatus::Unknown;
    out.notes.push_back("needs Sq² matrices");
  }
  out.resolve_middle();
  return out;
}

SesDescriptor theorem33_case(const StableInput& x, int which) {
  const int n = x.n;
  SesDescriptor out;
  require_two_torsion_free(x);
  const std::string hn = "H" + sup(n) + "(X)";
  if (which == 1) {
    require(x.m <= 2, "dim X ≤ n + 2 required");
    require(n >= 4, "n ≥ 4 required");
    require(x.z2(n + 1).is_trivial(), "H" + sup(n + 1) + "(X;Z/2) = 0 required");
    out.provenance = "stable case 1";
    const FgAbGroup bound = x.z2(n + 2);
    out.sub_candidates = elementary_two_quotients(bound);
    out.sub = bound.is_trivial() ? GroupValue::of(bound)
                                 : GroupValue::symbolic("QH" + sup(n + 2) + "(X, ΩSq²)", "secondary operation");
    out.quot = kernel_or_symbol(x.sq2_z, n, x.z(n), bound,
                                "ker(Sq²_Z: " + hn + " → H" + sup(n + 2) + "(X;Z/2))", "needs Sq² matrices");
    out.split = x.z(n).has_p_torsion(2) ? SplitStatus::Unknown : SplitStatus::Yes;
  } else if (which == 2) {
    const bool range = (x.m <= 3 && n >= 5) || (x.m <= 4 && n >= 6) || (x.m <= 5 && n >= 7);
    require(range, "one of (m = 3, n ≥ 5), (m = 4, n ≥ 6), (m = 5, n ≥ 7) required");
    for (int i : {1, 2})
      require(x.z2(n + i).is_trivial(), "H" + sup(n + i) + "(X;Z/2) = 0 required");
    out.provenance = "stable case 2";
    const FgAbGroup bound = x.z24(n + 3);
    out.sub_candidates = subgroup_types(bound);
    out.sub = bound.is_trivial() ? GroupValue::of(bound)
                                 : GroupValue::symbolic("G₂₄ ⊆ H" + sup(n + 3) + "(X;Z/24)", "attaching data");
    out.quot = kernel_or_symbol(x.p1_z, n, x.z(n), x.z3(n + 4),
                                "ker(P¹_Z: " + hn + " → H" + sup(n + 4) + "(X;Z/3))", "needs P¹ matrices");
    out.split = SplitStatus::Unknown;
  } else if (which == 3) {
    require(x.m <= 6, "dim X ≤ n + 6 required");
    require(n >= 8, "n ≥ 8 required");
    for (int i : {1, 2, 3})
      require(x.z2(n + i).is_trivial(), "H" + sup(n + i) + "(X;Z/2) = 0 required");
    require(x.z3(n + 3).is_trivial(), "H" + sup(n + 3) + "(X;Z/3) = 0 required");
    out.provenance = "stable case 3";
    const FgAbGroup bound = x.z2(n + 6);
    out.sub_candidates = elementary_two_quotients(bound);
    out.sub = bound.is_trivial() ? GroupValue::of(bound)
                                 : GroupValue::symbolic("QH" + sup(n + 6) + "(X, ΩSq⁴)", "secondary operation");
    out.quot = kernel_or_symbol(x.p1_z, n, x.z(n), x.z3(n + 4),
                                "ker(P¹_Z: " + hn + " → H" + sup(n + 4) + "(X;Z/3))", "needs P¹ matrices");
    out.split = SplitStatus::Yes;
  } else {
    throw PreconditionError("case must be 1, 2 or 3");
  }
  if (out.sub.known) out.sub_candidates.clear();
  out.resolve_middle();
  return out;
}

FgAbGroup g24_from_coefficients(const Int& x, const Int& u, const Int& w) {
  Matrix m(1, 1);
  m(0, 0) = x + 8 * u + 8 * w;
  return cokernel(GroupHom{Presentation::free(1), Presentation{1, Matrix::from_rows({{24}})}, m});
}

G24Coefficients g24_coefficients(const ManifoldDescriptor& d) {
  require(d.n == 3, "the G₂₄ coefficient formula needs n = 3");
  const auto norm = normalize(d.attach);
  auto first_nonzero = [&](const char* name) -> Int {
    if (!norm.vector.has_block(name)) return 0;
    for (const auto& e : norm.vector.block(name).entries)
      if (e != 0) return e;
    return 0;
  };
  return {first_nonzero("x"), first_nonzero("u"), first_nonzero("w")};
}

GroupValue sq2z_kernel(const ManifoldDescriptor& d, int degree) {
  const auto h = cohomology_table(d, 0);
  const auto h2 = cohomology_table(d, 2);
  const FgAbGroup source = h.count(degree) ? h.at(degree) : FgAbGroup{};
  const FgAbGroup target = h2.count(degree + 2) ? h2.at(degree + 2) : FgAbGroup{};
  const auto ops = compose_steenrod(d);
  // Sq² into the top degree is cup product with w₂, which vanishes on a spin manifold.
  if (!ops.sq2_z.count(degree) && degree + 2 == d.top_degree() && d.spin) return GroupValue::of(source);
  return kernel_or_symbol(ops.sq2_z, degree, source, target,
                          "ker(Sq²_Z: H" + sup(degree) + "(M) → H" + sup(degree + 2) + "(M;Z/2))",
                          "needs Sq² matrices");
}

GroupValue p1z_kernel(const ManifoldDescriptor& d, int degree) {
  const auto h = cohomology_table(d, 0);
  const auto h3 = cohomology_table(d, 3);
  const FgAbGroup source = h.count(degree) ? h.at(degree) : FgAbGroup{};
  const FgAbGroup target = h3.count(degree + 4) ? h3.at(degree + 4) : FgAbGroup{};
  return kernel_or_symbol(compose_steenrod(d).p1_z, degree, source, target,
                          "ker(P¹_Z: H" + sup(degree) + "(M) → H" + sup(degree + 4) + "(M;Z/3))",
                          "needs P¹ matrices");
}

std::map<int, StableValue> corollary34(const ManifoldDescriptor& d) {
  require_valid(d);
  const int n = d.n;
  const auto h = cohomology_table(d, 0);
  const FgAbGroup z2_or_0 = d.spin ? FgAbGroup::cyclic(2) : FgAbGroup{};
  std::map<int, StableValue> out;
  auto not_covered = [](const std::string& why) {
    StableValue v;
    v.kind = StableValue::Kind::NotCovered;
    v.reason = why;
    return v;
  };
  auto group = [](GroupValue g) {
    StableValue v;
    v.kind = StableValue::Kind::Group;
    v.group = std::move(g);
    return v;
  };
  auto ses = [](SesDescriptor s) {
    StableValue v;
    v.kind = StableValue::Kind::Ses;
    v.ses = std::move(s);
    return v;
  };

  out[2 * n + 1] = group(GroupValue::of(z2_or_0));

  if (n >= 3) {
    out[2 * n] = group(GroupValue::of(FgAbGroup::cyclic(2)));
  } else {
    SesDescriptor s;
    s.provenance = "degree 2n, n = 2";
    s.sub = GroupValue::of(z2_or_0);
    s.quot = sq2z_kernel(d, 2 * n);
    s.split = SplitStatus::Yes;  // T is 2-torsion-free
    s.resolve_middle();
    out[2 * n] = ses(std::move(s));
  }

  if (n >= 3) {
    SesDescriptor s;
    s.provenance = "degree 2n-1";
    s.quot = GroupValue::of(h.at(2 * n - 1));
    s.split = SplitStatus::Yes;
    if (n == 3) {
      const auto c = g24_coefficients(d);
      s.sub = GroupValue::of(g24_from_coefficients(c.x, c.u, c.w));
    } else {
      s.sub = GroupValue::symbolic("G₂₄ ⊆ H" + sup(2 * n + 2) + "(M;Z/24)", "attaching data");
      s.sub_candidates = subgroup_types(FgAbGroup::cyclic(24));
    }
    s.resolve_middle();
    out[2 * n - 1] = ses(std::move(s));
  } else {
    out[2 * n - 1] = not_covered("not covered by the stable range: needs n ≥ 3");
  }

  if (n >= 4)
    out[2 * n - 2] = group(p1z_kernel(d, 2 * n - 2));
  else
    out[2 * n - 2] = not_covered("not covered by the stable range: needs n ≥ 4");

  out[2 * n - 3] = not_covered("not covered by the stable range: needs n ≥ 5");
  return out;
}

}  // namespace manicoh
