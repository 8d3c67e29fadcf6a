#include "manicoh/abelian.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace manicoh {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

Int pow_int(const Int& base, unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

std::vector<PrimePower> factor_prime_powers(Int n) {
  std::vector<PrimePower> out;
  if (n <= 1) return out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned r = 0;
    while (n % p == 0) {
      n /= p;
      ++r;
    }
    if (r) out.push_back({p, r});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Int PrimePower::order() const { return pow_int(p, r); }

FgAbGroup FgAbGroup::free(unsigned rank) {
  FgAbGroup g;
  g.free_rank_ = rank;
  return g;
}

FgAbGroup FgAbGroup::cyclic(const Int& order) {
  if (order < 0) throw std::invalid_argument("negative cyclic order");
  if (order == 0) return free(1);
  return from_invariants(0, {order});
}

FgAbGroup FgAbGroup::from_invariants(unsigned free_rank, const std::vector<Int>& orders) {
  FgAbGroup g;
  g.free_rank_ = free_rank;
  for (const auto& o : orders) {
    if (o <= 0) throw std::invalid_argument("torsion order must be positive");
    auto f = factor_prime_powers(o);
    g.torsion_.insert(g.torsion_.end(), f.begin(), f.end());
  }
  std::sort(g.torsion_.begin(), g.torsion_.end());
  return g;
}

FgAbGroup FgAbGroup::from_prime_powers(unsigned free_rank, std::vector<PrimePower> torsion) {
  for (const auto& pp : torsion) {
    if (pp.r == 0 || !is_prime(pp.p)) throw std::invalid_argument("torsion entry is not a prime power > 1");
  }
  std::sort(torsion.begin(), torsion.end());
  FgAbGroup g;
  g.free_rank_ = free_rank;
  g.torsion_ = std::move(torsion);
  return g;
}

Int FgAbGroup::order() const {
  if (free_rank_ != 0) throw std::domain_error("order of an infinite group");
  Int o = 1;
  for (const auto& pp : torsion_) o *= pp.order();
  return o;
}

Int FgAbGroup::exponent() const {
  if (free_rank_ != 0) return 0;
  Int e = 1;
  for (const auto& pp : torsion_) {
    Int o = pp.order();
    e = e / gcd_int(e, o) * o;
  }
  return e;
}

std::size_t FgAbGroup::min_generators() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < torsion_.size();) {
    std::size_t j = i;
    while (j < torsion_.size() && torsion_[j].p == torsion_[i].p) ++j;
    best = std::max(best, j - i);
    i = j;
  }
  return free_rank_ + best;
}

std::vector<Int> FgAbGroup::invariant_factors() const {
  std::map<Int, std::vector<unsigned>> by_prime;
  for (const auto& pp : torsion_) by_prime[pp.p].push_back(pp.r);
  std::size_t count = 0;
  for (auto& [p, rs] : by_prime) {
    std::sort(rs.rbegin(), rs.rend());
    count = std::max(count, rs.size());
  }
  std::vector<Int> d(count, Int(1));
  for (const auto& [p, rs] : by_prime)
    for (std::size_t k = 0; k < rs.size(); ++k) d[count - 1 - k] *= pow_int(p, rs[k]);
  return d;
}

FgAbGroup FgAbGroup::torsion_subgroup() const {
  FgAbGroup g = *this;
  g.free_rank_ = 0;
  return g;
}

bool FgAbGroup::has_p_torsion(const Int& p) const {
  return std::any_of(torsion_.begin(), torsion_.end(), [&](const PrimePower& pp) { return pp.p == p; });
}

FgAbGroup FgAbGroup::operator+(const FgAbGroup& other) const {
  FgAbGroup g = *this;
  g.free_rank_ += other.free_rank_;
  g.torsion_.insert(g.torsion_.end(), other.torsion_.begin(), other.torsion_.end());
  std::sort(g.torsion_.begin(), g.torsion_.end());
  return g;
}

FgAbGroup FgAbGroup::power(unsigned k) const {
  FgAbGroup g;
  for (unsigned i = 0; i < k; ++i) g = g + *this;
  return g;
}

bool FgAbGroup::operator<(const FgAbGroup& o) const {
  if (free_rank_ != o.free_rank_) return free_rank_ < o.free_rank_;
  return std::lexicographical_compare(torsion_.begin(), torsion_.end(), o.torsion_.begin(), o.torsion_.end());
}

std::string superscript(unsigned k) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s = std::to_string(k);
  std::string out;
  for (char c : s) out += digits[c - '0'];
  return out;
}

std::string cyclic_name(const Int& order) {
  if (order == 0) return "Z";
  return "Z/" + order.str();
}

std::string FgAbGroup::to_string() const {
  DisplaySum s;
  s.add(*this);
  return s.to_string();
}

std::string FgAbGroup::invariant_string() const {
  DisplaySum s;
  if (free_rank_) s.add(0, free_rank_);
  for (const auto& d : invariant_factors()) s.add(d);
  return s.to_string();
}

DisplaySum& DisplaySum::add(const Int& order, unsigned multiplicity) {
  if (multiplicity == 0 || order == 1) return *this;
  if (!terms_.empty() && terms_.back().order == order) {
    terms_.back().multiplicity += multiplicity;
  } else {
    terms_.push_back({order, multiplicity});
  }
  return *this;
}

DisplaySum& DisplaySum::add(const FgAbGroup& g) {
  add(0, g.free_rank());
  for (const auto& pp : g.torsion()) add(pp.order());
  return *this;
}

FgAbGroup DisplaySum::group() const {
  unsigned free_rank = 0;
  std::vector<Int> orders;
  for (const auto& t : terms_) {
    if (t.order == 0) {
      free_rank += t.multiplicity;
    } else {
      for (unsigned i = 0; i < t.multiplicity; ++i) orders.push_back(t.order);
    }
  }
  return FgAbGroup::from_invariants(free_rank, orders);
}

std::string DisplaySum::to_string() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " ⊕ ";
    std::string name = cyclic_name(t.order);
    if (t.multiplicity == 1) {
      out += name;
    } else if (t.order == 0) {
      out += name + superscript(t.multiplicity);
    } else {
      out += "(" + name + ")" + superscript(t.multiplicity);
    }
  }
  return out.empty() ? "0" : out;
}

Presentation Presentation::of(const FgAbGroup& g) {
  Presentation p;
  p.generators = g.free_rank() + g.torsion().size();
  p.relations = Matrix(p.generators, g.torsion().size());
  for (std::size_t j = 0; j < g.torsion().size(); ++j) p.relations(g.free_rank() + j, j) = g.torsion()[j].order();
  return p;
}

Presentation Presentation::free(std::size_t rank) { return {rank, Matrix(rank, 0)}; }

FgAbGroup Presentation::group() const {
  if (relations.rows() != generators) throw std::invalid_argument("relation matrix row count differs from generator count");
  SmithForm s = smith_normal_form(relations);
  std::vector<Int> orders;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.d(i, i) > 1) orders.push_back(s.d(i, i));
  return FgAbGroup::from_invariants(static_cast<unsigned>(generators - s.rank), orders);
}

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

// Tracks D together with U, U^-1, V, V^-1 under elementary operations.
struct SmithWork {
  Matrix d, u, ui, v, vi;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d(a, j), d(b, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
    for (std::size_t i = 0; i < ui.rows(); ++i) std::swap(ui(i, a), ui(i, b));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d(i, a), d(i, b));
    for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v(i, a), v(i, b));
    for (std::size_t j = 0; j < vi.cols(); ++j) std::swap(vi(a, j), vi(b, j));
  }
  // row dst += k * row src
  void add_row(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < d.cols(); ++j) d(dst, j) += k * d(src, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(dst, j) += k * u(src, j);
    for (std::size_t i = 0; i < ui.rows(); ++i) ui(i, src) -= k * ui(i, dst);
  }
  // col dst += k * col src
  void add_col(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < d.rows(); ++i) d(i, dst) += k * d(i, src);
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, dst) += k * v(i, src);
    for (std::size_t j = 0; j < vi.cols(); ++j) vi(src, j) -= k * vi(dst, j);
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < d.cols(); ++j) d(a, j) = -d(a, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(a, j) = -u(a, j);
    for (std::size_t i = 0; i < ui.rows(); ++i) ui(i, a) = -ui(i, a);
  }
};

}  // namespace

SmithForm smith_normal_form(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithWork w{m, Matrix::identity(rows), Matrix::identity(rows), Matrix::identity(cols), Matrix::identity(cols)};
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t pi = t, pj = t;
    Int best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (w.d(i, j) == 0) continue;
        Int a = abs_int(w.d(i, j));
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      // move the smallest entry of row t / column t onto the diagonal
      std::size_t bi = t, bj = t;
      Int small = abs_int(w.d(t, t));
      for (std::size_t i = t + 1; i < rows; ++i)
        if (w.d(i, t) != 0 && abs_int(w.d(i, t)) < small) {
          small = abs_int(w.d(i, t));
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (w.d(t, j) != 0 && abs_int(w.d(t, j)) < small) {
          small = abs_int(w.d(t, j));
          bi = t;
          bj = j;
        }
      w.swap_rows(t, bi);
      w.swap_cols(t, bj);

      for (std::size_t i = t + 1; i < rows; ++i)
        if (w.d(i, t) != 0) w.add_row(i, t, -(w.d(i, t) / w.d(t, t)));
      for (std::size_t j = t + 1; j < cols; ++j)
        if (w.d(t, j) != 0) w.add_col(j, t, -(w.d(t, j) / w.d(t, t)));

      bool clean = true;
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        if (w.d(i, t) != 0) clean = false;
      for (std::size_t j = t + 1; j < cols && clean; ++j)
        if (w.d(t, j) != 0) clean = false;
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (w.d(i, j) % w.d(t, t) != 0) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (w.d(t, t) < 0) w.negate_row(t);
  }
  SmithForm out{std::move(w.d), std::move(w.u), std::move(w.v), std::move(w.ui), std::move(w.vi), t};
  return out;
}

bool in_column_lattice(const Matrix& lattice, const std::vector<Int>& v) {
  if (v.size() != lattice.rows()) throw std::invalid_argument("vector length differs from lattice ambient rank");
  SmithForm s = smith_normal_form(lattice);
  std::vector<Int> w = s.u * v;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < s.rank) {
      if (w[i] % s.d(i, i) != 0) return false;
    } else if (w[i] != 0) {
      return false;
    }
  }
  return true;
}

void check_homomorphism(const GroupHom& h) {
  const auto& dom = h.domain;
  const auto& cod = h.codomain;
  if (dom.relations.rows() != dom.generators || cod.relations.rows() != cod.generators)
    throw MalformedHomomorphism("presentation relation matrix has the wrong number of rows");
  if (h.matrix.rows() != cod.generators || h.matrix.cols() != dom.generators)
    throw MalformedHomomorphism("matrix shape " + std::to_string(h.matrix.rows()) + "x" +
                                std::to_string(h.matrix.cols()) + " does not match codomain x domain generators " +
                                std::to_string(cod.generators) + "x" + std::to_string(dom.generators));
  Matrix images = h.matrix * dom.relations;
  SmithForm s = smith_normal_form(cod.relations);
  for (std::size_t j = 0; j < images.cols(); ++j) {
    std::vector<Int> w = s.u * images.column(j);
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool ok = i < s.rank ? (w[i] % s.d(i, i) == 0) : (w[i] == 0);
      if (!ok)
        throw MalformedHomomorphism("domain relation " + std::to_string(j) +
                                    " is not sent into the codomain relation lattice");
    }
  }
}

FgAbGroup cokernel(const GroupHom& h) {
  check_homomorphism(h);
  return Presentation{h.codomain.generators, hconcat(h.codomain.relations, h.matrix)}.group();
}

FgAbGroup kernel(const GroupHom& h) {
  check_homomorphism(h);
  const std::size_t n = h.domain.generators;
  // x with matrix·x in the codomain relation lattice: project the integer kernel of [matrix | -R]
  Matrix k = hconcat(h.matrix, h.codomain.relations.negated());
  SmithForm sk = smith_normal_form(k);
  const std::size_t null_dim = k.cols() - sk.rank;
  Matrix gens(n, null_dim);
  for (std::size_t j = 0; j < null_dim; ++j)
    for (std::size_t i = 0; i < n; ++i) gens(i, j) = sk.v(i, sk.rank + j);

  // basis of the lattice spanned by gens: columns of U^-1 scaled by the diagonal
  SmithForm sb = smith_normal_form(gens);
  const std::size_t rank = sb.rank;
  const Matrix& rd = h.domain.relations;
  Matrix coords(rank, rd.cols());
  for (std::size_t j = 0; j < rd.cols(); ++j) {
    std::vector<Int> w = sb.u * rd.column(j);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i < rank) {
        if (w[i] % sb.d(i, i) != 0) throw std::logic_error("domain relation outside kernel lattice");
        coords(i, j) = w[i] / sb.d(i, i);
      } else if (w[i] != 0) {
        throw std::logic_error("domain relation outside kernel lattice");
      }
    }
  }
  return Presentation{rank, coords}.group();
}

FgAbGroup image(const GroupHom& h) {
  check_homomorphism(h);
  // image ≅ Z^n / {x : matrix·x ∈ R}
  Matrix k = hconcat(h.matrix, h.codomain.relations.negated());
  SmithForm sk = smith_normal_form(k);
  const std::size_t n = h.domain.generators;
  const std::size_t null_dim = k.cols() - sk.rank;
  Matrix rel(n, null_dim);
  for (std::size_t j = 0; j < null_dim; ++j)
    for (std::size_t i = 0; i < n; ++i) rel(i, j) = sk.v(i, sk.rank + j);
  return Presentation{n, rel}.group();
}

FgAbGroup tensor(const FgAbGroup& g, const Int& m) {
  if (m < 0) throw std::invalid_argument("tensor modulus must be non-negative");
  if (m == 0) return g;
  std::vector<Int> orders;
  for (unsigned i = 0; i < g.free_rank(); ++i) orders.push_back(m);
  for (const auto& pp : g.torsion()) orders.push_back(gcd_int(pp.order(), m));
  return FgAbGroup::from_invariants(0, orders);
}

FgAbGroup hom(const FgAbGroup& c, const FgAbGroup& a) {
  FgAbGroup out = a.power(c.free_rank());
  for (const auto& q : c.torsion()) {
    std::vector<Int> orders;
    for (const auto& pp : a.torsion()) orders.push_back(gcd_int(q.order(), pp.order()));
    out = out + FgAbGroup::from_invariants(0, orders);
  }
  return out;
}

FgAbGroup ext(const FgAbGroup& c, const FgAbGroup& a) {
  FgAbGroup out;
  Presentation pa = Presentation::of(a);
  SmithForm sc = smith_normal_form(Presentation::of(c).relations);
  for (std::size_t i = 0; i < sc.rank; ++i) {
    const Int& q = sc.d(i, i);
    if (q == 1) continue;
    Matrix mult = Matrix::identity(pa.generators);
    for (std::size_t j = 0; j < pa.generators; ++j) mult(j, j) = q;
    out = out + cokernel(GroupHom{pa, pa, mult});
  }
  return out;
}

std::vector<FgAbGroup> middle_groups(const ExtensionProblem& p, std::size_t max_classes) {
  const FgAbGroup& a = p.sub;
  Presentation pa = Presentation::of(a);
  Presentation pc = Presentation::of(p.quot);
  SmithForm sc = smith_normal_form(pc.relations);

  // standard Ext basis: one factor A/qA per nontrivial diagonal entry q of the quotient relations
  std::vector<Int> qs;
  for (std::size_t i = 0; i < sc.rank; ++i)
    if (sc.d(i, i) > 1) qs.push_back(sc.d(i, i));
  const std::size_t quot_free = pc.generators - sc.rank;

  // coset representatives of A/qA in A's generator coordinates
  std::vector<std::vector<Int>> ranges(qs.size());
  Int total = 1;
  for (std::size_t f = 0; f < qs.size(); ++f) {
    for (unsigned i = 0; i < a.free_rank(); ++i) ranges[f].push_back(qs[f]);
    for (const auto& pp : a.torsion()) ranges[f].push_back(gcd_int(qs[f], pp.order()));
    for (const auto& r : ranges[f]) total *= r;
  }
  if (total > max_classes)
    throw EnumerationTooLarge("Ext has " + total.str() + " classes, above the enumeration bound " +
                              std::to_string(max_classes));

  const std::size_t ga = pa.generators;
  const std::size_t gens = ga + qs.size() + quot_free;
  std::set<FgAbGroup> found;
  std::vector<std::vector<Int>> choice(qs.size());
  for (std::size_t f = 0; f < qs.size(); ++f) choice[f].assign(ga, Int(0));

  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t f, std::size_t i) {
    if (f == qs.size()) {
      Matrix rel(gens, pa.relations.cols() + qs.size());
      for (std::size_t r = 0; r < ga; ++r)
        for (std::size_t j = 0; j < pa.relations.cols(); ++j) rel(r, j) = pa.relations(r, j);
      for (std::size_t g = 0; g < qs.size(); ++g) {
        const std::size_t col = pa.relations.cols() + g;
        rel(ga + g, col) = qs[g];
        for (std::size_t r = 0; r < ga; ++r) rel(r, col) = -choice[g][r];
      }
      found.insert(Presentation{gens, rel}.group());
      return;
    }
    if (i == ga) {
      rec(f + 1, 0);
      return;
    }
    for (Int v = 0; v < ranges[f][i]; ++v) {
      choice[f][i] = v;
      rec(f, i + 1);
    }
    choice[f][i] = 0;
  };
  rec(0, 0);
  return {found.begin(), found.end()};
}

std::vector<FgAbGroup> subgroup_types(const FgAbGroup& g) {
  std::map<Int, std::vector<unsigned>> by_prime;
  for (const auto& pp : g.torsion()) by_prime[pp.p].push_back(pp.r);

  std::vector<FgAbGroup> acc;
  for (unsigned f = 0; f <= g.free_rank(); ++f) acc.push_back(FgAbGroup::free(f));

  for (auto& [p, lambda] : by_prime) {
    std::sort(lambda.rbegin(), lambda.rend());
    std::vector<std::vector<unsigned>> mus;
    std::vector<unsigned> mu;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned cap) {
      if (i == lambda.size()) {
        mus.push_back(mu);
        return;
      }
      for (unsigned v = 0; v <= std::min(cap, lambda[i]); ++v) {
        mu.push_back(v);
        rec(i + 1, v);
        mu.pop_back();
      }
    };
    rec(0, lambda.front());
    std::vector<FgAbGroup> next;
    for (const auto& base : acc)
      for (const auto& m : mus) {
        std::vector<PrimePower> pps;
        for (unsigned e : m)
          if (e) pps.push_back({p, e});
        next.push_back(base + FgAbGroup::from_prime_powers(0, pps));
      }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
  return acc;
}

}  // namespace manicoh
