#include "manicoh/manifold.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace manicoh {

namespace {

using nlohmann::json;

bool is_prime_small(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// torsion of H_i(M)
std::vector<PrimePower> homology_torsion(const ManifoldDescriptor& d, int i) {
  if (i == d.n || i == d.n + 1) return d.torsion.factors;
  return {};
}

unsigned betti(const ManifoldDescriptor& d, int i) {
  if (i == 0 || i == d.top_degree()) return 1;
  if (i == d.n || i == d.n + 2) return d.l;
  if (i == d.n + 1) return d.k;
  return 0;
}

std::size_t generator_count(const ManifoldDescriptor& d, int degree, const Int& modulus) {
  return cohomology_presentation(d, degree, modulus).generators;
}

Matrix reduce_mod(Matrix m, const Int& p) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_floor(m(i, j), p);
  return m;
}

std::string shape(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

}  // namespace

TorsionGroup TorsionGroup::of(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end());
  return {std::move(factors)};
}

FgAbGroup TorsionGroup::group() const {
  std::vector<Int> orders;
  for (const auto& f : factors) orders.push_back(f.order());
  return FgAbGroup::from_invariants(0, orders);
}

std::vector<unsigned> TorsionGroup::three_exponents() const {
  std::vector<unsigned> out;
  for (const auto& f : factors)
    if (f.p == 3) out.push_back(f.r);
  std::sort(out.begin(), out.end());
  return out;
}

const Block& AttachingVector::block(std::string_view name) const {
  for (const auto& b : blocks)
    if (b.name == name) return b;
  throw std::out_of_range("no attaching block '" + std::string(name) + "'");
}

Block& AttachingVector::block(std::string_view name) {
  return const_cast<Block&>(static_cast<const AttachingVector&>(*this).block(name));
}

bool AttachingVector::has_block(std::string_view name) const {
  return std::any_of(blocks.begin(), blocks.end(), [&](const Block& b) { return b.name == name; });
}

bool AttachingVector::is_zero() const {
  for (const auto& b : blocks)
    for (const auto& e : b.entries)
      if (e != 0) return false;
  return true;
}

std::string AttachingVector::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& b : blocks) {
    if (!first) os << ' ';
    first = false;
    os << b.name << "=(";
    for (std::size_t i = 0; i < b.entries.size(); ++i) os << (i ? "," : "") << b.entries[i];
    os << ')';
  }
  return os.str();
}

bool AttachingVector::operator<(const AttachingVector& o) const {
  if (n != o.n) return n < o.n;
  if (blocks.size() != o.blocks.size()) return blocks.size() < o.blocks.size();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& a = blocks[i].entries;
    const auto& b = o.blocks[i].entries;
    if (a != b) return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
  return false;
}

std::vector<BlockSpec> block_schema(int n, unsigned l, unsigned k, unsigned c, std::size_t t) {
  const std::size_t free_part = c <= l ? l - c : 0;
  switch (n) {
    case 2:
      return {{"x", 12, free_part}, {"y", 2, free_part}, {"z", 3, t}, {"w", 6, c}};
    case 3:
      return {{"x", 24, k}, {"y", 2, free_part}, {"z", 2, c}, {"u", 3, t}, {"w", 3, t}};
    case 4:
      return {{"x", 24, free_part}, {"y", 2, free_part}, {"z1", 24, c}, {"z2", 2, c}, {"w", 3, t}};
    default:
      throw std::invalid_argument("n must be 2, 3 or 4");
  }
}

bool SteenrodData::empty() const {
  return sq2.empty() && rho2.empty() && p1.empty() && rho3.empty() && !cup_products && !theta_zero;
}

AttachingVector default_attach(int n, unsigned l, unsigned k, const TorsionGroup& t, bool spin, unsigned c) {
  AttachingVector v;
  v.n = n;
  v.three_exponents = t.three_exponents();
  for (const auto& s : block_schema(n, l, k, c, v.three_exponents.size()))
    v.blocks.push_back({s.name, s.modulus, std::vector<Int>(s.length, Int(0))});
  if (n == 2 && !spin) {
    auto& y = v.block("y");
    if (!y.entries.empty()) y.entries[0] = 1;
  }
  return v;
}

ManifoldDescriptor make_descriptor(int n, unsigned l, unsigned k, const TorsionGroup& t, bool spin, unsigned c) {
  ManifoldDescriptor d;
  d.n = n;
  d.l = l;
  d.k = k;
  d.torsion = t;
  d.spin = spin;
  d.c = c;
  d.attach = default_attach(n, l, k, t, spin, c);
  return d;
}

ValidationReport validate(const ManifoldDescriptor& d) {
  ValidationReport rep;
  auto fail = [&](std::string path, std::string rule, std::string msg) {
    rep.violations.push_back({std::move(path), std::move(rule), std::move(msg)});
  };
  if (d.n < 2 || d.n > 4) {
    fail("n", "n in {2,3,4}", "n = " + std::to_string(d.n) + " is outside {2, 3, 4}");
    return rep;
  }
  if (d.c > d.l)
    fail("c", "c ≤ l", "c exceeds l (c = " + std::to_string(d.c) + ", l = " + std::to_string(d.l) + ")");
  if (d.n == 2 && d.k % 2 != 0)
    fail("k", "k even for n = 2", "k = " + std::to_string(d.k) + " must be even when n = 2");
  for (std::size_t i = 0; i < d.torsion.factors.size(); ++i) {
    const auto& f = d.torsion.factors[i];
    const std::string path = "torsion[" + std::to_string(i) + "]";
    if (!is_prime_small(f.p) || f.r == 0) {
      fail(path, "prime-power factor", "factor (" + f.p.str() + ", " + std::to_string(f.r) + ") is not a prime power > 1");
    } else if (f.p == 2) {
      fail(path, "T 2-torsion-free", "T contains 2-torsion (Z/" + f.order().str() + ")");
    }
  }
  if (!std::is_sorted(d.torsion.factors.begin(), d.torsion.factors.end()))
    fail("torsion", "sorted factors", "torsion factors are not in canonical order");
  if (!rep.ok()) return rep;

  const auto schema = block_schema(d.n, d.l, d.k, d.c, d.torsion.three_count());
  if (d.attach.n != d.n) fail("attach", "schema", "attaching vector is for n = " + std::to_string(d.attach.n));
  if (d.attach.three_exponents != d.torsion.three_exponents())
    fail("attach", "schema", "3-primary exponents do not match T");
  if (d.attach.blocks.size() != schema.size())
    fail("attach", "schema", "expected " + std::to_string(schema.size()) + " blocks");
  for (std::size_t b = 0; b < std::min(schema.size(), d.attach.blocks.size()); ++b) {
    const auto& s = schema[b];
    const auto& blk = d.attach.blocks[b];
    const std::string path = "attach." + s.name;
    if (blk.name != s.name || blk.modulus != s.modulus) {
      fail(path, "schema", "block " + std::to_string(b) + " should be " + s.name + " over Z/" + s.modulus.str());
      continue;
    }
    if (blk.entries.size() != s.length)
      fail(path, "schema",
           "length " + std::to_string(blk.entries.size()) + " differs from expected " + std::to_string(s.length));
    for (std::size_t i = 0; i < blk.entries.size(); ++i)
      if (blk.entries[i] < 0 || blk.entries[i] >= s.modulus)
        fail(path + "[" + std::to_string(i) + "]", "reduced entry", "entry not reduced mod " + s.modulus.str());
  }
  if (d.n == 2 && rep.ok()) {
    const auto& y = d.attach.block("y").entries;
    const bool y_zero = std::all_of(y.begin(), y.end(), [](const Int& v) { return v == 0; });
    if (d.spin && !y_zero) fail("attach.y", "y = 0 iff spin", "a spin manifold has y = 0");
    if (!d.spin && y_zero)
      fail("attach.y", "y = 0 iff spin",
           y.empty() ? "a nonspin manifold needs l − c ≥ 1 (y block is empty)" : "a nonspin manifold has y ≠ 0");
  }
  if (d.n >= 3 && !d.spin)
    rep.warnings.push_back("(n−1)-connected manifolds with n ≥ 3 are spin; ε = 1 is treated as a formal input");

  if (d.steenrod && rep.ok()) {
    const auto& s = *d.steenrod;
    auto check = [&](const std::string& path, const Matrix& m, std::size_t rows, std::size_t cols) {
      if (m.rows() != rows || m.cols() != cols)
        fail(path, "matrix shape", "shape " + shape(m.rows(), m.cols()) + " differs from expected " + shape(rows, cols));
    };
    for (const auto& [deg, m] : s.sq2)
      check("steenrod.sq2[" + std::to_string(deg) + "]", m, generator_count(d, deg + 2, 2), generator_count(d, deg, 2));
    for (const auto& [deg, m] : s.rho2)
      check("steenrod.rho2[" + std::to_string(deg) + "]", m, generator_count(d, deg, 2), generator_count(d, deg, 0));
    for (const auto& [deg, m] : s.p1)
      check("steenrod.p1[" + std::to_string(deg) + "]", m, generator_count(d, deg + 4, 3), generator_count(d, deg, 3));
    for (const auto& [deg, m] : s.rho3)
      check("steenrod.rho3[" + std::to_string(deg) + "]", m, generator_count(d, deg, 3), generator_count(d, deg, 0));
    if (auto it = s.sq2.find(d.n); it != s.sq2.end() && it->second.rows() == d.l && it->second.cols() == d.l) {
      const bool zero = reduce_mod(it->second, 2).is_zero();
      if ((d.c == 0) != zero)
        fail("c", "c = 0 iff Sq² trivial on H^n",
             zero ? "Sq² vanishes on H^n(M;Z/2) but c ≠ 0" : "Sq² is nonzero on H^n(M;Z/2) but c = 0");
    }
    if (s.cup_products) {
      if (d.n != 2) {
        fail("steenrod.cup_products", "n = 2 only", "cup-square data is only used for n = 2");
      } else {
        const std::size_t h4 = generator_count(d, 4, 0);
        if (s.cup_products->size() != std::size_t(d.l) * d.l)
          fail("steenrod.cup_products", "matrix shape", "expected l·l = " + std::to_string(d.l * d.l) + " products");
        for (std::size_t i = 0; i < s.cup_products->size(); ++i)
          if ((*s.cup_products)[i].size() != h4)
            fail("steenrod.cup_products[" + std::to_string(i) + "]", "matrix shape",
                 "expected " + std::to_string(h4) + " coordinates in H⁴(M)");
      }
    }
    if (s.theta_zero)
      for (std::size_t i = 0; i < s.theta_zero->size(); ++i)
        if ((*s.theta_zero)[i].size() != d.l)
          fail("steenrod.theta_zero[" + std::to_string(i) + "]", "matrix shape",
               "expected " + std::to_string(d.l) + " mod-2 coordinates");
  }
  return rep;
}

InvalidDescriptor::InvalidDescriptor(std::vector<Violation> v)
    : std::invalid_argument([&] {
        std::string s = "invalid descriptor:";
        for (const auto& x : v) s += "\n  " + x.path + ": " + x.message + " [" + x.rule + "]";
        return s;
      }()),
      violations_(std::move(v)) {}

void require_valid(const ManifoldDescriptor& d) {
  auto rep = validate(d);
  if (!rep.ok()) throw InvalidDescriptor(std::move(rep.violations));
}

DescriptorParseError::DescriptorParseError(std::string path, const std::string& what)
    : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

namespace {

Int json_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw DescriptorParseError(path, "expected an integer");
}

unsigned json_unsigned(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw DescriptorParseError(path, "expected a non-negative integer");
  return static_cast<unsigned>(j.get<long long>());
}

std::vector<Int> json_int_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw DescriptorParseError(path, "expected a list of integers");
  std::vector<Int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_int(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::map<int, Matrix> parse_matrices(const json& j, const std::string& path) {
  if (!j.is_array()) throw DescriptorParseError(path, "expected a list of {from, rows, cols, data}");
  std::map<int, Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const auto& e = j[i];
    if (!e.is_object()) throw DescriptorParseError(p, "expected an object");
    for (const char* key : {"from", "rows", "cols", "data"})
      if (!e.contains(key)) throw DescriptorParseError(p + "." + key, "missing field");
    const int from = static_cast<int>(json_unsigned(e["from"], p + ".from"));
    const unsigned rows = json_unsigned(e["rows"], p + ".rows");
    const unsigned cols = json_unsigned(e["cols"], p + ".cols");
    auto data = json_int_list(e["data"], p + ".data");
    if (data.size() != std::size_t(rows) * cols)
      throw DescriptorParseError(p + ".data", "has " + std::to_string(data.size()) + " entries, expected rows·cols = " +
                                                  std::to_string(rows * cols));
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = data[r * cols + c];
    if (!out.emplace(from, std::move(m)).second) throw DescriptorParseError(p + ".from", "duplicate degree");
  }
  return out;
}

SteenrodData steenrod_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw DescriptorParseError(path, "expected an object");
  SteenrodData s;
  for (const auto& [key, value] : j.items()) {
    const std::string p = path.empty() ? key : path + "." + key;
    if (key == "sq2") {
      s.sq2 = parse_matrices(value, p);
    } else if (key == "rho2") {
      s.rho2 = parse_matrices(value, p);
    } else if (key == "p1") {
      s.p1 = parse_matrices(value, p);
    } else if (key == "rho3") {
      s.rho3 = parse_matrices(value, p);
    } else if (key == "cup_products" || key == "theta_zero") {
      if (!value.is_array()) throw DescriptorParseError(p, "expected a list of integer lists");
      std::vector<std::vector<Int>> rows;
      for (std::size_t i = 0; i < value.size(); ++i) rows.push_back(json_int_list(value[i], p + "[" + std::to_string(i) + "]"));
      (key == "cup_products" ? s.cup_products : s.theta_zero) = std::move(rows);
    } else {
      throw DescriptorParseError(p, "unknown field");
    }
  }
  return s;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DescriptorParseError("", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

ManifoldDescriptor parse_descriptor(std::string_view text) {
  json j = parse_json(text);
  if (!j.is_object()) throw DescriptorParseError("", "descriptor must be a JSON object");
  static const std::set<std::string> known = {"n", "l", "k", "torsion", "spin", "c", "attach", "steenrod", "name"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw DescriptorParseError(key, "unknown field");
  for (const char* key : {"n", "l", "k", "spin", "c"})
    if (!j.contains(key)) throw DescriptorParseError(key, "missing field");

  ManifoldDescriptor d;
  d.n = static_cast<int>(json_unsigned(j["n"], "n"));
  d.l = json_unsigned(j["l"], "l");
  d.k = json_unsigned(j["k"], "k");
  d.c = json_unsigned(j["c"], "c");
  if (!j["spin"].is_boolean()) throw DescriptorParseError("spin", "expected true or false");
  d.spin = j["spin"].get<bool>();

  std::vector<PrimePower> factors;
  if (j.contains("torsion")) {
    const auto& t = j["torsion"];
    if (!t.is_array()) throw DescriptorParseError("torsion", "expected a list of [p, r] pairs");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string p = "torsion[" + std::to_string(i) + "]";
      if (!t[i].is_array() || t[i].size() != 2) throw DescriptorParseError(p, "expected a [p, r] pair");
      factors.push_back({json_int(t[i][0], p + "[0]"), json_unsigned(t[i][1], p + "[1]")});
    }
  }
  d.torsion = TorsionGroup::of(std::move(factors));

  if (d.n < 2 || d.n > 4) throw DescriptorParseError("n", "must be 2, 3 or 4");
  d.attach = default_attach(d.n, d.l, d.k, d.torsion, d.spin, d.c);
  if (j.contains("attach")) {
    const auto& a = j["attach"];
    if (!a.is_object()) throw DescriptorParseError("attach", "expected an object of coefficient lists");
    for (const auto& [key, value] : a.items()) {
      const std::string p = "attach." + key;
      if (!d.attach.has_block(key)) throw DescriptorParseError(p, "no such block for n = " + std::to_string(d.n));
      auto& blk = d.attach.block(key);
      blk.entries = json_int_list(value, p);
      for (auto& e : blk.entries) e = mod_floor(e, blk.modulus);
    }
  }
  if (j.contains("steenrod")) d.steenrod = steenrod_from_json(j["steenrod"], "steenrod");
  return d;
}

SteenrodData parse_steenrod(std::string_view text) { return steenrod_from_json(parse_json(text), ""); }

std::map<int, FgAbGroup> homology_table(const ManifoldDescriptor& d) {
  std::map<int, FgAbGroup> h;
  for (int i = 0; i <= d.top_degree(); ++i) {
    FgAbGroup g = FgAbGroup::free(betti(d, i));
    auto t = homology_torsion(d, i);
    h[i] = g + FgAbGroup::from_prime_powers(0, t);
  }
  return h;
}

std::map<int, FgAbGroup> cohomology_table(const ManifoldDescriptor& d, const Int& modulus) {
  const FgAbGroup coeff = FgAbGroup::cyclic(modulus);
  auto h = homology_table(d);
  std::map<int, FgAbGroup> out;
  for (int i = 0; i <= d.top_degree(); ++i) {
    FgAbGroup g = hom(h[i], coeff);
    if (i > 0) g = g + ext(h[i - 1], coeff);
    out[i] = g;
  }
  return out;
}

Presentation cohomology_presentation(const ManifoldDescriptor& d, int degree, const Int& modulus) {
  std::vector<Int> orders;  // 0 = free generator
  const unsigned b = degree >= 0 && degree <= d.top_degree() ? betti(d, degree) : 0;
  for (unsigned i = 0; i < b; ++i) orders.push_back(modulus);
  if (modulus != 0)
    for (const auto& f : homology_torsion(d, degree)) {
      Int g = gcd_int(f.order(), modulus);
      if (g > 1) orders.push_back(g);
    }
  for (const auto& f : homology_torsion(d, degree - 1)) {
    Int g = modulus == 0 ? f.order() : gcd_int(f.order(), modulus);
    if (g > 1) orders.push_back(g);
  }
  Presentation p;
  p.generators = orders.size();
  std::size_t rel_count = 0;
  for (const auto& o : orders) rel_count += (o != 0);
  p.relations = Matrix(orders.size(), rel_count);
  std::size_t col = 0;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) p.relations(i, col++) = orders[i];
  return p;
}

Matrix canonical_rho(const ManifoldDescriptor& d, int degree, const Int& p) {
  const std::size_t rows = generator_count(d, degree, p);
  const std::size_t cols = generator_count(d, degree, 0);
  Matrix m(rows, cols);
  const unsigned b = degree >= 0 && degree <= d.top_degree() ? betti(d, degree) : 0;
  for (unsigned i = 0; i < b; ++i) m(i, i) = 1;
  std::size_t hom_slots = 0;
  for (const auto& f : homology_torsion(d, degree))
    if (gcd_int(f.order(), p) > 1) ++hom_slots;
  std::size_t target = b + hom_slots;
  std::size_t source = b;
  for (const auto& f : homology_torsion(d, degree - 1)) {
    if (gcd_int(f.order(), p) > 1) m(target++, source) = 1;
    ++source;
  }
  return m;
}

IntegralOperations compose_steenrod(const ManifoldDescriptor& d) {
  IntegralOperations out;
  if (!d.steenrod) return out;
  const auto& s = *d.steenrod;
  auto compose = [&](const Matrix& op, int from, int shift, const Int& p, const std::map<int, Matrix>& overrides,
                     const char* name) {
    Matrix rho = overrides.count(from) ? overrides.at(from) : canonical_rho(d, from, p);
    const std::size_t src = generator_count(d, from, p);
    const std::size_t dst = generator_count(d, from + shift, p);
    if (op.cols() != src || op.rows() != dst)
      throw std::invalid_argument(std::string(name) + " from degree " + std::to_string(from) + ": shape " +
                                  shape(op.rows(), op.cols()) + ", expected " + shape(dst, src));
    if (rho.rows() != src || rho.cols() != generator_count(d, from, 0))
      throw std::invalid_argument(std::string("reduction mod ") + p.str() + " in degree " + std::to_string(from) +
                                  ": shape " + shape(rho.rows(), rho.cols()) + ", expected " +
                                  shape(src, generator_count(d, from, 0)));
    GroupHom h{cohomology_presentation(d, from, 0), cohomology_presentation(d, from + shift, p), reduce_mod(op * rho, p)};
    check_homomorphism(h);
    return h;
  };
  for (const auto& [from, m] : s.sq2) out.sq2_z.emplace(from, compose(m, from, 2, 2, s.rho2, "Sq²"));
  for (const auto& [from, m] : s.p1) out.p1_z.emplace(from, compose(m, from, 4, 3, s.rho3, "P¹"));
  return out;
}

}  // namespace manicoh
