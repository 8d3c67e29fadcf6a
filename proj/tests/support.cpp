#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace manicoh::testing {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long long lo, long long hi) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

std::vector<long long> random_orders(Rng& rng, long long max_order, std::size_t max_factors) {
  std::vector<long long> out;
  long long product = 1;
  const std::size_t want = static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(max_factors)));
  for (std::size_t i = 0; i < want; ++i) {
    const long long room = max_order / product;
    if (room < 2) break;
    const long long q = uniform(rng, 2, std::min<long long>(room, 12));
    out.push_back(q);
    product *= q;
  }
  return out;
}

namespace {

void extend_sums(long long max_order, long long product, long long min_next, std::vector<long long>& cur,
                 std::vector<std::vector<long long>>& out) {
  out.push_back(cur);
  for (long long q = min_next; product * q <= max_order; ++q) {
    cur.push_back(q);
    extend_sums(max_order, product * q, q, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<long long>> cyclic_sums_up_to(long long max_order) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur;
  extend_sums(max_order, 1, 2, cur, out);
  return out;
}

std::size_t FiniteGroup::size() const {
  std::size_t s = 1;
  for (auto q : orders) s *= static_cast<std::size_t>(q);
  return s;
}

std::vector<long long> FiniteGroup::element(std::size_t index) const {
  std::vector<long long> e(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    e[i] = static_cast<long long>(index % static_cast<std::size_t>(orders[i]));
    index /= static_cast<std::size_t>(orders[i]);
  }
  return e;
}

std::size_t FiniteGroup::index(const std::vector<long long>& e) const {
  std::size_t idx = 0;
  for (std::size_t i = orders.size(); i-- > 0;) {
    const long long v = ((e[i] % orders[i]) + orders[i]) % orders[i];
    idx = idx * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(v);
  }
  return idx;
}

std::vector<long long> FiniteGroup::add(const std::vector<long long>& a, const std::vector<long long>& b) const {
  std::vector<long long> out(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) out[i] = (a[i] + b[i]) % orders[i];
  return out;
}

FgAbGroup FiniteGroup::group() const {
  std::vector<Int> o(orders.begin(), orders.end());
  return FgAbGroup::from_invariants(0, o);
}

FgAbGroup type_from_element_orders(const std::vector<long long>& orders) {
  // |E[p^k]| = p^{Σ min(k, r_i)}; successive differences count factors with r_i ≥ k.
  std::map<long long, std::map<int, long long>> torsion_count;  // p -> k -> |E[p^k]|
  std::set<long long> primes;
  for (auto o : orders) {
    long long x = o;
    for (long long p = 2; p * p <= x; ++p)
      while (x % p == 0) {
        primes.insert(p);
        x /= p;
      }
    if (x > 1) primes.insert(x);
  }
  std::vector<PrimePower> factors;
  for (auto p : primes) {
    std::vector<int> log_sizes{0};
    for (int k = 1;; ++k) {
      long long pk = 1;
      for (int i = 0; i < k; ++i) pk *= p;
      long long count = 0;
      for (auto o : orders) count += (pk % o == 0) ? 1 : 0;
      int lg = 0;
      while (count > 1) {
        count /= p;
        ++lg;
      }
      if (lg == log_sizes.back()) break;
      log_sizes.push_back(lg);
    }
    // number of factors with exponent ≥ k is log_sizes[k] - log_sizes[k-1]
    for (std::size_t k = 1; k < log_sizes.size(); ++k) {
      const int at_least_k = log_sizes[k] - log_sizes[k - 1];
      const int at_least_next = k + 1 < log_sizes.size() ? log_sizes[k + 1] - log_sizes[k] : 0;
      for (int i = 0; i < at_least_k - at_least_next; ++i) factors.push_back({p, static_cast<unsigned>(k)});
    }
  }
  return FgAbGroup::from_prime_powers(0, factors);
}

long long element_order(std::size_t e, const std::vector<std::vector<std::size_t>>& table) {
  long long k = 1;
  std::size_t cur = e;
  while (cur != 0) {
    cur = table[cur][e];
    ++k;
  }
  return k;
}

std::vector<FgAbGroup> brute_middle_groups(const std::vector<long long>& a, const std::vector<long long>& c) {
  const FiniteGroup ga{a};
  const FiniteGroup gc{c};
  const std::size_t na = ga.size();
  const std::size_t nc = gc.size();
  const std::size_t m = c.size();
  std::set<FgAbGroup> out;
  // lifts[i] = index of a_i in A
  std::vector<std::size_t> lifts(m, 0);
  while (true) {
    // E = A × C; (x, s) + (y, t): add coordinates of C with carry, each carry in slot i adds a_i to A.
    std::vector<long long> orders(na * nc);
    for (std::size_t ea = 0; ea < na; ++ea)
      for (std::size_t ec = 0; ec < nc; ++ec) {
        const auto x = ga.element(ea);
        const auto s = gc.element(ec);
        // order of (x, s) by repeated addition
        std::vector<long long> acc_a(a.size(), 0);
        std::vector<long long> acc_c(m, 0);
        long long ord = 0;
        do {
          for (std::size_t i = 0; i < a.size(); ++i) acc_a[i] = (acc_a[i] + x[i]) % a[i];
          for (std::size_t i = 0; i < m; ++i) {
            acc_c[i] += s[i];
            if (acc_c[i] >= c[i]) {
              acc_c[i] -= c[i];
              acc_a = ga.add(acc_a, ga.element(lifts[i]));
            }
          }
          ++ord;
        } while (std::any_of(acc_a.begin(), acc_a.end(), [](long long v) { return v != 0; }) ||
                 std::any_of(acc_c.begin(), acc_c.end(), [](long long v) { return v != 0; }));
        orders[ea * nc + ec] = ord;
      }
    out.insert(type_from_element_orders(orders));

    std::size_t i = 0;
    while (i < m && ++lifts[i] == na) lifts[i++] = 0;
    if (i == m) break;
  }
  return {out.begin(), out.end()};
}

std::vector<FgAbGroup> brute_subgroup_types(const std::vector<long long>& orders) {
  const FiniteGroup g{orders};
  const std::size_t n = g.size();
  std::set<FgAbGroup> out;
  std::set<std::vector<bool>> seen;
  const std::size_t rank = orders.size();
  std::vector<std::size_t> gens(rank, 0);
  while (true) {
    std::vector<bool> in(n, false);
    std::vector<std::size_t> frontier{0};
    in[0] = true;
    while (!frontier.empty()) {
      const auto cur = frontier.back();
      frontier.pop_back();
      for (auto gi : gens) {
        const auto next = g.index(g.add(g.element(cur), g.element(gi)));
        if (!in[next]) {
          in[next] = true;
          frontier.push_back(next);
        }
      }
    }
    if (seen.insert(in).second) {
      std::vector<long long> ords;
      for (std::size_t e = 0; e < n; ++e) {
        if (!in[e]) continue;
        const auto x = g.element(e);
        long long o = 1;
        for (std::size_t i = 0; i < rank; ++i) {
          const long long oi = orders[i] / std::gcd(orders[i], x[i]);
          o = std::lcm(o, oi);
        }
        ords.push_back(o);
      }
      out.insert(type_from_element_orders(ords));
    }
    std::size_t i = 0;
    while (i < rank && ++gens[i] == n) gens[i++] = 0;
    if (i == rank) break;
  }
  return {out.begin(), out.end()};
}

std::size_t brute_hom_count(const std::vector<long long>& c, const std::vector<long long>& a) {
  const FiniteGroup ga{a};
  const std::size_t na = ga.size();
  std::size_t per_generator_product = 1;
  for (auto ci : c) {
    std::size_t ok = 0;
    for (std::size_t e = 0; e < na; ++e) {
      const auto x = ga.element(e);
      bool killed = true;
      for (std::size_t i = 0; i < a.size(); ++i) killed = killed && (x[i] * ci) % a[i] == 0;
      ok += killed ? 1 : 0;
    }
    per_generator_product *= ok;
  }
  return per_generator_product;
}

namespace {

void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Int gcd_of_minors(const Matrix& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  choose(m.rows(), k, 0, cur, rs);
  choose(m.cols(), k, 0, cur, cs);
  Int g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      Matrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
      Int d = determinant(sub);
      if (d < 0) d = -d;
      g = boost::multiprecision::gcd(g, d);
    }
  return g;
}

TorsionGroup random_odd_torsion(Rng& rng, std::size_t max_factors) {
  static const long long primes[] = {3, 3, 3, 5, 7, 11};
  std::vector<PrimePower> f;
  const auto count = static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(max_factors)));
  for (std::size_t i = 0; i < count; ++i) {
    const long long p = primes[uniform(rng, 0, 5)];
    f.push_back({p, static_cast<unsigned>(uniform(rng, 1, p == 3 ? 3 : 1))});
  }
  return TorsionGroup::of(f);
}

ManifoldDescriptor random_descriptor(Rng& rng, int n, unsigned max_rank, std::size_t max_torsion) {
  while (true) {
    const unsigned l = static_cast<unsigned>(uniform(rng, 0, max_rank));
    unsigned k = static_cast<unsigned>(uniform(rng, 0, max_rank));
    if (n == 2) k -= k % 2;
    const unsigned c = static_cast<unsigned>(uniform(rng, 0, l));
    const bool spin = n != 2 || uniform(rng, 0, 1) == 0;
    const TorsionGroup t = random_odd_torsion(rng, max_torsion);
    if (!spin && l == c) continue;
    ManifoldDescriptor d = make_descriptor(n, l, k, t, spin, c);
    for (auto& b : d.attach.blocks)
      for (auto& e : b.entries) e = uniform(rng, 0, b.modulus.convert_to<long long>() - 1);
    if (n == 2) {
      auto& y = d.attach.block("y").entries;
      if (spin) {
        std::fill(y.begin(), y.end(), Int(0));
      } else if (std::all_of(y.begin(), y.end(), [](const Int& v) { return v == 0; })) {
        y[static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(y.size()) - 1))] = 1;
      }
    }
    if (validate(d).ok()) return d;
  }
}

}  // namespace manicoh::testing
