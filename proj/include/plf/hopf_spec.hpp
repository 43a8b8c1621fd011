#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "plf/algebra.hpp"

namespace plf {

struct Generator {
  GenId id = 0;
  int degree = 0;
  std::string label;

  friend bool operator==(const Generator &, const Generator &) = default;
};

/// One coefficient λ^{source;left}_{right} of the reduced coproduct:
/// Δ̄(b_source) ∋ coeff · b_left ⊗ b_right.
struct CoproductEntry {
  GenId source = 0;
  GenId left = 0;
  Monomial right;
  Rational coeff;

  auto key() const { return std::tie(source, left, right); }
  friend bool operator==(const CoproductEntry &, const CoproductEntry &) = default;
};

/// Graded right-handed reduced coproduct given by its coefficient table.
struct CoproductSpec {
  std::string name;
  std::vector<Generator> generators;
  std::vector<CoproductEntry> entries;

  const Generator *find(GenId id) const {
    auto it = std::find_if(generators.begin(), generators.end(), [id](const Generator &g) { return g.id == id; });
    return it == generators.end() ? nullptr : &*it;
  }
  bool declares(GenId id) const { return find(id) != nullptr; }

  int degree(GenId id) const {
    const Generator *g = find(id);
    if (!g)
      throw InputError("unknown generator id " + std::to_string(id));
    return g->degree;
  }
  int degree(const Monomial &m) const {
    int d = 0;
    for (GenId id : m.indices())
      d += degree(id);
    return d;
  }
  int max_degree() const {
    int d = 0;
    for (const auto &g : generators)
      d = std::max(d, g.degree);
    return d;
  }

  /// λ^{source;left}_{right}, zero when the table has no such entry.
  Rational coefficient(GenId source, GenId left, const Monomial &right) const {
    for (const auto &e : entries)
      if (e.source == source && e.left == left && e.right == right)
        return e.coeff;
    return Rational(0);
  }

  std::vector<GenId> ids() const {
    std::vector<GenId> out;
    for (const auto &g : generators)
      out.push_back(g.id);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Same content regardless of generator/entry ordering.
  friend bool operator==(const CoproductSpec &a, const CoproductSpec &b) {
    auto gens = [](std::vector<Generator> g) {
      std::sort(g.begin(), g.end(), [](const auto &x, const auto &y) { return x.id < y.id; });
      return g;
    };
    auto ents = [](std::vector<CoproductEntry> e) {
      std::sort(e.begin(), e.end(), [](const auto &x, const auto &y) { return x.key() < y.key(); });
      return e;
    };
    return a.name == b.name && gens(a.generators) == gens(b.generators) && ents(a.entries) == ents(b.entries);
  }
};

struct Violation {
  std::string message;
  std::optional<std::size_t> entry; // index into CoproductSpec::entries
};

using ValidationReport = std::vector<Violation>;

/// Structural checks only: id closure, positive degrees, homogeneity,
/// nonzero coefficients, nonempty right legs, unique keys.
inline ValidationReport validate_spec(const CoproductSpec &spec) {
  ValidationReport report;
  std::map<GenId, int> degree;
  for (const auto &g : spec.generators) {
    if (g.id <= 0)
      report.push_back({"generator id " + std::to_string(g.id) + " is not positive", std::nullopt});
    if (g.degree < 1)
      report.push_back({"generator " + std::to_string(g.id) + " has degree " + std::to_string(g.degree) + " < 1",
                        std::nullopt});
    if (!degree.emplace(g.id, g.degree).second)
      report.push_back({"duplicate generator id " + std::to_string(g.id), std::nullopt});
  }

  std::set<std::tuple<GenId, GenId, Monomial>> seen;
  for (std::size_t n = 0; n < spec.entries.size(); ++n) {
    const auto &e = spec.entries[n];
    std::string where = "entry " + std::to_string(n) + " (source " + std::to_string(e.source) + ", left " +
                        std::to_string(e.left) + ", right " + to_string(e.right) + ")";
    bool closed = true;
    auto need = [&](GenId id) {
      if (!degree.count(id)) {
        report.push_back({where + ": undeclared generator " + std::to_string(id), n});
        closed = false;
      }
    };
    need(e.source);
    need(e.left);
    for (GenId id : e.right.indices())
      need(id);
    if (e.right.is_unit())
      report.push_back({where + ": empty right multiset", n});
    if (e.coeff.is_zero())
      report.push_back({where + ": zero coefficient", n});
    if (closed) {
      int rhs = degree[e.left];
      for (GenId id : e.right.indices())
        rhs += degree[id];
      if (rhs != degree[e.source])
        report.push_back({where + ": degree " + std::to_string(rhs) + " != degree of source " +
                              std::to_string(degree[e.source]),
                          n});
    }
    if (!seen.emplace(e.source, e.left, e.right).second)
      report.push_back({where + ": duplicate (source,left,right)", n});
  }
  return report;
}

inline std::string describe(const ValidationReport &report) {
  std::string out;
  for (const auto &v : report) {
    if (!out.empty())
      out += "; ";
    out += v.message;
  }
  return out;
}

namespace detail {

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

} // namespace detail

/// Partial exponential Bell polynomials B_{n,k}(x_1, x_2, ...) for n ≤ max_n,
/// as polynomials in which Monomial index j stands for x_j.
inline std::vector<std::vector<Polynomial>> bell_table(int max_n) {
  std::vector<std::vector<Polynomial>> bell(max_n + 1, std::vector<Polynomial>(max_n + 1));
  bell[0][0] = constant(Rational(1));
  for (int n = 1; n <= max_n; ++n)
    for (int k = 1; k <= n; ++k)
      for (int j = 1; j <= n - k + 1; ++j) {
        const Polynomial &rest = bell[n - j][k - 1];
        if (rest.empty())
          continue;
        Rational c(detail::binomial(n - 1, j - 1));
        bell[n][k].add_scaled(rest * Monomial::generator(j), c);
      }
  return bell;
}

/// Faà di Bruno Hopf algebra truncated at `max_degree`, with b_n := a_{n+1}
/// and deg(b_n) = n. Δ(a_{n+1}) = Σ_k a_k ⊗ B_{n+1,k}(1, a_2, a_3, ...).
inline CoproductSpec faa_di_bruno_spec(int max_degree) {
  if (max_degree < 1)
    throw InputError("Faa di Bruno truncation degree must be >= 1");
  CoproductSpec spec;
  spec.name = "faa-di-bruno-" + std::to_string(max_degree);
  for (int n = 1; n <= max_degree; ++n)
    spec.generators.push_back({n, n, "b" + std::to_string(n)});

  auto bell = bell_table(max_degree + 1);
  for (int n = 2; n <= max_degree; ++n) {
    const int a = n + 1;
    // k = 1 has left leg a_1 = 1 and k = a has right leg a_1^a = 1: both drop.
    for (int k = 2; k < a; ++k) {
      for (const auto &[xm, c] : bell[a][k]) {
        std::vector<GenId> right;
        for (GenId j : xm.indices())
          if (j >= 2)
            right.push_back(j - 1);
        if (right.empty())
          continue;
        spec.entries.push_back({n, k - 1, Monomial(std::move(right)), c});
      }
    }
  }
  // x_1 -> 1 can merge several Bell monomials onto the same right leg.
  std::map<std::tuple<GenId, GenId, Monomial>, Rational> merged;
  for (const auto &e : spec.entries)
    merged[{e.source, e.left, e.right}] += e.coeff;
  spec.entries.clear();
  for (const auto &[key, c] : merged)
    if (!c.is_zero())
      spec.entries.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  return spec;
}

} // namespace plf
