#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plf/coproduct.hpp"
#include "plf/hopf_spec.hpp"
#include "plf/spec_io.hpp"
#include "plf/tree.hpp"

namespace plf {

/// Element of the preLie algebra L: linear combination of basis ids.
using LieVector = LinearCombination<GenId>;

/// Structure constants of a graded preLie product b_i ↶ b_j, truncated at
/// a total degree.
struct PreLieSpec {
  std::string name;
  std::vector<Generator> basis;
  std::map<std::pair<GenId, GenId>, LieVector> products;
  int truncation = 0;
};

/// A value together with a flag saying a product above the truncation
/// degree was dropped while computing it.
template <class T>
struct Truncatable {
  T value;
  bool truncated = false;
};

inline Polynomial as_polynomial(const LieVector &v) {
  Polynomial out;
  for (const auto &[id, c] : v)
    out.add(Monomial::generator(id), c);
  return out;
}

/// Evaluator for ↶, its symmetric-brace extension and the Guin–Oudom
/// product ∗ on S(L).
class PreLieAlgebra {
public:
  explicit PreLieAlgebra(PreLieSpec spec) : spec_(std::move(spec)), cache_(std::make_unique<Cache>()) {
    if (spec_.truncation < 1)
      throw InputError("preLie spec \"" + spec_.name + "\": truncation must be >= 1");
    for (const auto &g : spec_.basis) {
      if (g.id <= 0 || g.degree < 1)
        throw InputError("preLie spec \"" + spec_.name + "\": basis element " + std::to_string(g.id) +
                         " needs a positive id and degree");
      if (!degree_.emplace(g.id, g.degree).second)
        throw InputError("preLie spec \"" + spec_.name + "\": duplicate basis id " + std::to_string(g.id));
    }
    for (const auto &[key, result] : spec_.products) {
      std::string where = "product " + std::to_string(key.first) + " <- " + std::to_string(key.second);
      int expected = degree(key.first) + degree(key.second);
      for (const auto &[id, c] : result)
        if (degree(id) != expected)
          throw InputError("preLie spec \"" + spec_.name + "\": " + where + " has term b" + std::to_string(id) +
                           " of degree " + std::to_string(degree(id)) + ", expected " + std::to_string(expected));
    }
  }

  const PreLieSpec &spec() const { return spec_; }
  int truncation() const { return spec_.truncation; }

  int degree(GenId id) const {
    auto it = degree_.find(id);
    if (it == degree_.end())
      throw InputError("unknown preLie basis id " + std::to_string(id) + " in \"" + spec_.name + "\"");
    return it->second;
  }
  int degree(const Monomial &m) const {
    int d = 0;
    for (GenId id : m.indices())
      d += degree(id);
    return d;
  }

  std::vector<GenId> ids() const {
    std::vector<GenId> out;
    for (const auto &[id, d] : degree_)
      out.push_back(id);
    return out;
  }

  /// b_a ↶ b_b; flagged and zero when it lands above the truncation degree.
  Truncatable<LieVector> product(GenId a, GenId b) const {
    if (degree(a) + degree(b) > spec_.truncation)
      return {{}, true};
    auto it = spec_.products.find({a, b});
    return {it == spec_.products.end() ? LieVector{} : it->second, false};
  }

  Truncatable<LieVector> product(const LieVector &x, const LieVector &y) const {
    Truncatable<LieVector> out;
    for (const auto &[a, ca] : x)
      for (const auto &[b, cb] : y) {
        auto p = product(a, b);
        out.truncated |= p.truncated;
        out.value.add_scaled(p.value, ca * cb);
      }
    return out;
  }

  /// a ↶ B for a monomial B: a↶1 = a, and
  /// a↶(B·b) = (a↶B)↶b − Σ_{b'∈B} a↶((B/b')·(b'↶b)).
  Truncatable<LieVector> brace(GenId a, const Monomial &B) const {
    if (B.is_unit())
      return {LieVector(a), false};
    if (B.is_generator())
      return product(a, B.indices().front());
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->brace.find({a, B}); it != cache_->brace.end())
        return it->second;
    }
    const GenId last = B.indices().back();
    const Monomial rest = B.without(last);
    Truncatable<LieVector> inner = brace(a, rest);
    Truncatable<LieVector> out = product(inner.value, LieVector(last));
    out.truncated |= inner.truncated;
    for (const auto &[factor, count] : rest.runs()) {
      auto fb = product(factor, last);
      out.truncated |= fb.truncated;
      const Monomial others = rest.without(factor);
      for (const auto &[k, c] : fb.value) {
        auto term = brace(a, others * Monomial::generator(k));
        out.truncated |= term.truncated;
        out.value.add_scaled(term.value, -c * Rational(static_cast<long>(count)));
      }
    }
    std::lock_guard lock(cache_->mutex);
    cache_->brace.emplace(std::pair{a, B}, out);
    return out;
  }

  Truncatable<LieVector> brace(const LieVector &a, const Monomial &B) const {
    Truncatable<LieVector> out;
    for (const auto &[id, c] : a) {
      auto part = brace(id, B);
      out.truncated |= part.truncated;
      out.value.add_scaled(part.value, c);
    }
    return out;
  }

  /// (a₁…a_l) ∗ (b₁…b_m) = Σ_f B₀ (a₁↶B₁)…(a_l↶B_l) over f: [m] → {0..l}.
  Truncatable<Polynomial> star(const Monomial &a, const Monomial &b) const {
    const auto &as = a.indices();
    const auto &bs = b.indices();
    const std::size_t l = as.size(), m = bs.size();
    Truncatable<Polynomial> out;
    std::vector<std::size_t> f(m, 0);
    std::vector<std::vector<GenId>> blocks(l + 1);
    while (true) {
      for (auto &blk : blocks)
        blk.clear();
      for (std::size_t j = 0; j < m; ++j)
        blocks[f[j]].push_back(bs[j]);
      Polynomial term{Monomial(blocks[0])};
      for (std::size_t i = 0; i < l && !term.empty(); ++i) {
        auto piece = brace(as[i], Monomial(blocks[i + 1]));
        out.truncated |= piece.truncated;
        term = term * as_polynomial(piece.value);
      }
      out.value += term;
      std::size_t j = 0;
      while (j < m && ++f[j] == l + 1)
        f[j++] = 0;
      if (j == m)
        break;
    }
    return out;
  }

  Truncatable<Polynomial> star(const Polynomial &x, const Polynomial &y) const {
    Truncatable<Polynomial> out;
    for (const auto &[mx, cx] : x)
      for (const auto &[my, cy] : y) {
        auto p = star(mx, my);
        out.truncated |= p.truncated;
        out.value.add_scaled(p.value, cx * cy);
      }
    return out;
  }

  /// Componentwise ∗ on S(L)⊗S(L).
  Truncatable<Tensor> star(const Tensor &x, const Tensor &y) const {
    if (x.rank() != y.rank())
      throw InputError("tensor rank mismatch in star product");
    Truncatable<Tensor> out{Tensor(x.rank()), false};
    for (const auto &[kx, cx] : x)
      for (const auto &[ky, cy] : y) {
        Tensor piece = Tensor::unit(x.rank());
        for (std::size_t leg = 0; leg < x.rank(); ++leg) {
          auto p = star(kx[leg], ky[leg]);
          out.truncated |= p.truncated;
          Tensor factor(x.rank());
          for (const auto &[m, c] : p.value) {
            TensorKey k(x.rank());
            k[leg] = m;
            factor.add(k, c);
          }
          piece = piece * factor;
        }
        out.value.add_scaled(piece, cx * cy);
      }
    return out;
  }

private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<GenId, Monomial>, Truncatable<LieVector>> brace;
  };

  PreLieSpec spec_;
  std::map<GenId, int> degree_;
  std::unique_ptr<Cache> cache_;
};

/// Unshuffle coproduct on S(L): Δ(l₁…l_n) = Σ_{S⊆[n]} l_S ⊗ l_{[n]−S}.
inline Tensor unshuffle(const Monomial &m) {
  const auto &ids = m.indices();
  if (ids.size() >= 24)
    throw InputError("monomial too long for unshuffle");
  Tensor out(2);
  for (unsigned long mask = 0; mask < (1ul << ids.size()); ++mask) {
    std::vector<GenId> in, out_ids;
    for (std::size_t n = 0; n < ids.size(); ++n)
      (mask >> n & 1 ? in : out_ids).push_back(ids[n]);
    out.add({Monomial(std::move(in)), Monomial(std::move(out_ids))}, Rational(1));
  }
  return out;
}

inline Tensor unshuffle(const Polynomial &p) {
  Tensor out(2);
  for (const auto &[m, c] : p)
    out.add_scaled(unshuffle(m), c);
  return out;
}

/// Nonempty L-monomials with total degree ≤ max_degree.
inline std::vector<Monomial> lie_monomials_up_to(const PreLieAlgebra &alg, int max_degree) {
  CoproductSpec shape;
  for (GenId id : alg.ids())
    shape.generators.push_back({id, alg.degree(id), {}});
  auto all = monomials_up_to(shape, max_degree);
  all.erase(std::remove_if(all.begin(), all.end(), [](const Monomial &m) { return m.is_unit(); }), all.end());
  return all;
}

struct PreLieFinding {
  std::string check;
  std::string subject;
  std::string detail;
};

struct PreLieReport {
  std::vector<PreLieFinding> findings;
  std::size_t instances = 0; // checked instances
  std::size_t skipped = 0;   // instances that hit the truncation
  bool ok() const { return findings.empty(); }
};

namespace detail {

inline std::string lie_to_string(const LieVector &v) {
  return render_sum(v, [](GenId id) { return "b" + std::to_string(id); });
}

} // namespace detail

/// (x↶y)↶z − x↶(y↶z) = (x↶z)↶y − x↶(z↶y) on basis triples inside the truncation.
inline PreLieReport prelie_check(const PreLieAlgebra &alg) {
  PreLieReport report;
  const auto ids = alg.ids();
  for (GenId x : ids)
    for (GenId y : ids)
      for (GenId z : ids) {
        if (alg.degree(x) + alg.degree(y) + alg.degree(z) > alg.truncation())
          continue;
        auto assoc = [&](GenId b, GenId c) {
          auto xb = alg.product(x, b);
          auto outer = alg.product(xb.value, LieVector(c));
          auto bc = alg.product(b, c);
          auto inner = alg.product(LieVector(x), bc.value);
          return Truncatable<LieVector>{outer.value - inner.value,
                                        xb.truncated || outer.truncated || bc.truncated || inner.truncated};
        };
        auto lhs = assoc(y, z), rhs = assoc(z, y);
        if (lhs.truncated || rhs.truncated) {
          ++report.skipped;
          continue;
        }
        ++report.instances;
        if (!(lhs.value == rhs.value))
          report.findings.push_back({"prelie-identity",
                                     "(b" + std::to_string(x) + ", b" + std::to_string(y) + ", b" + std::to_string(z) + ")",
                                     "associator difference " + detail::lie_to_string(lhs.value - rhs.value)});
      }
  return report;
}

/// (x∗y)∗z = x∗(y∗z) on all monomial triples of total degree ≤ max_degree.
inline PreLieReport check_star_associativity(const PreLieAlgebra &alg, int max_degree) {
  PreLieReport report;
  const auto monos = lie_monomials_up_to(alg, max_degree);
  for (const auto &x : monos)
    for (const auto &y : monos)
      for (const auto &z : monos) {
        if (alg.degree(x) + alg.degree(y) + alg.degree(z) > max_degree)
          continue;
        auto xy = alg.star(x, y);
        auto lhs = alg.star(xy.value, Polynomial(z));
        auto yz = alg.star(y, z);
        auto rhs = alg.star(Polynomial(x), yz.value);
        if (xy.truncated || lhs.truncated || yz.truncated || rhs.truncated) {
          ++report.skipped;
          continue;
        }
        ++report.instances;
        if (!(lhs.value == rhs.value))
          report.findings.push_back({"star-associativity", to_string(x) + " * " + to_string(y) + " * " + to_string(z),
                                     "difference " + to_string(lhs.value - rhs.value)});
      }
  return report;
}

/// S^n(L) ∗ S^m(L) ⊂ ⊕_{n≤i≤n+m} S^i(L).
inline PreLieReport check_filtration(const PreLieAlgebra &alg, int max_degree) {
  PreLieReport report;
  const auto monos = lie_monomials_up_to(alg, max_degree);
  for (const auto &x : monos)
    for (const auto &y : monos) {
      if (alg.degree(x) + alg.degree(y) > max_degree)
        continue;
      auto p = alg.star(x, y);
      if (p.truncated) {
        ++report.skipped;
        continue;
      }
      ++report.instances;
      for (const auto &[m, c] : p.value)
        if (m.size() < x.size() || m.size() > x.size() + y.size())
          report.findings.push_back({"filtration", to_string(x) + " * " + to_string(y),
                                     "term " + to_string(m) + " of length " + std::to_string(m.size())});
    }
  return report;
}

/// Δ(x∗y) = Δ(x)∗Δ(y) for the unshuffle coproduct.
inline PreLieReport check_hopf_compatibility(const PreLieAlgebra &alg, int max_degree) {
  PreLieReport report;
  const auto monos = lie_monomials_up_to(alg, max_degree);
  for (const auto &x : monos)
    for (const auto &y : monos) {
      if (alg.degree(x) + alg.degree(y) > max_degree)
        continue;
      auto xy = alg.star(x, y);
      auto rhs = alg.star(unshuffle(x), unshuffle(y));
      if (xy.truncated || rhs.truncated) {
        ++report.skipped;
        continue;
      }
      ++report.instances;
      Tensor lhs = unshuffle(xy.value);
      if (!(lhs == rhs.value))
        report.findings.push_back({"hopf-compatibility", to_string(x) + " * " + to_string(y),
                                   "difference " + to_string(lhs - rhs.value)});
    }
  return report;
}

inline void merge(PreLieReport &into, const PreLieReport &from) {
  into.findings.insert(into.findings.end(), from.findings.begin(), from.findings.end());
  into.instances += from.instances;
  into.skipped += from.skipped;
}

// ---------------------------------------------------------------------------
// Free preLie algebra on rooted trees, ↶ = grafting onto every vertex.

/// Rooted tree with vertex colours; children kept sorted.
struct Shape {
  int colour = 0;
  std::vector<Shape> children;

  friend bool operator==(const Shape &, const Shape &) = default;
  friend std::strong_ordering operator<=>(const Shape &, const Shape &) = default;
};

namespace detail {

inline Shape sorted(Shape s) {
  for (auto &c : s.children)
    c = sorted(std::move(c));
  std::sort(s.children.begin(), s.children.end());
  return s;
}

inline int shape_degree(const Shape &s, const std::vector<int> &colour_degrees) {
  int d = colour_degrees[s.colour];
  for (const auto &c : s.children)
    d += shape_degree(c, colour_degrees);
  return d;
}

// Every tree obtained by attaching `scion` as a new child of one vertex of `stock`.
inline std::vector<Shape> graftings(const Shape &stock, const Shape &scion) {
  std::vector<Shape> out;
  Shape here = stock;
  here.children.push_back(scion);
  out.push_back(sorted(std::move(here)));
  for (std::size_t n = 0; n < stock.children.size(); ++n)
    for (auto &g : graftings(stock.children[n], scion)) {
      Shape s = stock;
      s.children[n] = std::move(g);
      out.push_back(sorted(std::move(s)));
    }
  return out;
}

inline std::string shape_label(const Shape &s, bool coloured) {
  std::string out = coloured ? std::to_string(s.colour + 1) : std::string();
  out += "[";
  for (const auto &c : s.children)
    out += shape_label(c, coloured);
  return out + "]";
}

} // namespace detail

/// Free preLie algebra on rooted trees whose vertices carry colours of the
/// given degrees, truncated at total degree `max_degree`. Basis ids follow
/// (degree, canonical shape) order; labels are bracket words such as "[[][]]".
inline PreLieSpec grafting_instance(int max_degree, const std::vector<int> &colour_degrees) {
  if (max_degree < 1)
    throw InputError("grafting instance needs max degree >= 1");
  if (colour_degrees.empty())
    throw InputError("grafting instance needs at least one colour");
  for (int d : colour_degrees)
    if (d < 1)
      throw InputError("colour degrees must be positive");

  std::vector<Shape> seeds;
  std::set<Shape> all;
  for (int c = 0; c < static_cast<int>(colour_degrees.size()); ++c)
    if (colour_degrees[c] <= max_degree) {
      seeds.push_back({c, {}});
      all.insert(seeds.back());
    }
  std::vector<Shape> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<Shape> next;
    for (const auto &s : frontier)
      for (const auto &seed : seeds)
        for (auto &g : detail::graftings(s, seed))
          if (detail::shape_degree(g, colour_degrees) <= max_degree && all.insert(g).second)
            next.push_back(g);
    frontier = std::move(next);
  }

  std::vector<std::pair<int, Shape>> ordered;
  for (const auto &s : all)
    ordered.emplace_back(detail::shape_degree(s, colour_degrees), s);
  std::sort(ordered.begin(), ordered.end());

  const bool coloured = colour_degrees.size() > 1;
  PreLieSpec spec;
  spec.name = "grafting-" + std::to_string(max_degree);
  spec.truncation = max_degree;
  std::map<Shape, GenId> id_of;
  for (std::size_t n = 0; n < ordered.size(); ++n) {
    GenId id = static_cast<GenId>(n + 1);
    id_of[ordered[n].second] = id;
    spec.basis.push_back({id, ordered[n].first, detail::shape_label(ordered[n].second, coloured)});
  }
  for (const auto &[da, a] : ordered)
    for (const auto &[db, b] : ordered) {
      if (da + db > max_degree)
        continue;
      LieVector v;
      for (const auto &g : detail::graftings(a, b))
        v.add(id_of.at(g), Rational(1));
      spec.products[{id_of.at(a), id_of.at(b)}] = v;
    }
  return spec;
}

/// Undecorated rooted trees with at most `max_vertices` vertices.
inline PreLieSpec grafting_instance(int max_vertices) { return grafting_instance(max_vertices, {1}); }

/// How a monomial b_J of S(L) pairs with its dual.
enum class Pairing {
  symmetric, // ⟨e_J, b_J⟩ = J! under the unshuffle coproduct; λ gets 1/J!
  naive,     // every monomial dual to itself with coefficient 1
};

/// Graded dual of the enveloping algebra (S(L), ∗): the right-handed
/// coproduct with λ^{k;i}_J = [b_k](b_i ↶ b_J) / J! (symmetric pairing).
/// The result is checked for structural validity, coassociativity and
/// counit up to `max_degree`; a failure throws ConstructionError.
inline CoproductSpec dualize(const PreLieSpec &spec, int max_degree, Pairing pairing = Pairing::symmetric) {
  PreLieAlgebra alg(spec);
  if (max_degree < 1)
    throw InputError("dualize needs max degree >= 1");
  if (max_degree > alg.truncation())
    throw InputError("dualize degree " + std::to_string(max_degree) + " exceeds truncation " +
                     std::to_string(alg.truncation()) + " of \"" + spec.name + "\"");
  auto identity = prelie_check(alg);
  if (!identity.ok())
    throw ConstructionError("\"" + spec.name + "\" violates the preLie identity at " + identity.findings.front().subject);

  CoproductSpec out;
  out.name = spec.name + "-dual";
  for (const auto &g : spec.basis)
    if (g.degree <= max_degree)
      out.generators.push_back(g);
  std::sort(out.generators.begin(), out.generators.end(), [](const auto &a, const auto &b) { return a.id < b.id; });

  const auto monos = lie_monomials_up_to(alg, max_degree);
  for (const auto &gen : out.generators)
    for (const auto &J : monos) {
      if (gen.degree + alg.degree(J) > max_degree)
        continue;
      auto b = alg.brace(gen.id, J);
      if (b.truncated)
        throw ConstructionError("brace b" + std::to_string(gen.id) + " <- " + to_string(J) + " hit the truncation");
      Rational scale(1);
      if (pairing == Pairing::symmetric)
        for (const auto &[id, count] : J.runs())
          scale /= Rational(detail::factorial(count));
      for (const auto &[k, c] : b.value)
        out.entries.push_back({k, gen.id, J, c * scale});
    }
  std::sort(out.entries.begin(), out.entries.end(), [](const auto &a, const auto &b) { return a.key() < b.key(); });

  if (auto report = validate_spec(out); !report.empty())
    throw ConstructionError("dual of \"" + spec.name + "\" is not a valid spec: " + describe(report));
  CoproductEngine engine(out);
  auto failures = check_coassociativity(engine, max_degree);
  auto counit = check_counit(engine, max_degree);
  failures.insert(failures.end(), counit.begin(), counit.end());
  if (!failures.empty())
    throw ConstructionError("dual of \"" + spec.name + "\" fails " + failures.front().check + " at " +
                            to_string(failures.front().subject));
  return out;
}

// ---------------------------------------------------------------------------
// PreLieSpec documents.

inline PreLieSpec load_prelie(std::string_view text) {
  using detail::json;
  json doc = detail::parse_document(text);
  if (!doc.is_object())
    throw InputError("preLie document: expected an object");
  detail::reject_unknown_keys(doc, {"name", "basis", "products", "truncation"}, "prelie");
  PreLieSpec spec;
  const json &name = detail::require(doc, "name", "prelie");
  if (!name.is_string())
    throw InputError("prelie.name: expected a string");
  spec.name = name.get<std::string>();
  spec.basis = detail::parse_generators(detail::require(doc, "basis", "prelie"), "prelie.basis");
  spec.truncation = detail::require_int(doc, "truncation", "prelie");
  std::set<GenId> declared;
  for (const auto &g : spec.basis)
    declared.insert(g.id);

  const json &products = detail::require(doc, "products", "prelie");
  if (!products.is_array())
    throw InputError("prelie.products: expected a list");
  for (std::size_t n = 0; n < products.size(); ++n) {
    std::string at = "prelie.products[" + std::to_string(n) + "]";
    const json &p = products[n];
    if (!p.is_object())
      throw InputError(at + ": expected an object");
    detail::reject_unknown_keys(p, {"left", "right", "result"}, at);
    GenId a = detail::require_int(p, "left", at), b = detail::require_int(p, "right", at);
    for (GenId id : {a, b})
      if (!declared.count(id))
        throw InputError(at + ": undeclared basis id " + std::to_string(id));
    const json &result = detail::require(p, "result", at);
    if (!result.is_array())
      throw InputError(at + ".result: expected a list");
    LieVector v;
    for (std::size_t r = 0; r < result.size(); ++r) {
      std::string rat = at + ".result[" + std::to_string(r) + "]";
      if (!result[r].is_object())
        throw InputError(rat + ": expected an object");
      detail::reject_unknown_keys(result[r], {"id", "coeff"}, rat);
      GenId id = detail::require_int(result[r], "id", rat);
      if (!declared.count(id))
        throw InputError(rat + ": undeclared basis id " + std::to_string(id));
      v.add(id, detail::parse_coeff(detail::require(result[r], "coeff", rat), rat + ".coeff"));
    }
    if (!spec.products.emplace(std::pair{a, b}, v).second)
      throw InputError(at + ": duplicate product " + std::to_string(a) + " <- " + std::to_string(b));
  }
  PreLieAlgebra check(spec); // degree homogeneity and basis sanity
  return spec;
}

inline std::string save_prelie(const PreLieSpec &spec) {
  using detail::json;
  json products = json::array();
  for (const auto &[key, v] : spec.products) {
    json result = json::array();
    for (const auto &[id, c] : v)
      result.push_back({{"id", id}, {"coeff", c.str()}});
    products.push_back({{"left", key.first}, {"right", key.second}, {"result", result}});
  }
  json doc = {{"name", spec.name},
              {"basis", detail::generators_json(spec.basis)},
              {"products", products},
              {"truncation", spec.truncation}};
  return doc.dump(2) + "\n";
}

} // namespace plf
