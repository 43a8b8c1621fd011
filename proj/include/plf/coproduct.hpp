#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "plf/hopf_spec.hpp"

namespace plf {

/// Evaluates Δ, Δ̄ and their iterates for a coproduct table. Δ on
/// monomials is memoized behind a mutex; results are pure functions of
/// the spec.
class CoproductEngine {
public:
  explicit CoproductEngine(CoproductSpec spec) : spec_(std::move(spec)), cache_(std::make_unique<Cache>()) {
    for (const auto &g : spec_.generators)
      degree_[g.id] = g.degree;
    for (const auto &e : spec_.entries)
      by_source_[e.source].push_back(e);
  }

  const CoproductSpec &spec() const { return spec_; }

  int degree(GenId id) const {
    check(id);
    return degree_.at(id);
  }
  int degree(const Monomial &m) const {
    int d = 0;
    for (GenId id : m.indices())
      d += degree(id);
    return d;
  }

  /// Entries with the given source, in table order.
  const std::vector<CoproductEntry> &entries_for(GenId id) const {
    check(id);
    static const std::vector<CoproductEntry> none;
    auto it = by_source_.find(id);
    return it == by_source_.end() ? none : it->second;
  }

  /// Δ̄(b_i) = Σ λ^{i;i₀}_I b_{i₀} ⊗ b_I.
  Tensor reduced(GenId id) const {
    Tensor out(2);
    for (const auto &e : entries_for(id))
      out.add({Monomial::generator(e.left), e.right}, e.coeff);
    return out;
  }

  /// Δ(b_I), multiplicative from Δ(b_i) = b_i⊗1 + 1⊗b_i + Δ̄(b_i).
  Tensor coproduct(const Monomial &m) const {
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->coproduct.find(m); it != cache_->coproduct.end())
        return it->second;
    }
    Tensor out = Tensor::unit(2);
    if (!m.is_unit()) {
      GenId last = m.indices().back();
      Tensor gen = reduced(last);
      gen.add({Monomial::generator(last), Monomial::unit()}, Rational(1));
      gen.add({Monomial::unit(), Monomial::generator(last)}, Rational(1));
      out = coproduct(m.without(last)) * gen;
    }
    std::lock_guard lock(cache_->mutex);
    cache_->coproduct.emplace(m, out);
    return out;
  }

  Tensor coproduct(const Polynomial &p) const {
    Tensor out(2);
    for (const auto &[m, c] : p)
      out.add_scaled(coproduct(m), c);
    return out;
  }

  /// Δ̄(x) = Δ(x) − x⊗1 − 1⊗x.
  Tensor reduced(const Monomial &m) const {
    Tensor out = coproduct(m);
    out.add({m, Monomial::unit()}, Rational(-1));
    out.add({Monomial::unit(), m}, Rational(-1));
    return out;
  }

  Tensor reduced(const Polynomial &p) const {
    Tensor out(2);
    for (const auto &[m, c] : p)
      out.add_scaled(reduced(m), c);
    return out;
  }

  /// Applies Δ (or Δ̄ when `reduced_only`) to leg `leg` of `t`, raising the rank by one.
  Tensor expand_leg(const Tensor &t, std::size_t leg, bool reduced_only) const {
    if (leg >= t.rank())
      throw InputError("leg " + std::to_string(leg) + " out of range for rank " + std::to_string(t.rank()));
    Tensor out(t.rank() + 1);
    for (const auto &[key, c] : t) {
      Tensor split = reduced_only ? reduced(key[leg]) : coproduct(key[leg]);
      for (const auto &[pair, d] : split) {
        TensorKey next;
        next.reserve(key.size() + 1);
        next.insert(next.end(), key.begin(), key.begin() + leg);
        next.push_back(pair[0]);
        next.push_back(pair[1]);
        next.insert(next.end(), key.begin() + leg + 1, key.end());
        out.add(next, c * d);
      }
    }
    return out;
  }

  enum class Leg { rightmost, leftmost };

  /// Δ̄^[k](b_i): k = 1 gives b_i, each further step splits one leg with Δ̄.
  Tensor iterated_reduced(GenId id, std::size_t k, Leg leg = Leg::rightmost) const {
    check(id);
    if (k == 0)
      throw InputError("iterated coproduct order must be >= 1");
    Tensor out({Monomial::generator(id)}, Rational(1));
    for (std::size_t r = 1; r < k; ++r)
      out = expand_leg(out, leg == Leg::rightmost ? out.rank() - 1 : 0, true);
    return out;
  }

private:
  struct Cache {
    std::mutex mutex;
    std::map<Monomial, Tensor> coproduct;
  };

  void check(GenId id) const {
    if (!degree_.count(id))
      throw InputError("unknown generator id " + std::to_string(id) + " in spec \"" + spec_.name + "\"");
  }

  CoproductSpec spec_;
  std::map<GenId, int> degree_;
  std::map<GenId, std::vector<CoproductEntry>> by_source_;
  std::unique_ptr<Cache> cache_;
};

/// All monomials b_I (including 1) with total degree ≤ max_degree, in canonical order.
inline std::vector<Monomial> monomials_up_to(const CoproductSpec &spec, int max_degree) {
  std::vector<std::pair<GenId, int>> gens;
  for (const auto &g : spec.generators)
    gens.emplace_back(g.id, g.degree);
  std::sort(gens.begin(), gens.end());
  std::vector<Monomial> out;
  std::vector<GenId> current;
  std::function<void(std::size_t, int)> grow = [&](std::size_t from, int budget) {
    out.emplace_back(current);
    for (std::size_t n = from; n < gens.size(); ++n) {
      if (gens[n].second > budget)
        continue;
      current.push_back(gens[n].first);
      grow(n, budget - gens[n].second);
      current.pop_back();
    }
  };
  if (max_degree >= 0)
    grow(0, max_degree);
  std::sort(out.begin(), out.end());
  return out;
}

struct CheckFailure {
  std::string check;
  Monomial subject;
  std::string detail;
};

/// (Δ⊗id)∘Δ = (id⊗Δ)∘Δ on every monomial of degree ≤ max_degree.
inline std::vector<CheckFailure> check_coassociativity(const CoproductEngine &engine, int max_degree) {
  std::vector<CheckFailure> out;
  for (const auto &m : monomials_up_to(engine.spec(), max_degree)) {
    Tensor cop = engine.coproduct(m);
    Tensor lhs = engine.expand_leg(cop, 0, false);
    Tensor rhs = engine.expand_leg(cop, 1, false);
    if (!(lhs == rhs))
      out.push_back({"coassociativity", m, "(D(x)id)D - (id(x)D)D = " + to_string(lhs - rhs)});
  }
  return out;
}

/// (ε⊗id)∘Δ = id = (id⊗ε)∘Δ on every monomial of degree ≤ max_degree.
inline std::vector<CheckFailure> check_counit(const CoproductEngine &engine, int max_degree) {
  std::vector<CheckFailure> out;
  for (const auto &m : monomials_up_to(engine.spec(), max_degree)) {
    Polynomial left, right;
    for (const auto &[key, c] : engine.coproduct(m)) {
      if (key[0].is_unit())
        left.add(key[1], c);
      if (key[1].is_unit())
        right.add(key[0], c);
    }
    Polynomial expected(m);
    if (!(left == expected))
      out.push_back({"counit", m, "(e(x)id)D(x) = " + to_string(left)});
    if (!(right == expected))
      out.push_back({"counit", m, "(id(x)e)D(x) = " + to_string(right)});
  }
  return out;
}

/// A linear map S(V) → S(V) given by its values on monomials.
using Endomap = std::function<Polynomial(const Monomial &)>;

/// Checks m∘(S⊗I)∘Δ = η∘ε on every monomial of degree ≤ max_degree.
inline std::vector<CheckFailure> convolution_check(const CoproductEngine &engine, int max_degree, const Endomap &antipode) {
  std::vector<CheckFailure> out;
  for (const auto &m : monomials_up_to(engine.spec(), max_degree)) {
    Polynomial result;
    for (const auto &[key, c] : engine.coproduct(m))
      result.add_scaled(antipode(key[0]) * key[1], c);
    Polynomial expected = constant(m.is_unit() ? Rational(1) : Rational(0));
    if (!(result == expected))
      out.push_back({"convolution", m, "(S*I)(x) = " + to_string(result)});
  }
  return out;
}

} // namespace plf
