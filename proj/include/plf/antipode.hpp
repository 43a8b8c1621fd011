#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "plf/coproduct.hpp"
#include "plf/linearization.hpp"
#include "plf/tree.hpp"

namespace plf {

enum class Method { forest, dyson_salam, bogoliubov };

inline constexpr Method all_methods[] = {Method::forest, Method::dyson_salam, Method::bogoliubov};

inline std::string_view to_string(Method m) {
  switch (m) {
  case Method::forest:
    return "forest";
  case Method::dyson_salam:
    return "dyson-salam";
  case Method::bogoliubov:
    return "bogoliubov";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
  for (Method m : all_methods)
    if (to_string(m) == name)
      return m;
  return std::nullopt;
}

struct TermStats {
  std::size_t dyson_salam_terms = 0;               // (order k, tree T) pairs with k-lin(T) nonempty
  std::size_t forest_terms = 0;                    // |𝒯ᵢ|
  std::map<std::size_t, std::size_t> trees_by_length; // l(T) -> count
};

/// Antipode of a graded right-handed polynomial Hopf algebra by three
/// routes. Generator values are memoized per method.
class AntipodeCalculator {
public:
  explicit AntipodeCalculator(CoproductSpec spec)
      : engine_(spec), catalog_(spec), cache_(std::make_unique<Cache>()) {}

  const CoproductEngine &engine() const { return engine_; }
  const TreeCatalog &catalog() const { return catalog_; }
  const CoproductSpec &spec() const { return engine_.spec(); }

  /// S(b_i) = Σ_{T∈𝒯ᵢ} (−1)^{l(T)} weight(T) v(T).
  Polynomial forest(GenId id) const {
    Polynomial out;
    for (const auto &t : catalog_.trees(id)) {
      Rational w = weight(t, spec());
      out.add(value(t), length(t) % 2 ? -w : w);
    }
    return out;
  }

  /// S(b_i) = Σ_{k≥1} (−1)^k m^[k]∘Δ̄^[k](b_i); terms vanish past k = deg(b_i).
  Polynomial dyson_salam(GenId id) const {
    Polynomial out;
    const int deg = engine_.degree(id);
    Tensor iterate({Monomial::generator(id)}, Rational(1));
    for (int k = 1; k <= deg && !iterate.empty(); ++k) {
      out.add_scaled(iterate.multiply_out(), Rational(k % 2 ? -1 : 1));
      iterate = engine_.expand_leg(iterate, iterate.rank() - 1, true);
    }
    return out;
  }

  /// S(b_i) = −b_i − m∘(S⊗I)∘Δ̄(b_i), by recursion on degree.
  Polynomial bogoliubov(GenId id) const {
    if (auto hit = lookup(Method::bogoliubov, id))
      return *hit;
    Polynomial out(Monomial::generator(id), Rational(-1));
    for (const auto &[key, c] : engine_.reduced(id))
      out.add_scaled(apply(key[0], Method::bogoliubov) * key[1], -c);
    store(Method::bogoliubov, id, out);
    return out;
  }

  Polynomial generator(GenId id, Method m) const {
    if (auto hit = lookup(m, id))
      return *hit;
    Polynomial out;
    switch (m) {
    case Method::forest:
      out = forest(id);
      break;
    case Method::dyson_salam:
      out = dyson_salam(id);
      break;
    case Method::bogoliubov:
      out = bogoliubov(id);
      break;
    }
    store(m, id, out);
    return out;
  }

  /// S(b_I) = Π S(b_i): S is an antimorphism and S(V) is commutative.
  Polynomial apply(const Monomial &m, Method method) const {
    Polynomial out = constant(Rational(1));
    for (GenId id : m.indices())
      out = out * generator(id, method);
    return out;
  }

  Polynomial apply(const Polynomial &p, Method method) const {
    Polynomial out;
    for (const auto &[m, c] : p)
      out.add_scaled(apply(m, method), c);
    return out;
  }

  Endomap endomap(Method method) const {
    return [this, method](const Monomial &m) { return apply(m, method); };
  }

  TermStats term_stats(GenId id) const {
    TermStats out;
    for (const auto &t : catalog_.trees(id)) {
      ++out.forest_terms;
      ++out.trees_by_length[length(t)];
      Poset p = flatten(t);
      for (std::size_t k = 1; k <= p.size(); ++k)
        if (count_linearizations(p, k) > 0)
          ++out.dyson_salam_terms;
    }
    return out;
  }

private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<Method, GenId>, Polynomial> values;
  };

  std::optional<Polynomial> lookup(Method m, GenId id) const {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->values.find({m, id});
    if (it == cache_->values.end())
      return std::nullopt;
    return it->second;
  }
  void store(Method m, GenId id, const Polynomial &p) const {
    std::lock_guard lock(cache_->mutex);
    cache_->values.emplace(std::pair{m, id}, p);
  }

  CoproductEngine engine_;
  TreeCatalog catalog_;
  std::unique_ptr<Cache> cache_;
};

inline Polynomial antipode_forest(const CoproductSpec &spec, GenId id) { return AntipodeCalculator(spec).forest(id); }
inline Polynomial antipode_dyson_salam(const CoproductSpec &spec, GenId id) {
  return AntipodeCalculator(spec).dyson_salam(id);
}
inline Polynomial antipode_bogoliubov(const CoproductSpec &spec, GenId id) {
  return AntipodeCalculator(spec).bogoliubov(id);
}
inline Polynomial antipode_poly(const CoproductSpec &spec, const Polynomial &p, Method method) {
  return AntipodeCalculator(spec).apply(p, method);
}
inline TermStats term_stats(const CoproductSpec &spec, GenId id) { return AntipodeCalculator(spec).term_stats(id); }

} // namespace plf
