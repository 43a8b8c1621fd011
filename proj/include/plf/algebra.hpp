#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "plf/error.hpp"
#include "plf/linear_combination.hpp"
#include "plf/rational.hpp"

namespace plf {

/// Index of a basis element b_i. Always positive.
using GenId = int;

/// Commutative monomial b_I over a multiset I of generator indices.
/// The empty multiset is the unit b_∅ = 1.
class Monomial {
public:
  Monomial() = default;
  Monomial(std::initializer_list<GenId> ids) : ids_(ids) { std::sort(ids_.begin(), ids_.end()); }
  explicit Monomial(std::vector<GenId> ids) : ids_(std::move(ids)) { std::sort(ids_.begin(), ids_.end()); }

  static Monomial unit() { return {}; }
  static Monomial generator(GenId id) { return Monomial{id}; }

  const std::vector<GenId> &indices() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool is_unit() const { return ids_.empty(); }
  bool is_generator() const { return ids_.size() == 1; }

  std::size_t multiplicity(GenId id) const {
    auto [lo, hi] = std::equal_range(ids_.begin(), ids_.end(), id);
    return static_cast<std::size_t>(hi - lo);
  }

  /// Distinct indices with their multiplicities, ascending.
  std::vector<std::pair<GenId, std::size_t>> runs() const {
    std::vector<std::pair<GenId, std::size_t>> out;
    for (GenId id : ids_) {
      if (!out.empty() && out.back().first == id)
        ++out.back().second;
      else
        out.emplace_back(id, 1);
    }
    return out;
  }

  /// Removes one occurrence of `id`; throws if absent.
  Monomial without(GenId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id)
      throw InputError("monomial does not contain b" + std::to_string(id));
    Monomial out = *this;
    out.ids_.erase(out.ids_.begin() + (it - ids_.begin()));
    return out;
  }

  friend Monomial operator*(const Monomial &a, const Monomial &b) {
    Monomial out;
    out.ids_.reserve(a.size() + b.size());
    std::merge(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(), std::back_inserter(out.ids_));
    return out;
  }

  friend bool operator==(const Monomial &, const Monomial &) = default;

  /// Canonical order: fewer factors first, then lexicographic on indices.
  friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b) {
    if (auto c = a.size() <=> b.size(); c != 0)
      return c;
    return a.ids_ <=> b.ids_;
  }

private:
  std::vector<GenId> ids_;
};

/// Element of the polynomial algebra S(V).
using Polynomial = LinearCombination<Monomial>;

inline Polynomial operator*(const Polynomial &a, const Polynomial &b) {
  Polynomial out;
  for (const auto &[ma, ca] : a)
    for (const auto &[mb, cb] : b)
      out.add(ma * mb, ca * cb);
  return out;
}

inline Polynomial operator*(const Polynomial &a, const Monomial &m) {
  Polynomial out;
  for (const auto &[ma, ca] : a)
    out.add(ma * m, ca);
  return out;
}

inline Polynomial constant(const Rational &c) { return Polynomial(Monomial::unit(), c); }

/// Coefficient of b_∅.
inline Rational counit(const Polynomial &p) { return p.coefficient(Monomial::unit()); }

using TensorKey = std::vector<Monomial>;

/// Element of S(V)^{⊗k} for a fixed rank k ≥ 1. Tensors of different
/// ranks never compare equal.
class Tensor {
public:
  explicit Tensor(std::size_t rank) : rank_(rank) {
    if (rank == 0)
      throw InputError("tensor rank must be positive");
  }
  Tensor(TensorKey key, const Rational &coeff) : Tensor(key.size()) { add(key, coeff); }

  static Tensor unit(std::size_t rank) { return Tensor(TensorKey(rank), Rational(1)); }
  static Tensor from(const Polynomial &p) {
    Tensor t(1);
    for (const auto &[m, c] : p)
      t.add({m}, c);
    return t;
  }

  std::size_t rank() const { return rank_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  Rational coefficient(const TensorKey &key) const { return terms_.coefficient(key); }

  void add(const TensorKey &key, const Rational &coeff) {
    if (key.size() != rank_)
      throw InputError("tensor key of length " + std::to_string(key.size()) + " in rank " +
                       std::to_string(rank_) + " tensor");
    terms_.add(key, coeff);
  }

  Tensor &operator+=(const Tensor &o) {
    check_rank(o);
    terms_ += o.terms_;
    return *this;
  }
  Tensor &operator-=(const Tensor &o) {
    check_rank(o);
    terms_ -= o.terms_;
    return *this;
  }
  Tensor &operator*=(const Rational &s) {
    terms_ *= s;
    return *this;
  }
  void add_scaled(const Tensor &o, const Rational &s) {
    check_rank(o);
    terms_.add_scaled(o.terms_, s);
  }

  friend Tensor operator+(Tensor a, const Tensor &b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor &b) { return a -= b; }
  friend Tensor operator*(const Rational &s, Tensor a) { return a *= s; }

  /// Componentwise product; ranks must agree.
  friend Tensor operator*(const Tensor &a, const Tensor &b) {
    a.check_rank(b);
    Tensor out(a.rank_);
    TensorKey key(a.rank_);
    for (const auto &[ka, ca] : a.terms_)
      for (const auto &[kb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.rank_; ++i)
          key[i] = ka[i] * kb[i];
        out.terms_.add(key, ca * cb);
      }
    return out;
  }

  /// m^[k]: multiply all legs together.
  Polynomial multiply_out() const {
    Polynomial out;
    for (const auto &[key, c] : terms_) {
      Monomial m;
      for (const auto &leg : key)
        m = m * leg;
      out.add(m, c);
    }
    return out;
  }

  friend bool operator==(const Tensor &a, const Tensor &b) { return a.rank_ == b.rank_ && a.terms_ == b.terms_; }

private:
  void check_rank(const Tensor &o) const {
    if (o.rank_ != rank_)
      throw InputError("tensor rank mismatch: " + std::to_string(rank_) + " vs " + std::to_string(o.rank_));
  }

  std::size_t rank_;
  LinearCombination<TensorKey> terms_;
};

inline Tensor tensor_mul(const Tensor &a, const Tensor &b) { return a * b; }

// Text rendering: b_{1,2,2} -> "b1b2b2", unit -> "1".
inline std::string to_string(const Monomial &m) {
  if (m.is_unit())
    return "1";
  std::string out;
  for (GenId id : m.indices())
    out += "b" + std::to_string(id);
  return out;
}

namespace detail {

template <class Terms, class Render>
std::string render_sum(const Terms &terms, Render &&render_key) {
  if (terms.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &[key, c] : terms) {
    if (first) {
      out += c.str();
    } else {
      out += c.sign() < 0 ? " - " : " + ";
      out += (c.sign() < 0 ? -c : c).str();
    }
    out += " " + render_key(key);
    first = false;
  }
  return out;
}

} // namespace detail

inline std::string to_string(const Polynomial &p) {
  return detail::render_sum(p, [](const Monomial &m) { return to_string(m); });
}

inline std::string to_string(const TensorKey &key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i)
      out += " (x) ";
    out += to_string(key[i]);
  }
  return out;
}

inline std::string to_string(const Tensor &t) {
  return detail::render_sum(t, [](const TensorKey &k) { return to_string(k); });
}

inline std::ostream &operator<<(std::ostream &os, const Monomial &m) { return os << to_string(m); }
inline std::ostream &operator<<(std::ostream &os, const Polynomial &p) { return os << to_string(p); }
inline std::ostream &operator<<(std::ostream &os, const Tensor &t) { return os << to_string(t); }

} // namespace plf
