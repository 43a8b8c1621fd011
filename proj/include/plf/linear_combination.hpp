#pragma once

#include <functional>
#include <map>
#include <utility>

#include "plf/rational.hpp"

namespace plf {

/// Finitely supported formal sum of keys with exact rational coefficients.
/// Zero coefficients are purged on every write, so equality is structural.
template <class Key, class Compare = std::less<Key>>
class LinearCombination {
public:
  using key_type = Key;
  using map_type = std::map<Key, Rational, Compare>;
  using const_iterator = typename map_type::const_iterator;

  LinearCombination() = default;
  explicit LinearCombination(const Key &key, Rational coeff = Rational(1)) { add(key, coeff); }

  void add(const Key &key, const Rational &coeff) {
    if (coeff.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  Rational coefficient(const Key &key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type &terms() const { return terms_; }

  LinearCombination &operator+=(const LinearCombination &o) {
    for (const auto &[k, c] : o.terms_)
      add(k, c);
    return *this;
  }
  LinearCombination &operator-=(const LinearCombination &o) {
    for (const auto &[k, c] : o.terms_)
      add(k, -c);
    return *this;
  }
  LinearCombination &operator*=(const Rational &s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto &[k, c] : terms_)
      c *= s;
    return *this;
  }

  void add_scaled(const LinearCombination &o, const Rational &s) {
    if (s.is_zero())
      return;
    for (const auto &[k, c] : o.terms_)
      add(k, c * s);
  }

  friend LinearCombination operator+(LinearCombination a, const LinearCombination &b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination &b) { return a -= b; }
  friend LinearCombination operator-(LinearCombination a) { return a *= Rational(-1); }
  friend LinearCombination operator*(const Rational &s, LinearCombination a) { return a *= s; }
  friend LinearCombination operator*(LinearCombination a, const Rational &s) { return a *= s; }

  friend bool operator==(const LinearCombination &a, const LinearCombination &b) { return a.terms_ == b.terms_; }

private:
  map_type terms_;
};

} // namespace plf
