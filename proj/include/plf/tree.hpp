#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plf/coproduct.hpp"
#include "plf/hopf_spec.hpp"

namespace plf {

/// Non-planar rooted tree with decorations. An internal vertex carries
/// (index; left) = (d₁; d₂); a leaf carries a single index, stored with
/// left == index. Children are kept sorted, so equal trees compare equal.
struct DecoratedTree {
  GenId index = 0;
  GenId left = 0;
  std::vector<DecoratedTree> children;

  bool is_leaf() const { return children.empty(); }

  friend bool operator==(const DecoratedTree &, const DecoratedTree &) = default;
  friend std::strong_ordering operator<=>(const DecoratedTree &, const DecoratedTree &) = default;
};

/// Recursively sorts children. Idempotent.
inline DecoratedTree canonicalize(DecoratedTree t) {
  for (auto &c : t.children)
    c = canonicalize(std::move(c));
  std::sort(t.children.begin(), t.children.end());
  if (t.children.empty())
    t.left = t.index;
  return t;
}

/// •_i
inline DecoratedTree leaf(GenId index) { return {index, index, {}}; }

/// B⁺_{(index;left)}(children...)
inline DecoratedTree graft(GenId index, GenId left, std::vector<DecoratedTree> children) {
  if (children.empty())
    throw InputError("B+ needs at least one subtree; a single vertex is a leaf");
  return canonicalize({index, left, std::move(children)});
}

/// Commutative product of trees, kept sorted.
struct Forest {
  std::vector<DecoratedTree> trees;

  Forest() = default;
  explicit Forest(std::vector<DecoratedTree> ts) : trees(std::move(ts)) {
    for (auto &t : trees)
      t = canonicalize(std::move(t));
    std::sort(trees.begin(), trees.end());
  }

  friend bool operator==(const Forest &, const Forest &) = default;
  friend auto operator<=>(const Forest &, const Forest &) = default;
};

// l(T): number of vertices.
inline std::size_t length(const DecoratedTree &t) {
  std::size_t n = 1;
  for (const auto &c : t.children)
    n += length(c);
  return n;
}

// h(T): vertices on the longest root-to-leaf chain.
inline std::size_t height(const DecoratedTree &t) {
  std::size_t h = 0;
  for (const auto &c : t.children)
    h = std::max(h, height(c));
  return h + 1;
}

// v(T) = Π b_{d₂(x)}
inline Monomial value(const DecoratedTree &t) {
  Monomial m = Monomial::generator(t.left);
  for (const auto &c : t.children)
    m = m * value(c);
  return m;
}

/// Multiset of the children's root indices d₁(succ(x)).
inline Monomial child_indices(const DecoratedTree &t) {
  std::vector<GenId> ids;
  for (const auto &c : t.children)
    ids.push_back(c.index);
  return Monomial(std::move(ids));
}

/// λ(T) = Π over internal x of λ^{d₁(x);d₂(x)}_{d₁(succ(x))}; zero when the
/// spec has no matching entry.
inline Rational lambda(const DecoratedTree &t, const CoproductSpec &spec) {
  if (t.is_leaf())
    return Rational(1);
  Rational out = spec.coefficient(t.index, t.left, child_indices(t));
  for (const auto &c : t.children) {
    if (out.is_zero())
      break;
    out *= lambda(c, spec);
  }
  return out;
}

namespace detail {

inline mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

// Number of distinct ways to place the given subtrees into the slots of a
// right multiset: Π_j m_j! / Π_t c_t!, with m_j the slots of index j and
// c_t the copies of subtree t. `subtrees` must be sorted.
inline mpz_class slot_arrangements(const std::vector<DecoratedTree> &subtrees) {
  mpz_class out = 1;
  std::map<GenId, unsigned long> slots;
  for (const auto &t : subtrees)
    ++slots[t.index];
  for (const auto &[id, m] : slots)
    out *= factorial(m);
  for (std::size_t n = 0; n < subtrees.size();) {
    std::size_t run = n;
    while (run < subtrees.size() && subtrees[run] == subtrees[n])
      ++run;
    out /= factorial(run - n);
    n = run;
  }
  return out;
}

} // namespace detail

/// Number of index-slot assignments realizing T: the product over internal
/// vertices of the ways to distribute its (non-planar) children among the
/// positions of the coproduct entry's right multiset. This is 1 unless a
/// repeated right index carries distinct subtrees.
inline Rational multiplicity(const DecoratedTree &t) {
  mpz_class out = detail::slot_arrangements(t.children);
  for (const auto &c : t.children)
    out *= multiplicity(c).numerator();
  return Rational(out);
}

/// Weight of T in the tree expansions of Δ̄^[k] and S: multiplicity · λ.
inline Rational weight(const DecoratedTree &t, const CoproductSpec &spec) { return multiplicity(t) * lambda(t, spec); }

struct TreeStats {
  std::size_t length = 0;
  std::size_t height = 0;
  Rational lambda;
  Monomial value;
};

inline TreeStats tree_stats(const DecoratedTree &t, const CoproductSpec &spec) {
  return {length(t), height(t), lambda(t, spec), value(t)};
}

// Forest statistics: l additive, h max, λ and v multiplicative.
inline TreeStats tree_stats(const Forest &f, const CoproductSpec &spec) {
  TreeStats out{0, 0, Rational(1), Monomial::unit()};
  for (const auto &t : f.trees) {
    TreeStats s = tree_stats(t, spec);
    out.length += s.length;
    out.height = std::max(out.height, s.height);
    out.lambda *= s.lambda;
    out.value = out.value * s.value;
  }
  return out;
}

// Text notation: leaf "L(i)", internal "N(i;j)[child,...]", forests joined by "*".
inline std::string to_string(const DecoratedTree &t) {
  if (t.is_leaf())
    return "L(" + std::to_string(t.index) + ")";
  std::string out = "N(" + std::to_string(t.index) + ";" + std::to_string(t.left) + ")[";
  for (std::size_t n = 0; n < t.children.size(); ++n) {
    if (n)
      out += ",";
    out += to_string(t.children[n]);
  }
  return out + "]";
}

inline std::string to_string(const Forest &f) {
  if (f.trees.empty())
    return "1";
  std::string out;
  for (std::size_t n = 0; n < f.trees.size(); ++n) {
    if (n)
      out += "*";
    out += to_string(f.trees[n]);
  }
  return out;
}

namespace detail {

class TreeParser {
public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  DecoratedTree tree() {
    skip_space();
    char kind = next();
    expect('(');
    GenId index = number();
    if (kind == 'L') {
      expect(')');
      return leaf(index);
    }
    if (kind != 'N')
      fail("expected L or N");
    expect(';');
    GenId left = number();
    expect(')');
    expect('[');
    std::vector<DecoratedTree> children{tree()};
    while (peek() == ',') {
      ++pos_;
      children.push_back(tree());
    }
    expect(']');
    return graft(index, left, std::move(children));
  }

  Forest forest() {
    std::vector<DecoratedTree> trees{tree()};
    while (peek() == '*') {
      ++pos_;
      trees.push_back(tree());
    }
    finish();
    return Forest(std::move(trees));
  }

  void finish() {
    skip_space();
    if (pos_ != text_.size())
      fail("trailing characters");
  }

private:
  void skip_space() {
    while (pos_ < text_.size() && text_[pos_] == ' ')
      ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char next() {
    char c = peek();
    if (c == '\0')
      fail("unexpected end of input");
    ++pos_;
    return c;
  }
  void expect(char c) {
    if (next() != c)
      fail(std::string("expected '") + c + "'");
  }
  GenId number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
      ++pos_;
    if (start == pos_)
      fail("expected a positive integer");
    int v = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (v <= 0)
      fail("decorations must be positive");
    return v;
  }
  [[noreturn]] void fail(const std::string &what) {
    throw InputError("tree notation at offset " + std::to_string(pos_) + ": " + what + " in \"" + std::string(text_) +
                     "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline DecoratedTree parse_tree(std::string_view text) {
  detail::TreeParser p(text);
  DecoratedTree t = p.tree();
  p.finish();
  return t;
}

inline Forest parse_forest(std::string_view text) { return detail::TreeParser(text).forest(); }

/// A forest of 𝓕_I together with its number of index-slot realizations.
struct WeightedForest {
  Forest forest;
  Rational multiplicity;
};

/// Realized trees 𝒯ᵢ (λ(T) ≠ 0) per generator, built by the B⁺ recursion
/// over coproduct entries. Requires a structurally valid spec; results are
/// memoized per generator.
class TreeCatalog {
public:
  explicit TreeCatalog(const CoproductSpec &spec) : spec_(spec), cache_(std::make_unique<Cache>()) {
    if (auto report = validate_spec(spec_); !report.empty())
      throw InputError("invalid spec \"" + spec_.name + "\": " + describe(report));
    for (const auto &e : spec_.entries)
      by_source_[e.source].push_back(&e);
  }

  const CoproductSpec &spec() const { return spec_; }

  /// 𝒯ᵢ in canonical order, each tree once.
  const std::vector<DecoratedTree> &trees(GenId id) const {
    if (!spec_.declares(id))
      throw InputError("unknown generator id " + std::to_string(id) + " in spec \"" + spec_.name + "\"");
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->trees.find(id); it != cache_->trees.end())
        return it->second;
    }
    std::set<DecoratedTree> found{leaf(id)};
    if (auto it = by_source_.find(id); it != by_source_.end())
      for (const CoproductEntry *e : it->second)
        for_each_choice(e->right, [&](const std::vector<DecoratedTree> &kids) { found.insert(graft(e->source, e->left, kids)); });
    std::lock_guard lock(cache_->mutex);
    return cache_->trees.emplace(id, std::vector<DecoratedTree>(found.begin(), found.end())).first->second;
  }

  /// 𝓕_I: forests T₁…T_s with T_j ∈ 𝒯_{i_j}, each distinct forest once with
  /// the number of slot assignments producing it.
  std::vector<WeightedForest> forests(const Monomial &indices) const {
    std::vector<WeightedForest> out;
    for_each_choice(indices, [&](const std::vector<DecoratedTree> &trees) {
      Forest f(trees);
      out.push_back({f, Rational(detail::slot_arrangements(f.trees))});
    });
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.forest < b.forest; });
    return out;
  }

private:
  // Calls `visit` with every multiset of subtrees matching `slots`: one
  // tree per slot, combinations with repetition for repeated indices.
  template <class Visit>
  void for_each_choice(const Monomial &slots, Visit &&visit) const {
    auto runs = slots.runs();
    std::vector<DecoratedTree> chosen;
    choose_run(runs, 0, 0, 0, chosen, visit);
  }

  template <class Visit>
  void choose_run(const std::vector<std::pair<GenId, std::size_t>> &runs, std::size_t run, std::size_t taken,
                  std::size_t from, std::vector<DecoratedTree> &chosen, Visit &visit) const {
    if (run == runs.size()) {
      visit(chosen);
      return;
    }
    const auto &[id, count] = runs[run];
    if (taken == count) {
      choose_run(runs, run + 1, 0, 0, chosen, visit);
      return;
    }
    const auto &pool = trees(id);
    for (std::size_t n = from; n < pool.size(); ++n) {
      chosen.push_back(pool[n]);
      choose_run(runs, run, taken + 1, n, chosen, visit);
      chosen.pop_back();
    }
  }

  struct Cache {
    std::mutex mutex;
    std::map<GenId, std::vector<DecoratedTree>> trees;
  };

  CoproductSpec spec_;
  std::map<GenId, std::vector<const CoproductEntry *>> by_source_;
  std::unique_ptr<Cache> cache_;
};

inline std::vector<DecoratedTree> enumerate_trees(const CoproductSpec &spec, GenId id) {
  return TreeCatalog(spec).trees(id);
}

} // namespace plf
