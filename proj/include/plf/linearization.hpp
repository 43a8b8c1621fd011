#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "plf/algebra.hpp"
#include "plf/tree.hpp"

namespace plf {

/// A forest flattened in preorder: vertex v has parent[v] (or -1 for a
/// root) and decorations (index[v]; left[v]). x < y iff x is an ancestor of y.
struct Poset {
  std::vector<int> parent;
  std::vector<GenId> index;
  std::vector<GenId> left;
  std::vector<std::vector<int>> children;
  std::vector<int> origin; // vertex id in the poset this one was induced from

  std::size_t size() const { return parent.size(); }

  bool is_leaf(int v) const { return children[v].empty(); }

  std::vector<int> roots() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < size(); ++v)
      if (parent[v] < 0)
        out.push_back(static_cast<int>(v));
    return out;
  }

  bool less(int x, int y) const {
    for (int p = parent[y]; p >= 0; p = parent[p])
      if (p == x)
        return true;
    return false;
  }

  // Vertices on the longest chain.
  std::size_t height() const {
    std::vector<std::size_t> depth(size(), 1);
    std::size_t h = 0;
    for (std::size_t v = 0; v < size(); ++v) {
      if (parent[v] >= 0)
        depth[v] = depth[parent[v]] + 1;
      h = std::max(h, depth[v]);
    }
    return h;
  }
};

namespace detail {

inline void flatten_into(const DecoratedTree &t, int parent, Poset &p) {
  int v = static_cast<int>(p.size());
  p.parent.push_back(parent);
  p.index.push_back(t.index);
  p.left.push_back(t.left);
  p.children.emplace_back();
  p.origin.push_back(v);
  if (parent >= 0)
    p.children[parent].push_back(v);
  for (const auto &c : t.children)
    flatten_into(c, v, p);
}

inline DecoratedTree unflatten_from(const Poset &p, int v) {
  if (p.is_leaf(v))
    return leaf(p.index[v]);
  std::vector<DecoratedTree> kids;
  for (int c : p.children[v])
    kids.push_back(unflatten_from(p, c));
  return graft(p.index[v], p.left[v], std::move(kids));
}

} // namespace detail

inline Poset flatten(const DecoratedTree &t) {
  Poset p;
  detail::flatten_into(t, -1, p);
  return p;
}

inline Poset flatten(const Forest &f) {
  Poset p;
  for (const auto &t : f.trees)
    detail::flatten_into(t, -1, p);
  return p;
}

inline Forest unflatten(const Poset &p) {
  std::vector<DecoratedTree> trees;
  for (int r : p.roots())
    trees.push_back(detail::unflatten_from(p, r));
  return Forest(std::move(trees));
}

/// Sub-poset on the kept vertices; a kept vertex whose parent is dropped
/// becomes a root. Kept vertices must be closed upward under "parent kept
/// or parent absent", which holds for the cuts and quotients used here.
inline Poset induced(const Poset &p, const std::vector<bool> &keep) {
  Poset out;
  std::vector<int> map(p.size(), -1);
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (!keep[v])
      continue;
    int nv = static_cast<int>(out.size());
    map[v] = nv;
    int par = p.parent[v] >= 0 ? map[p.parent[v]] : -1;
    out.parent.push_back(par);
    out.index.push_back(p.index[v]);
    out.left.push_back(p.left[v]);
    out.children.emplace_back();
    out.origin.push_back(static_cast<int>(v));
    if (par >= 0)
      out.children[par].push_back(nv);
  }
  return out;
}

/// Surjective, strictly order-preserving map onto levels 1..levels.
struct Linearization {
  std::size_t levels = 0;
  std::vector<int> level; // indexed by poset vertex

  friend bool operator==(const Linearization &, const Linearization &) = default;
  friend auto operator<=>(const Linearization &, const Linearization &) = default;
};

inline bool is_linearization(const Poset &p, const Linearization &f) {
  if (f.level.size() != p.size() || f.levels == 0)
    return false;
  std::vector<bool> hit(f.levels + 1, false);
  for (std::size_t v = 0; v < p.size(); ++v) {
    int l = f.level[v];
    if (l < 1 || l > static_cast<int>(f.levels))
      return false;
    hit[l] = true;
    if (p.parent[v] >= 0 && f.level[p.parent[v]] >= l)
      return false;
  }
  return std::all_of(hit.begin() + 1, hit.end(), [](bool b) { return b; });
}

/// Visits every k-linearization of `p`. Vertices are assigned in preorder,
/// each above its parent, pruned by subtree height and by the number of
/// levels still to be covered.
template <class Visit>
void for_each_linearization(const Poset &p, std::size_t k, Visit &&visit) {
  const std::size_t n = p.size();
  if (k == 0 || n == 0 || k > n)
    return;
  std::vector<int> reach(n, 1); // vertices on the longest chain starting at v
  for (std::size_t v = n; v-- > 0;)
    for (int c : p.children[v])
      reach[v] = std::max(reach[v], reach[c] + 1);

  Linearization f{k, std::vector<int>(n, 0)};
  std::vector<int> used(k + 1, 0);
  std::size_t covered = 0;
  const int top = static_cast<int>(k);

  std::function<void(std::size_t)> assign = [&](std::size_t v) {
    if (v == n) {
      if (covered == k)
        visit(static_cast<const Linearization &>(f));
      return;
    }
    if (k - covered > n - v)
      return;
    int lo = p.parent[v] >= 0 ? f.level[p.parent[v]] + 1 : 1;
    int hi = top - reach[v] + 1;
    for (int l = lo; l <= hi; ++l) {
      f.level[v] = l;
      if (used[l]++ == 0)
        ++covered;
      assign(v + 1);
      if (--used[l] == 0)
        --covered;
    }
    f.level[v] = 0;
  };
  assign(0);
}

inline std::vector<Linearization> k_linearizations(const Poset &p, std::size_t k) {
  std::vector<Linearization> out;
  for_each_linearization(p, k, [&](const Linearization &f) { out.push_back(f); });
  return out;
}

inline std::vector<Linearization> k_linearizations(const Forest &f, std::size_t k) {
  return k_linearizations(flatten(f), k);
}

inline std::vector<Linearization> k_linearizations(const DecoratedTree &t, std::size_t k) {
  return k_linearizations(flatten(t), k);
}

inline std::size_t count_linearizations(const Poset &p, std::size_t k) {
  std::size_t n = 0;
  for_each_linearization(p, k, [&](const Linearization &) { ++n; });
  return n;
}

/// C(f) = (Π_{f(x)=1} b_x) ⊗ … ⊗ (Π_{f(x)=k} b_x), with b_x = b_{d₂(x)}.
inline Tensor chain_of(const Poset &p, const Linearization &f) {
  if (!is_linearization(p, f))
    throw InputError("level map is not a " + std::to_string(f.levels) + "-linearization of the given forest");
  std::vector<std::vector<GenId>> fibers(f.levels);
  for (std::size_t v = 0; v < p.size(); ++v)
    fibers[f.level[v] - 1].push_back(p.left[v]);
  TensorKey key;
  for (auto &ids : fibers)
    key.emplace_back(std::move(ids));
  return Tensor(key, Rational(1));
}

inline Tensor chain_of(const Forest &forest, const Linearization &f) { return chain_of(flatten(forest), f); }
inline Tensor chain_of(const DecoratedTree &t, const Linearization &f) { return chain_of(flatten(t), f); }

/// Σ_k (−1)^k |k-lin(P)|.
inline long alternating_sum(const Poset &p) {
  long total = 0;
  for (std::size_t k = 1; k <= p.size(); ++k) {
    long n = static_cast<long>(count_linearizations(p, k));
    total += (k % 2 ? -n : n);
  }
  return total;
}

inline long alternating_sum(const DecoratedTree &t) { return alternating_sum(flatten(t)); }

/// Direct iterated coproduct against the tree/linearization expansion.
struct ExpansionReport {
  Tensor direct;
  Tensor expansion;
  bool holds() const { return direct == expansion; }
};

/// Δ̄^[k](b_i) vs Σ_{T∈𝒯ᵢ} Σ_{f∈k-lin(T)} weight(T)·C(f).
inline ExpansionReport check_iterated_expansion(const CoproductEngine &engine, const TreeCatalog &catalog, GenId id,
                                            std::size_t k) {
  Tensor direct = engine.iterated_reduced(id, k);
  Tensor expansion(k);
  for (const auto &t : catalog.trees(id)) {
    Rational w = weight(t, catalog.spec());
    Poset p = flatten(t);
    for_each_linearization(p, k, [&](const Linearization &f) { expansion.add_scaled(chain_of(p, f), w); });
  }
  return {std::move(direct), std::move(expansion)};
}

/// Δ̄(b_I) vs Σ_{F∈𝓕_I} Σ_{f∈2-lin(F)} λ(F)·C(f), each forest counted with
/// its slot multiplicity.
inline ExpansionReport check_product_expansion(const CoproductEngine &engine, const TreeCatalog &catalog,
                                           const Monomial &indices) {
  if (indices.is_unit())
    throw InputError("product expansion needs a nonempty multiset");
  Tensor direct = engine.reduced(indices);
  Tensor expansion(2);
  for (const auto &wf : catalog.forests(indices)) {
    Rational w = wf.multiplicity;
    for (const auto &t : wf.forest.trees)
      w *= weight(t, catalog.spec());
    Poset p = flatten(wf.forest);
    for_each_linearization(p, 2, [&](const Linearization &f) { expansion.add_scaled(chain_of(p, f), w); });
  }
  return {std::move(direct), std::move(expansion)};
}

} // namespace plf
