#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "plf/linearization.hpp"
#include "plf/tree.hpp"

namespace plf {

/// A nonempty corolla cut C of a tree T, with the quotient T/C. Vertex ids
/// refer to flatten(T).
struct CorollaCut {
  std::vector<int> members;   // vertices of C
  std::vector<int> collapsed; // roots of the height-2 corollas in C
  std::vector<int> meet;      // T∧C: minimal elements of C, leaves of T/C
  Forest cut;
  DecoratedTree quotient;
  Poset cut_poset;      // origin -> ids in T
  Poset quotient_poset; // origin -> ids in T

  std::size_t height() const { return collapsed.empty() ? 1 : 2; }
};

/// All nonempty corolla cuts: any set of terminal corollas (internal
/// vertices whose successors are all maximal) taken whole, plus any set of
/// the remaining maximal vertices. A single leaf has none.
inline std::vector<CorollaCut> corolla_cuts(const DecoratedTree &t) {
  std::vector<CorollaCut> out;
  const Poset p = flatten(t);
  if (p.size() < 2)
    return out;

  std::vector<int> terminal, leaves;
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (p.is_leaf(v))
      leaves.push_back(static_cast<int>(v));
    else if (std::all_of(p.children[v].begin(), p.children[v].end(), [&](int c) { return p.is_leaf(c); }))
      terminal.push_back(static_cast<int>(v));
  }
  if (terminal.size() >= 20 || leaves.size() >= 20)
    throw InputError("tree too large for corolla-cut enumeration");

  for (unsigned long tmask = 0; tmask < (1ul << terminal.size()); ++tmask) {
    std::vector<bool> in_cut(p.size(), false), covered(p.size(), false);
    std::vector<int> collapsed;
    for (std::size_t n = 0; n < terminal.size(); ++n)
      if (tmask >> n & 1) {
        int r = terminal[n];
        collapsed.push_back(r);
        in_cut[r] = true;
        for (int c : p.children[r])
          in_cut[c] = covered[c] = true;
      }
    std::vector<int> free_leaves;
    for (int l : leaves)
      if (!covered[l])
        free_leaves.push_back(l);

    for (unsigned long lmask = 0; lmask < (1ul << free_leaves.size()); ++lmask) {
      if (tmask == 0 && lmask == 0)
        continue;
      CorollaCut cut;
      std::vector<bool> members = in_cut;
      cut.meet = collapsed;
      for (std::size_t n = 0; n < free_leaves.size(); ++n)
        if (lmask >> n & 1) {
          members[free_leaves[n]] = true;
          cut.meet.push_back(free_leaves[n]);
        }
      std::sort(cut.meet.begin(), cut.meet.end());
      for (std::size_t v = 0; v < p.size(); ++v)
        if (members[v])
          cut.members.push_back(static_cast<int>(v));
      cut.collapsed = collapsed;

      cut.cut_poset = induced(p, members);
      cut.cut = unflatten(cut.cut_poset);

      std::vector<bool> keep(p.size(), true);
      for (int r : collapsed)
        for (int c : p.children[r])
          keep[c] = false;
      cut.quotient_poset = induced(p, keep);
      for (std::size_t v = 0; v < cut.quotient_poset.size(); ++v)
        if (cut.quotient_poset.is_leaf(v))
          cut.quotient_poset.left[v] = cut.quotient_poset.index[v];
      cut.quotient = unflatten(cut.quotient_poset).trees.front();
      out.push_back(std::move(cut));
    }
  }
  return out;
}

struct BijectionReport {
  std::size_t linearizations = 0; // |(k+1)-lin(T)|
  std::size_t triples = 0;        // |{(C, g, h)}|
  std::vector<std::string> failures;
  bool holds() const { return failures.empty() && linearizations == triples; }
};

/// Checks that f ↦ (C = f⁻¹(k) ∪ f⁻¹(k+1), f^C, f_C) is a bijection from
/// (k+1)-lin(T) onto triples (C, g, h) with C a corolla cut,
/// g ∈ k-lin(T/C) with g⁻¹(k) = T∧C and h ∈ 2-lin(C).
inline BijectionReport verify_cut_bijection(const DecoratedTree &t, std::size_t k) {
  BijectionReport report;
  if (k == 0)
    throw InputError("cut bijection needs k >= 1");
  const Poset p = flatten(t);
  const auto cuts = corolla_cuts(t);
  std::map<std::vector<int>, std::size_t> cut_by_members;
  for (std::size_t n = 0; n < cuts.size(); ++n)
    cut_by_members[cuts[n].members] = n;

  using Triple = std::tuple<std::size_t, std::vector<int>, std::vector<int>>;
  const int K = static_cast<int>(k);
  std::map<Triple, Linearization> forward;

  for_each_linearization(p, k + 1, [&](const Linearization &f) {
    ++report.linearizations;
    std::vector<int> members;
    for (std::size_t v = 0; v < p.size(); ++v)
      if (f.level[v] >= K)
        members.push_back(static_cast<int>(v));
    auto it = cut_by_members.find(members);
    if (it == cut_by_members.end()) {
      report.failures.push_back("top two levels of a linearization are not a corolla cut");
      return;
    }
    const CorollaCut &c = cuts[it->second];
    Linearization g{k, {}}, h{2, {}};
    std::vector<int> top;
    for (std::size_t v = 0; v < c.quotient_poset.size(); ++v) {
      int orig = c.quotient_poset.origin[v];
      g.level.push_back(std::min(f.level[orig], K));
      if (g.level.back() == K)
        top.push_back(orig);
    }
    for (std::size_t v = 0; v < c.cut_poset.size(); ++v)
      h.level.push_back(f.level[c.cut_poset.origin[v]] - K + 1);
    if (!is_linearization(c.quotient_poset, g) || top != c.meet)
      report.failures.push_back("restricted map is not a k-linearization of T/C with top fiber T^C");
    if (!is_linearization(c.cut_poset, h))
      report.failures.push_back("restriction to C is not a 2-linearization");
    if (!forward.emplace(Triple{it->second, g.level, h.level}, f).second)
      report.failures.push_back("two linearizations map to the same triple");
  });

  for (std::size_t n = 0; n < cuts.size(); ++n) {
    const CorollaCut &c = cuts[n];
    for_each_linearization(c.quotient_poset, k, [&](const Linearization &g) {
      std::vector<int> top;
      for (std::size_t v = 0; v < g.level.size(); ++v)
        if (g.level[v] == K)
          top.push_back(c.quotient_poset.origin[v]);
      if (top != c.meet)
        return;
      for_each_linearization(c.cut_poset, 2, [&](const Linearization &h) {
        ++report.triples;
        Linearization f{k + 1, std::vector<int>(p.size(), 0)};
        for (std::size_t v = 0; v < g.level.size(); ++v)
          if (g.level[v] < K)
            f.level[c.quotient_poset.origin[v]] = g.level[v];
        for (std::size_t v = 0; v < h.level.size(); ++v)
          f.level[c.cut_poset.origin[v]] = K - 1 + h.level[v];
        auto it = forward.find(Triple{n, g.level, h.level});
        if (it == forward.end() || !(it->second == f) || !is_linearization(p, f))
          report.failures.push_back("triple does not come from its glued linearization");
      });
    });
  }
  return report;
}

} // namespace plf
