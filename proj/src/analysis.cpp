#include "qg/analysis.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qg {

std::vector<int> Split::sigma(int n) const {
  std::vector<int> s = inner;
  std::vector<bool> in_s(n + 1, false);
  for (int i : inner) in_s[i] = true;
  for (int i = 1; i <= n; ++i)
    if (!in_s[i]) s.push_back(i);
  return s;
}

const std::vector<std::vector<int>>& proper_subsets(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> subsets;
  for (int m = 2; m <= n - 1; ++m) {
    std::vector<int> comb(m);
    for (int i = 0; i < m; ++i) comb[i] = i + 1;
    for (;;) {
      subsets.push_back(comb);
      int i = m - 1;
      while (i >= 0 && comb[i] == n - m + 1 + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return cache.emplace(n, std::move(subsets)).first->second;
}

std::optional<Split> try_split(const Quasigroup& q, const std::vector<int>& inner) {
  const int n = q.arity();
  const int m = static_cast<int>(inner.size());
  if (m < 2 || m > n - 1) throw Error(Err::BadSubset, "inner subset size must be in [2, n-1]");
  std::vector<bool> in_s(n + 1, false);
  for (int c : inner) {
    if (c < 1 || c > n || in_s[c]) throw Error(Err::BadSubset, "inner subset must be distinct coordinates in 1..n");
    in_s[c] = true;
  }
  std::vector<int> comp;
  for (int c = 1; c <= n; ++c)
    if (!in_s[c]) comp.push_back(c);
  const int k = static_cast<int>(comp.size());

  // Offsets of the S-assignments and complement assignments inside the array.
  const std::size_t sn = pow4(m), cn = pow4(k);
  std::vector<std::size_t> soff(sn, 0), coff(cn, 0);
  std::vector<Elem> digits(std::max(m, k));
  for (std::size_t s = 0; s < sn; ++s) {
    unpack(s, m, digits.data());
    for (int t = 0; t < m; ++t) soff[s] += std::size_t(digits[t]) << (2 * (inner[t] - 1));
  }
  for (std::size_t c = 0; c < cn; ++c) {
    unpack(c, k, digits.data());
    for (int t = 0; t < k; ++t) coff[c] += std::size_t(digits[t]) << (2 * (comp[t] - 1));
  }

  // Group subfunctions; classes numbered by first occurrence in index order.
  std::vector<std::vector<Elem>> reps;
  std::vector<Elem> labels(sn);
  std::vector<Elem> row(cn);
  for (std::size_t s = 0; s < sn; ++s) {
    for (std::size_t c = 0; c < cn; ++c) row[c] = q.at(soff[s] + coff[c]);
    std::size_t cls = 0;
    while (cls < reps.size() && reps[cls] != row) ++cls;
    if (cls == reps.size()) {
      if (reps.size() == 4) return std::nullopt;  // fifth distinct subfunction
      reps.push_back(row);
    }
    labels[s] = static_cast<Elem>(cls);
  }
  if (reps.size() != 4) return std::nullopt;

  std::vector<Elem> hv(pow4(k + 1));
  for (std::size_t cls = 0; cls < 4; ++cls)
    for (std::size_t c = 0; c < cn; ++c) hv[cls + 4 * c] = reps[cls][c];
  return Split{inner, Quasigroup::unchecked(m, std::move(labels)),
               Quasigroup::unchecked(k + 1, std::move(hv))};
}

bool is_permutably_reducible(const Quasigroup& q) {
  if (q.arity() <= 2) return false;
  for (const auto& s : proper_subsets(q.arity()))
    if (try_split(q, s)) return true;
  return false;
}

std::vector<std::vector<int>> reducible_subsets(const Quasigroup& q) {
  std::vector<std::vector<int>> out;
  if (q.arity() <= 2) return out;
  for (const auto& s : proper_subsets(q.arity()))
    if (try_split(q, s)) out.push_back(s);
  return out;
}

int kappa(const Quasigroup& q) {
  const int n = q.arity();
  if (n < 3) throw Error(Err::ArityMismatch, "kappa needs arity >= 3");
  // Retract arity k uses n-k fixed predicate coordinates; arity n itself is
  // excluded by the bound kappa < n, arity-2 retracts are always irreducible.
  for (int k = n - 1; k >= 3; --k) {
    const int nfix = n - k;
    std::vector<int> comb(nfix);
    for (int i = 0; i < nfix; ++i) comb[i] = i;
    for (;;) {
      std::vector<std::pair<int, Elem>> fixings(nfix);
      for (std::size_t vals = 0; vals < pow4(nfix); ++vals) {
        for (int t = 0; t < nfix; ++t)
          fixings[t] = {comb[t], static_cast<Elem>(vals >> (2 * t) & 3)};
        for (int output = 0; output <= n; ++output) {
          if (std::find(comb.begin(), comb.end(), output) != comb.end()) continue;
          if (!is_permutably_reducible(retract(q, fixings, output))) return k;
        }
      }
      int i = nfix - 1;
      while (i >= 0 && comb[i] == n + 1 - nfix + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < nfix; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return 2;
}

// ----- composition trees -----

int CompositionTree::add_leaf(int var) {
  nodes.push_back(Node{var, -1, -1, {}});
  return static_cast<int>(nodes.size()) - 1;
}

int CompositionTree::add_node(const std::array<Elem, 16>& table, int left, int right) {
  nodes.push_back(Node{0, left, right, table});
  return static_cast<int>(nodes.size()) - 1;
}

Elem CompositionTree::eval_node(int id, std::span<const Elem> args) const {
  const Node& nd = nodes[id];
  if (nd.var >= 1) return args[nd.var - 1];
  return nd.table[4 * eval_node(nd.left, args) + eval_node(nd.right, args)];
}

Quasigroup CompositionTree::evaluate() const {
  std::vector<Elem> out(pow4(arity));
  std::vector<Elem> x(arity);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    unpack(idx, arity, x.data());
    out[idx] = eval_node(root, x);
  }
  return Quasigroup::unchecked(arity, std::move(out));
}

// Copies src's subtree into dst, renaming leaf variables through leaf_var;
// a leaf reading variable 1 is replaced by graft when graft >= 0.
static int import_tree(CompositionTree& dst, const CompositionTree& src, int id,
                       const std::vector<int>& leaf_var, int graft) {
  const auto& nd = src.nodes[id];
  if (nd.var >= 1) {
    if (nd.var == 1 && graft >= 0) return graft;
    return dst.add_leaf(leaf_var[nd.var]);
  }
  int l = import_tree(dst, src, nd.left, leaf_var, graft);
  int r = import_tree(dst, src, nd.right, leaf_var, graft);
  return dst.add_node(nd.table, l, r);
}

std::optional<CompositionTree> decompose_tree(const Quasigroup& q) {
  const int n = q.arity();
  if (n < 2) return std::nullopt;
  if (n == 2) {
    CompositionTree t;
    t.arity = 2;
    std::array<Elem, 16> table;
    for (Elem a = 0; a < 4; ++a)
      for (Elem b = 0; b < 4; ++b) table[4 * a + b] = q.at(a + 4 * b);
    t.root = t.add_node(table, t.add_leaf(1), t.add_leaf(2));
    return t;
  }
  for (const auto& s : proper_subsets(n)) {
    auto sp = try_split(q, s);
    if (!sp) continue;
    auto gt = decompose_tree(sp->g);
    if (!gt) continue;
    auto ht = decompose_tree(sp->h);
    if (!ht) continue;
    CompositionTree t;
    t.arity = n;
    std::vector<int> gvar(s.size() + 1, 0);
    for (std::size_t i = 0; i < s.size(); ++i) gvar[i + 1] = s[i];
    int groot = import_tree(t, *gt, gt->root, gvar, -1);
    std::vector<int> in_s(n + 1, 0);
    for (int c : s) in_s[c] = 1;
    std::vector<int> hvar(n - s.size() + 2, 0);
    for (int c = 1, pos = 2; c <= n; ++c)
      if (!in_s[c]) hvar[pos++] = c;
    t.root = import_tree(t, *ht, ht->root, hvar, groot);
    return t;
  }
  return std::nullopt;
}

}  // namespace qg
