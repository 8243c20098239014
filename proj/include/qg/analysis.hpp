#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qg/core.hpp"

// Permutable reducibility: f(x1..xn) = h(g(x_S), x_complement) for some subset
// S of {1..n} with 2 <= |S| <= n-1. Grouping the 4^|S| subfunctions obtained by
// fixing x_S decides existence: a split exists iff there are exactly 4 distinct
// subfunctions (never fewer, by the latin property).

namespace qg {

struct Split {
  std::vector<int> inner;  // S, ascending
  Quasigroup g;            // arity |S|, arguments are S in ascending order
  Quasigroup h;            // arity n-|S|+1, argument 1 receives g's output

  // sigma for compose(h, g, sigma): S then its complement, both ascending.
  std::vector<int> sigma(int n) const;
};

// Subsets of {1..n} with 2 <= size <= n-1, ordered by size then lexicographic.
const std::vector<std::vector<int>>& proper_subsets(int n);

std::optional<Split> try_split(const Quasigroup& q, const std::vector<int>& inner);

bool is_permutably_reducible(const Quasigroup& q);  // n <= 2: false

// Every S admitting a split, in canonical subset order.
std::vector<std::vector<int>> reducible_subsets(const Quasigroup& q);

// Maximum arity of an irreducible retract, over all fixed-coordinate subsets
// of the predicate, all fixed values and all output choices; in [2, n-1].
int kappa(const Quasigroup& q);

struct CompositionTree {
  struct Node {
    int var = 0;                  // leaf: variable index >= 1; internal: 0
    int left = -1, right = -1;    // children for internal nodes
    std::array<Elem, 16> table{};  // row-major binary table, table[4*a+b] = a op b
  };
  std::vector<Node> nodes;
  int root = -1;
  int arity = 0;

  int add_leaf(int var);
  int add_node(const std::array<Elem, 16>& table, int left, int right);
  Elem eval_node(int id, std::span<const Elem> args) const;
  Quasigroup evaluate() const;
};

// Canonical decomposition into n-1 binary nodes: at every level the smallest,
// lexicographically least splitting subset is taken. Empty iff not completely
// reducible.
std::optional<CompositionTree> decompose_tree(const Quasigroup& q);

}  // namespace qg
