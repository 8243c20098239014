#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qg/analysis.hpp"
#include "qg/core.hpp"

// Gamma is the set of the four reduced (normalized) binary quasigroups of
// order 4: one Klein group table and three tables isomorphic to Z4. The edge
// coloring mu_f of K_n assigns edge {i,j} the Gamma member equal to f's
// zero-background 2-retract in coordinates i,j.

namespace qg {

struct GammaOp {
  int id = 0;                   // g0..g3, lexicographic by row-major table string
  std::array<Elem, 16> table{};  // table[4*a+b] = a op b

  Elem op(Elem a, Elem b) const { return table[4 * a + b]; }
  Quasigroup as_quasigroup() const;
};

const std::array<GammaOp, 4>& gamma_catalog();

// Returns the catalog id whose table matches, or -1.
int gamma_id_of_table(const std::array<Elem, 16>& table);

struct EdgeColoring {
  int n = 0;
  std::vector<std::uint8_t> color;  // by edge index, values 0..3

  // Edges {i,j}, 1 <= i < j <= n, in lexicographic order.
  static std::size_t edge_index(int n, int i, int j);
  static std::size_t edge_count(int n) { return std::size_t(n) * (n - 1) / 2; }
  std::uint8_t at(int i, int j) const { return color[edge_index(n, i, j)]; }
  void set(int i, int j, std::uint8_t c) { color[edge_index(n, i, j)] = c; }
  friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;
};

EdgeColoring compute_coloring(const Quasigroup& q);  // pre: normalized, n >= 2

struct ConditionReport {
  std::vector<std::array<int, 3>> a_violations;  // triangles with 3 colors
  std::vector<std::array<int, 4>> b_violations;  // 2-colored 3+3 K4, no mono triangle
  std::vector<std::pair<int, int>> inner_edges;

  bool ok() const { return a_violations.empty() && b_violations.empty(); }
};

ConditionReport check_conditions(const EdgeColoring& c);

// mu(ab)=mu(ac) != mu(bc)=mu(bd) != mu(cd) forces mu(ad)=mu(ab); returns the
// ordered 4-tuples violating the implication (empty whenever (A),(B) hold).
std::vector<std::array<int, 4>> check_rhombus_rule(const EdgeColoring& c);

// Edge {x,y} with mu(xz) = mu(yz) for every third vertex z; the lexicographic
// smallest one. Guaranteed to exist under (A),(B).
std::pair<int, int> find_inner_edge(const EdgeColoring& c);

// The completely reducible normalized quasigroup with this coloring: base case
// n=2 is the Gamma table itself, otherwise recurse on K_{n-1} with an inner
// edge {a,b} merged and substitute x_a op x_b.
Quasigroup reconstruct(const EdgeColoring& c);

// f and g agree on every tuple with at most two non-zero coordinates.
bool check_sparse_agreement(const Quasigroup& f, const Quasigroup& g);

struct RebuildResult {
  Isotopy normalizer;     // apply_isotopy(input, normalizer) = normalized
  Quasigroup normalized;
  CompositionTree tree;   // evaluates to `normalized`
};

// Checks that every principal 3- and 4-retract (all fixings) is reducible,
// then normalizes, colors, reconstructs and decomposes. HypothesisFailed
// carries the witness retract; later stages cannot fail on hypothesis-passing
// input, so their checks throw logic_error.
RebuildResult rebuild_pipeline(const Quasigroup& q);  // pre: n >= 5

}  // namespace qg
