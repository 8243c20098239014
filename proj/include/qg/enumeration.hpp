#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qg/analysis.hpp"
#include "qg/coloring.hpp"
#include "qg/core.hpp"
#include "qg/rng.hpp"
#include "qg/semilinear.hpp"

namespace qg {

// Visitor returns false to stop the enumeration early.
using QGVisitor = std::function<bool(const Quasigroup&)>;

// The 576 latin squares of order 4, lexicographic by value array.
const std::vector<std::array<Elem, 16>>& latin_squares_order4();

// Every order-4 n-quasigroup exactly once, deterministic order; n <= 3.
// Returns the number of quasigroups visited.
std::uint64_t enumerate_all(int n, const QGVisitor& visit);

// n=3 layer extension restricted to first-layer indices [l0_begin, l0_end):
// choose L0 among the 576 squares, backtrack layers 1 and 2 cell by cell with
// line and pillar masks, layer 3 is forced.
std::uint64_t enumerate_n3_layered(int l0_begin, int l0_end, const QGVisitor& visit);

// Independent method for cross-checking: row-by-row backtracking over the full
// cube with one bitmask per axis line.
std::uint64_t enumerate_n3_rows(const QGVisitor& visit);

// Opt-in resumable n=4 exhaustion: shard k of m, sharded on the index of the
// first 3-cube layer within enumerate_all(3). Far too large to run to
// completion at desk scale; exposed for resumable partial sweeps.
std::uint64_t enumerate_n4_shard(int k, int m, const QGVisitor& visit);

struct ClassifyOptions {
  bool full = false;        // decide semilinearity even when reducible
  bool with_kappa = false;
};

struct ClassificationRecord {
  bool reducible = false;
  bool standardly_semilinear = false;
  // Empty when the decision was skipped (reducible input without `full`).
  std::optional<bool> semilinear;
  std::optional<Split> split;
  std::optional<LIsotope> witness;
  std::optional<int> kappa;
};

ClassificationRecord classify(const Quasigroup& q, const ClassifyOptions& opts = {});

struct TheoremReport {
  int n = 0;
  std::uint64_t total = 0;
  std::uint64_t reducible_only = 0;
  std::uint64_t semilinear_only = 0;
  std::uint64_t both = 0;
  std::uint64_t neither = 0;
  std::uint64_t semilinear_total = 0;
};

// Exhaustive dichotomy check; n in {2,3}. For n=3 the 576 L0 shards are split
// across `jobs` threads, counts merged additively (independent of job count).
TheoremReport verify_theorem(int n, int jobs = 1);

// Seeded generators. Deterministic per seed.
CompositionTree random_tree(int n, Rng& rng);       // uniform shape, Gamma ops, leaf order
BoolFn random_boolfn(int n, Rng& rng);
Isotopy random_isotopy(int n, Rng& rng);
Quasigroup random_semilinear(int n, Rng& rng);      // isotoped from_lambda sample

struct FamilyCheckReport {
  std::uint64_t trees_total = 0, trees_reducible = 0;
  std::uint64_t semilinear_total = 0, semilinear_witnessed = 0;
  std::uint64_t mixed_total = 0, mixed_split_ok = 0;

  bool ok() const {
    return trees_total == trees_reducible && semilinear_total == semilinear_witnessed &&
           mixed_total == mixed_split_ok;
  }
};

// Theorem consistency on constructed 4-quasigroup families: composed trees
// must come out reducible, isotoped semilinear instances must yield a witness,
// and compositions of a semilinear 3-quasigroup with a binary quasigroup must
// split along the composed pair with exact recomposition.
FamilyCheckReport n4_family_check(std::uint64_t samples, std::uint64_t seed);

}  // namespace qg
