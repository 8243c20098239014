#include "qg/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace qg {

const std::vector<std::array<Elem, 16>>& latin_squares_order4() {
  static const std::vector<std::array<Elem, 16>> squares = [] {
    std::vector<std::array<Elem, 16>> out;
    std::array<Elem, 16> v{};
    // Cell order = index order (x1 fastest), so output is lexicographic by
    // value array. Line masks per fixed x2 (vary x1) and fixed x1 (vary x2).
    unsigned row[4] = {0, 0, 0, 0}, col[4] = {0, 0, 0, 0};
    auto rec = [&](auto&& self, int cell) -> void {
      if (cell == 16) {
        out.push_back(v);
        return;
      }
      const int x1 = cell & 3, x2 = cell >> 2;
      for (Elem val = 0; val < 4; ++val) {
        const unsigned bit = 1u << val;
        if ((row[x1] | col[x2]) & bit) continue;
        row[x1] |= bit;
        col[x2] |= bit;
        v[cell] = val;
        self(self, cell + 1);
        row[x1] &= ~bit;
        col[x2] &= ~bit;
      }
    };
    rec(rec, 0);
    return out;
  }();
  return squares;
}

std::uint64_t enumerate_n3_layered(int l0_begin, int l0_end, const QGVisitor& visit) {
  const auto& squares = latin_squares_order4();
  l0_begin = std::max(l0_begin, 0);
  l0_end = std::min<int>(l0_end, squares.size());
  std::uint64_t count = 0;
  bool stop = false;
  std::vector<Elem> cube(64);
  unsigned pillar[16];  // values used at cell (x1,x2) across finished layers
  for (int l0 = l0_begin; l0 < l0_end && !stop; ++l0) {
    std::copy(squares[l0].begin(), squares[l0].end(), cube.begin());
    for (int s = 0; s < 16; ++s) pillar[s] = 1u << cube[s];
    unsigned row[2][4] = {}, col[2][4] = {};  // per in-progress layer t-1
    auto rec = [&](auto&& self, int t, int cell) -> void {
      if (stop) return;
      if (cell == 16) {
        if (t == 1) {
          self(self, 2, 0);
        } else {
          // layer 3 is the pillar complement and is automatically latin
          for (int s = 0; s < 16; ++s) {
            unsigned left = 0xFu & ~pillar[s];
            cube[48 + s] = static_cast<Elem>(std::countr_zero(left));
          }
          ++count;
          if (!visit(Quasigroup::unchecked(3, cube))) stop = true;
        }
        return;
      }
      const int layer = t - 1;  // 0 or 1 within the mask arrays
      const int x1 = cell & 3, x2 = cell >> 2;
      for (Elem val = 0; val < 4; ++val) {
        const unsigned bit = 1u << val;
        if ((row[layer][x1] | col[layer][x2] | pillar[cell]) & bit) continue;
        row[layer][x1] |= bit;
        col[layer][x2] |= bit;
        pillar[cell] |= bit;
        cube[16 * t + cell] = val;
        self(self, t, cell + 1);
        row[layer][x1] &= ~bit;
        col[layer][x2] &= ~bit;
        pillar[cell] &= ~bit;
        if (stop) return;
      }
    };
    rec(rec, 1, 0);
  }
  return count;
}

std::uint64_t enumerate_n3_rows(const QGVisitor& visit) {
  std::vector<Elem> cube(64);
  unsigned m1[16] = {}, m2[16] = {}, m3[16] = {};  // lines in x1, x2, x3
  std::uint64_t count = 0;
  bool stop = false;
  auto rec = [&](auto&& self, int pos) -> void {
    if (stop) return;
    if (pos == 64) {
      ++count;
      if (!visit(Quasigroup::unchecked(3, cube))) stop = true;
      return;
    }
    const int x1 = pos & 3, x2 = (pos >> 2) & 3, x3 = pos >> 4;
    const int i1 = x2 + 4 * x3, i2 = x1 + 4 * x3, i3 = x1 + 4 * x2;
    for (Elem val = 0; val < 4; ++val) {
      const unsigned bit = 1u << val;
      if ((m1[i1] | m2[i2] | m3[i3]) & bit) continue;
      m1[i1] |= bit;
      m2[i2] |= bit;
      m3[i3] |= bit;
      cube[pos] = val;
      self(self, pos + 1);
      m1[i1] &= ~bit;
      m2[i2] &= ~bit;
      m3[i3] &= ~bit;
      if (stop) return;
    }
  };
  rec(rec, 0);
  return count;
}

std::uint64_t enumerate_all(int n, const QGVisitor& visit) {
  if (n == 1) {
    std::uint64_t count = 0;
    for (const Perm& p : all_perms()) {
      ++count;
      if (!visit(Quasigroup::unchecked(1, {p.to[0], p.to[1], p.to[2], p.to[3]}))) break;
    }
    return count;
  }
  if (n == 2) {
    std::uint64_t count = 0;
    for (const auto& sq : latin_squares_order4()) {
      ++count;
      if (!visit(Quasigroup::unchecked(2, std::vector<Elem>(sq.begin(), sq.end())))) break;
    }
    return count;
  }
  if (n == 3) return enumerate_n3_layered(0, 576, visit);
  throw Error(Err::UnsupportedArity, "exhaustive enumeration supports n <= 3 (n=4 only via shards)");
}

std::uint64_t enumerate_n4_shard(int k, int m, const QGVisitor& visit) {
  if (m < 1 || k < 0 || k >= m) throw Error(Err::Usage, "shard index must satisfy 0 <= k < m");
  std::uint64_t count = 0;
  bool stop = false;
  std::vector<Elem> hyper(256);
  std::vector<unsigned> pillar(64);
  std::int64_t l0_index = -1;
  enumerate_all(3, [&](const Quasigroup& base) {
    ++l0_index;
    if (l0_index % m != k) return true;
    std::copy(base.values().begin(), base.values().end(), hyper.begin());
    for (int s = 0; s < 64; ++s) pillar[s] = 1u << hyper[s];
    // One mask per axis line within the layer under construction.
    unsigned m1[2][16] = {}, m2[2][16] = {}, m3[2][16] = {};
    auto rec = [&](auto&& self, int t, int cell) -> void {
      if (stop) return;
      if (cell == 64) {
        if (t == 1) {
          self(self, 2, 0);
        } else {
          for (int s = 0; s < 64; ++s) {
            unsigned left = 0xFu & ~pillar[s];
            hyper[192 + s] = static_cast<Elem>(std::countr_zero(left));
          }
          ++count;
          if (!visit(Quasigroup::unchecked(4, hyper))) stop = true;
        }
        return;
      }
      const int layer = t - 1;
      const int x1 = cell & 3, x2 = (cell >> 2) & 3, x3 = cell >> 4;
      const int i1 = x2 + 4 * x3, i2 = x1 + 4 * x3, i3 = x1 + 4 * x2;
      for (Elem val = 0; val < 4; ++val) {
        const unsigned bit = 1u << val;
        if ((m1[layer][i1] | m2[layer][i2] | m3[layer][i3] | pillar[cell]) & bit) continue;
        m1[layer][i1] |= bit;
        m2[layer][i2] |= bit;
        m3[layer][i3] |= bit;
        pillar[cell] |= bit;
        hyper[64 * t + cell] = val;
        self(self, t, cell + 1);
        m1[layer][i1] &= ~bit;
        m2[layer][i2] &= ~bit;
        m3[layer][i3] &= ~bit;
        pillar[cell] &= ~bit;
        if (stop) return;
      }
    };
    rec(rec, 1, 0);
    return !stop;
  });
  return count;
}

ClassificationRecord classify(const Quasigroup& q, const ClassifyOptions& opts) {
  ClassificationRecord rec;
  if (q.arity() >= 3) {
    for (const auto& s : proper_subsets(q.arity())) {
      if (auto sp = try_split(q, s)) {
        rec.reducible = true;
        rec.split = std::move(sp);
        break;
      }
    }
  }
  rec.standardly_semilinear = is_standardly_semilinear(q);
  if (!rec.reducible || rec.standardly_semilinear || opts.full) {
    rec.witness = is_semilinear(q);
    rec.semilinear = rec.witness.has_value();
  }
  if (opts.with_kappa && q.arity() >= 3) rec.kappa = kappa(q);
  return rec;
}

static void tally(const Quasigroup& q, TheoremReport& rep) {
  const bool red = is_permutably_reducible(q);
  const bool sl = is_semilinear(q).has_value();
  ++rep.total;
  if (sl) ++rep.semilinear_total;
  if (red && sl)
    ++rep.both;
  else if (red)
    ++rep.reducible_only;
  else if (sl)
    ++rep.semilinear_only;
  else
    ++rep.neither;
}

TheoremReport verify_theorem(int n, int jobs) {
  if (n != 2 && n != 3) throw Error(Err::UnsupportedArity, "theorem verification covers n in {2,3}");
  TheoremReport rep;
  rep.n = n;
  if (n == 2 || jobs <= 1) {
    enumerate_all(n, [&](const Quasigroup& q) {
      tally(q, rep);
      return true;
    });
    return rep;
  }
  jobs = std::min(jobs, 576);
  std::vector<TheoremReport> parts(jobs);
  std::vector<std::thread> workers;
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([t, jobs, &parts] {
      const int lo = 576 * t / jobs, hi = 576 * (t + 1) / jobs;
      enumerate_n3_layered(lo, hi, [&](const Quasigroup& q) {
        tally(q, parts[t]);
        return true;
      });
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& p : parts) {
    rep.total += p.total;
    rep.reducible_only += p.reducible_only;
    rep.semilinear_only += p.semilinear_only;
    rep.both += p.both;
    rep.neither += p.neither;
    rep.semilinear_total += p.semilinear_total;
  }
  return rep;
}

// ----- seeded generators -----

static const std::vector<std::uint64_t>& catalan() {
  static const std::vector<std::uint64_t> c = [] {
    std::vector<std::uint64_t> v{1};  // C_0; C_m counts shapes with m+1 leaves
    for (int m = 1; m <= 30; ++m) {
      std::uint64_t s = 0;
      for (int i = 0; i < m; ++i) s += v[i] * v[m - 1 - i];
      v.push_back(s);
    }
    return v;
  }();
  return c;
}

// Builds a shape with `leaves` leaves, drawing the left subtree size with
// Catalan weights; consumes variables from vars[pos..] left to right.
static int build_tree(CompositionTree& t, int leaves, const std::vector<int>& vars,
                      int& pos, Rng& rng) {
  if (leaves == 1) return t.add_leaf(vars[pos++]);
  const auto& cat = catalan();
  std::uint64_t r = rng.below(cat[leaves - 1]);
  int left = 1;
  for (; left < leaves; ++left) {
    const std::uint64_t w = cat[left - 1] * cat[leaves - left - 1];
    if (r < w) break;
    r -= w;
  }
  const auto op = gamma_catalog()[rng.below(4)].table;
  int l = build_tree(t, left, vars, pos, rng);
  int rgt = build_tree(t, leaves - left, vars, pos, rng);
  return t.add_node(op, l, rgt);
}

CompositionTree random_tree(int n, Rng& rng) {
  if (n < 2 || n > 30) throw Error(Err::UnsupportedArity, "random_tree supports 2 <= n <= 30");
  std::vector<int> vars(n);
  for (int i = 0; i < n; ++i) vars[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(vars[i], vars[rng.below(i + 1)]);
  CompositionTree t;
  t.arity = n;
  int pos = 0;
  t.root = build_tree(t, n, vars, pos, rng);
  return t;
}

BoolFn random_boolfn(int n, Rng& rng) {
  BoolFn f{n, std::vector<std::uint8_t>(std::size_t{1} << n)};
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < f.bits.size(); ++i) {
    if (i % 64 == 0) word = rng.next();
    f.bits[i] = word >> (i % 64) & 1;
  }
  return f;
}

Isotopy random_isotopy(int n, Rng& rng) {
  Isotopy t = Isotopy::identity(n);
  for (auto& p : t.tau)
    for (int i = 3; i > 0; --i) std::swap(p.to[i], p.to[rng.below(i + 1)]);
  return t;
}

Quasigroup random_semilinear(int n, Rng& rng) {
  const BoolFn lambda = random_boolfn(n, rng);
  const Isotopy t = random_isotopy(n, rng);
  return apply_isotopy(from_lambda(lambda), t);
}

FamilyCheckReport n4_family_check(std::uint64_t samples, std::uint64_t seed) {
  FamilyCheckReport rep;
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    ++rep.trees_total;
    if (is_permutably_reducible(random_tree(4, rng).evaluate())) ++rep.trees_reducible;
  }
  for (std::uint64_t s = 0; s < samples; ++s) {
    ++rep.semilinear_total;
    if (is_semilinear(random_semilinear(4, rng))) ++rep.semilinear_witnessed;
  }
  for (std::uint64_t s = 0; s < samples; ++s) {
    ++rep.mixed_total;
    // h(g(x_{sigma1}, x_{sigma2}), x_{sigma3}, x_{sigma4}) with semilinear h.
    const auto& sq = latin_squares_order4()[rng.below(576)];
    const Quasigroup g = Quasigroup::unchecked(2, std::vector<Elem>(sq.begin(), sq.end()));
    const Quasigroup h = random_semilinear(3, rng);
    std::vector<int> sigma{1, 2, 3, 4};
    for (int i = 3; i > 0; --i) std::swap(sigma[i], sigma[rng.below(i + 1)]);
    const Quasigroup f = compose(h, g, sigma);
    std::vector<int> inner{sigma[0], sigma[1]};
    std::sort(inner.begin(), inner.end());
    auto sp = try_split(f, inner);
    if (sp && compose(sp->h, sp->g, sp->sigma(4)) == f) ++rep.mixed_split_ok;
  }
  return rep;
}

}  // namespace qg
