#include "qg/coloring.hpp"

#include <algorithm>
#include <sstream>

namespace qg {

Quasigroup GammaOp::as_quasigroup() const {
  std::vector<Elem> vals(16);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) vals[a + 4 * b] = table[4 * a + b];
  return Quasigroup::unchecked(2, std::move(vals));
}

const std::array<GammaOp, 4>& gamma_catalog() {
  static const std::array<GammaOp, 4> catalog = [] {
    // Enumerate the reduced 4x4 latin squares directly: first row and column
    // fixed to 0123, backtrack over the 9 remaining cells.
    std::vector<std::array<Elem, 16>> found;
    std::array<Elem, 16> t{};
    for (Elem i = 0; i < 4; ++i) t[i] = t[4 * i] = i;
    auto rec = [&](auto&& self, int cell) -> void {
      if (cell == 16) {
        found.push_back(t);
        return;
      }
      const int r = cell / 4, c = cell % 4;
      if (r == 0 || c == 0) {
        self(self, cell + 1);
        return;
      }
      for (Elem v = 0; v < 4; ++v) {
        bool ok = true;
        for (int x = 0; x < c && ok; ++x) ok = t[4 * r + x] != v;
        for (int y = 0; y < r && ok; ++y) ok = t[4 * y + c] != v;
        if (!ok) continue;
        t[4 * r + c] = v;
        self(self, cell + 1);
      }
    };
    rec(rec, 0);
    std::sort(found.begin(), found.end());
    if (found.size() != 4) throw std::logic_error("gamma_catalog: expected 4 reduced squares");
    std::array<GammaOp, 4> out{};
    for (int id = 0; id < 4; ++id) out[id] = GammaOp{id, found[id]};
    for (const auto& g : out) {
      for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b) {
          if (g.op(a, b) != g.op(b, a)) throw std::logic_error("gamma_catalog: not commutative");
          for (Elem c = 0; c < 4; ++c)
            if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
              throw std::logic_error("gamma_catalog: not associative");
        }
    }
    return out;
  }();
  return catalog;
}

int gamma_id_of_table(const std::array<Elem, 16>& table) {
  for (const auto& g : gamma_catalog())
    if (g.table == table) return g.id;
  return -1;
}

std::size_t EdgeColoring::edge_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > n || i == j) throw Error(Err::BadSubset, "edge endpoints out of range");
  return std::size_t(i - 1) * (2 * n - i) / 2 + (j - i - 1);
}

EdgeColoring compute_coloring(const Quasigroup& q) {
  const int n = q.arity();
  if (n < 2) throw Error(Err::ArityMismatch, "coloring needs arity >= 2");
  if (!is_normalized(q)) throw Error(Err::NotNormalized, "coloring requires a normalized quasigroup");
  EdgeColoring c{n, std::vector<std::uint8_t>(EdgeColoring::edge_count(n), 0)};
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      std::array<Elem, 16> table{};
      const std::size_t si = pow4(i - 1), sj = pow4(j - 1);
      for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b) table[4 * a + b] = q.at(a * si + b * sj);
      const int id = gamma_id_of_table(table);
      if (id < 0) throw std::logic_error("compute_coloring: retract of a normalized quasigroup must be reduced");
      c.set(i, j, static_cast<std::uint8_t>(id));
    }
  }
  return c;
}

ConditionReport check_conditions(const EdgeColoring& c) {
  const int n = c.n;
  ConditionReport rep;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        const auto a = c.at(i, j), b = c.at(i, k), d = c.at(j, k);
        if (a != b && a != d && b != d) rep.a_violations.push_back({i, j, k});
      }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          const int v[4] = {i, j, k, l};
          std::array<std::uint8_t, 4> cnt{};
          for (int s = 0; s < 4; ++s)
            for (int t = s + 1; t < 4; ++t) ++cnt[c.at(v[s], v[t])];
          int used = 0;
          bool three_three = true;
          for (int col = 0; col < 4; ++col)
            if (cnt[col]) {
              ++used;
              if (cnt[col] != 3) three_three = false;
            }
          if (used != 2 || !three_three) continue;
          bool mono = false;
          for (int s = 0; s < 4 && !mono; ++s) {
            int w[3], p = 0;
            for (int t = 0; t < 4; ++t)
              if (t != s) w[p++] = v[t];
            mono = c.at(w[0], w[1]) == c.at(w[0], w[2]) && c.at(w[0], w[1]) == c.at(w[1], w[2]);
          }
          if (!mono) rep.b_violations.push_back({i, j, k, l});
        }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      bool inner = true;
      for (int z = 1; z <= n && inner; ++z)
        if (z != i && z != j) inner = c.at(i, z) == c.at(j, z);
      if (inner) rep.inner_edges.emplace_back(i, j);
    }
  return rep;
}

std::vector<std::array<int, 4>> check_rhombus_rule(const EdgeColoring& c) {
  const int n = c.n;
  std::vector<std::array<int, 4>> out;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int x = 1; x <= n; ++x)
        for (int d = 1; d <= n; ++d) {
          if (a == b || a == x || a == d || b == x || b == d || x == d) continue;
          if (c.at(a, b) != c.at(a, x)) continue;
          if (c.at(a, x) == c.at(b, x)) continue;
          if (c.at(b, x) != c.at(b, d)) continue;
          if (c.at(b, d) == c.at(x, d)) continue;
          if (c.at(a, d) != c.at(a, b)) out.push_back({a, b, x, d});
        }
  return out;
}

std::pair<int, int> find_inner_edge(const EdgeColoring& c) {
  const int n = c.n;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      bool inner = true;
      for (int z = 1; z <= n && inner; ++z)
        if (z != i && z != j) inner = c.at(i, z) == c.at(j, z);
      if (inner) return {i, j};
    }
  throw Error(Err::NoInnerEdge, "no inner edge; conditions (A),(B) must be violated");
}

Quasigroup reconstruct(const EdgeColoring& c) {
  const int n = c.n;
  if (n < 2) throw Error(Err::ArityMismatch, "reconstruct needs n >= 2");
  if (n == 2) return gamma_catalog()[c.at(1, 2)].as_quasigroup();

  const auto [a, b] = find_inner_edge(c);
  std::vector<int> rest;  // vertices other than a,b, ascending; merged vertex goes last
  for (int v = 1; v <= n; ++v)
    if (v != a && v != b) rest.push_back(v);
  EdgeColoring sub{n - 1, std::vector<std::uint8_t>(EdgeColoring::edge_count(n - 1), 0)};
  for (int i = 1; i <= n - 2; ++i) {
    for (int j = i + 1; j <= n - 2; ++j) sub.set(i, j, c.at(rest[i - 1], rest[j - 1]));
    sub.set(i, n - 1, c.at(std::min(rest[i - 1], a), std::max(rest[i - 1], a)));
  }
  const Quasigroup g = reconstruct(sub);
  const GammaOp& star = gamma_catalog()[c.at(a, b)];

  std::vector<Elem> out(pow4(n));
  std::vector<Elem> x(n), gargs(n - 1);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    unpack(idx, n, x.data());
    for (int t = 0; t < n - 2; ++t) gargs[t] = x[rest[t] - 1];
    gargs[n - 2] = star.op(x[a - 1], x[b - 1]);
    out[idx] = g.evaluate(gargs);
  }
  return Quasigroup::unchecked(n, std::move(out));
}

bool check_sparse_agreement(const Quasigroup& f, const Quasigroup& g) {
  const int n = f.arity();
  if (g.arity() != n || n < 3) throw Error(Err::ArityMismatch, "sparse agreement needs equal arity >= 3");
  std::vector<Elem> x(n, 0);
  if (f.evaluate(x) != g.evaluate(x)) return false;
  for (int i = 1; i <= n; ++i)
    for (Elem v = 1; v < 4; ++v) {
      x.assign(n, 0);
      x[i - 1] = v;
      if (f.evaluate(x) != g.evaluate(x)) return false;
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (Elem v = 1; v < 4; ++v)
        for (Elem w = 1; w < 4; ++w) {
          x.assign(n, 0);
          x[i - 1] = v;
          x[j - 1] = w;
          if (f.evaluate(x) != g.evaluate(x)) return false;
        }
  return true;
}

RebuildResult rebuild_pipeline(const Quasigroup& q) {
  const int n = q.arity();
  if (n < 5) throw Error(Err::ArityMismatch, "rebuild pipeline needs arity >= 5");

  // Hypothesis: every principal 3- and 4-retract, at every fixing, reducible.
  for (int k = 3; k <= 4; ++k) {
    const int nfix = n - k;
    std::vector<int> comb(nfix);
    for (int i = 0; i < nfix; ++i) comb[i] = i + 1;
    for (;;) {
      std::vector<std::pair<int, Elem>> fixings(nfix);
      for (std::size_t vals = 0; vals < pow4(nfix); ++vals) {
        for (int t = 0; t < nfix; ++t)
          fixings[t] = {comb[t], static_cast<Elem>(vals >> (2 * t) & 3)};
        if (!is_permutably_reducible(retract(q, fixings, 0))) {
          std::ostringstream os;
          os << "irreducible principal " << k << "-retract at";
          for (auto [c, v] : fixings) os << " x" << c << "=" << int(v);
          throw Error(Err::HypothesisFailed, os.str());
        }
      }
      int i = nfix - 1;
      while (i >= 0 && comb[i] == n - nfix + 1 + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < nfix; ++j) comb[j] = comb[j - 1] + 1;
    }
  }

  auto [qn, t] = normalize(q);
  const EdgeColoring c = compute_coloring(qn);
  if (!check_conditions(c).ok())
    throw std::logic_error("rebuild: conditions (A),(B) violated despite reducible retracts");
  const Quasigroup g = reconstruct(c);
  if (!(g == qn))
    throw std::logic_error("rebuild: reconstruction differs from the normalized input");
  auto tree = decompose_tree(g);
  if (!tree) throw std::logic_error("rebuild: reconstruction is not completely reducible");
  return RebuildResult{t, qn, std::move(*tree)};
}

}  // namespace qg
