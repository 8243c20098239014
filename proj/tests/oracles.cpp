#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace qg::oracle {

std::size_t slow_index(const std::vector<Elem>& xs) {
  std::size_t idx = 0;
  for (std::size_t i = xs.size(); i-- > 0;) idx = idx * 4 + xs[i];
  return idx;
}

Elem eval_slow(const Quasigroup& q, const std::vector<Elem>& xs) {
  return q.values()[slow_index(xs)];
}

namespace {

// All assignments of `len` values, first position fastest.
std::vector<std::vector<Elem>> assignments(int len) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> cur(len, 0);
  for (;;) {
    out.push_back(cur);
    int i = 0;
    while (i < len && cur[i] == 3) cur[i++] = 0;
    if (i == len) break;
    ++cur[i];
  }
  return out;
}

}  // namespace

bool reducible_via_subset_definitional(const Quasigroup& q, const std::vector<int>& s) {
  const int n = q.arity();
  std::vector<int> rest;
  for (int i = 1; i <= n; ++i)
    if (std::find(s.begin(), s.end(), i) == s.end()) rest.push_back(i);

  const auto s_assign = assignments(int(s.size()));
  const auto rest_assign = assignments(int(rest.size()));

  // Label each S-assignment by its subfunction over the rest cube.
  std::map<std::vector<Elem>, int> classes;
  std::vector<int> label(s_assign.size(), -1);
  std::vector<std::vector<Elem>> rep;
  for (std::size_t ai = 0; ai < s_assign.size(); ++ai) {
    std::vector<Elem> sub;
    sub.reserve(rest_assign.size());
    for (const auto& b : rest_assign) {
      std::vector<Elem> args(n, 0);
      for (std::size_t k = 0; k < s.size(); ++k) args[s[k] - 1] = s_assign[ai][k];
      for (std::size_t k = 0; k < rest.size(); ++k) args[rest[k] - 1] = b[k];
      sub.push_back(eval_slow(q, args));
    }
    auto [it, inserted] = classes.try_emplace(sub, int(classes.size()));
    if (inserted) {
      if (classes.size() > 4) return false;  // g would need a 5th output value
      rep.push_back(sub);
    }
    label[ai] = it->second;
  }

  // g := label, h := representative lookup; verify f = h(g(x_S), x_rest)
  // on the whole cube.
  for (const auto& a : assignments(n)) {
    std::vector<Elem> sa, ra;
    for (int i : s) sa.push_back(a[i - 1]);
    for (int i : rest) ra.push_back(a[i - 1]);
    const int cls = label[slow_index(sa)];
    std::size_t ridx = 0;
    for (std::size_t k = ra.size(); k-- > 0;) ridx = ridx * 4 + ra[k];
    if (rep[cls][ridx] != eval_slow(q, a)) return false;
  }
  return true;
}

bool reducible_definitional(const Quasigroup& q) {
  const int n = q.arity();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int size = std::popcount(mask);
    if (size < 2 || size > n - 1) continue;
    std::vector<int> s;
    for (int i = 1; i <= n; ++i)
      if (mask & (1u << (i - 1))) s.push_back(i);
    if (reducible_via_subset_definitional(q, s)) return true;
  }
  return false;
}

std::optional<BoolFn> lambda_cellwise(const Quasigroup& q) {
  const int n = q.arity();
  std::vector<std::uint8_t> lam(std::size_t{1} << n, 2);
  for (const auto& x : assignments(n)) {
    const Elem v = eval_slow(q, x);
    int h = hi(v), l = lo(v) ^ 1;
    std::size_t key = 0;
    for (int i = 0; i < n; ++i) {
      h ^= hi(x[i]);
      l ^= lo(x[i]);
      key |= std::size_t(hi(x[i])) << i;
    }
    if (h != 0) return std::nullopt;
    if (lam[key] == 2)
      lam[key] = std::uint8_t(l);
    else if (lam[key] != l)
      return std::nullopt;
  }
  return BoolFn{n, std::move(lam)};
}

std::vector<std::vector<std::uint8_t>> affine_tables(int n) {
  std::vector<std::vector<std::uint8_t>> out;
  for (unsigned mask = 0; mask < (2u << n); ++mask) {
    std::vector<std::uint8_t> table(std::size_t{1} << n);
    for (std::size_t z = 0; z < table.size(); ++z) {
      unsigned v = mask & 1;
      for (int i = 0; i < n; ++i) v ^= ((mask >> (i + 1)) & (z >> i)) & 1;
      table[z] = std::uint8_t(v);
    }
    out.push_back(std::move(table));
  }
  return out;
}

}  // namespace qg::oracle
