#include "qg/core.hpp"

#include <algorithm>
#include <sstream>

namespace qg {

const std::vector<Perm>& all_perms() {
  static const std::vector<Perm> perms = [] {
    std::vector<Perm> out;
    std::array<Elem, 4> v{0, 1, 2, 3};
    do {
      out.push_back(Perm{v});
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
  }();
  return perms;
}

std::size_t pack(std::span<const Elem> xs) {
  std::size_t idx = 0;
  for (std::size_t i = xs.size(); i-- > 0;) idx = (idx << 2) | xs[i];
  return idx;
}

void unpack(std::size_t idx, int n, Elem* out) {
  for (int i = 0; i < n; ++i) {
    out[i] = static_cast<Elem>(idx & 3);
    idx >>= 2;
  }
}

static std::string tuple_str(std::span<const Elem> xs) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << int(xs[i]);
  os << ')';
  return os.str();
}

Quasigroup Quasigroup::unchecked(int n, std::vector<Elem> vals) {
  if (n < 1) throw Error(Err::ArityMismatch, "arity must be >= 1");
  if (vals.size() != pow4(n))
    throw Error(Err::LengthMismatch, "value array has " + std::to_string(vals.size()) +
                                         " entries, expected " + std::to_string(pow4(n)));
  return Quasigroup(n, std::move(vals));
}

Quasigroup Quasigroup::validated(int n, std::vector<Elem> vals) {
  Quasigroup q = unchecked(n, std::move(vals));
  for (std::size_t i = 0; i < q.vals_.size(); ++i)
    if (q.vals_[i] > 3)
      throw Error(Err::ValueOutOfRange, "value " + std::to_string(int(q.vals_[i])) +
                                            " at index " + std::to_string(i));
  // Latin in coordinate c: every line through the array in direction c is a
  // permutation of Sigma.
  for (int c = 1; c <= n; ++c) {
    const std::size_t stride = pow4(c - 1);
    const std::size_t outer = pow4(n - c);
    for (std::size_t hipart = 0; hipart < outer; ++hipart) {
      for (std::size_t lopart = 0; lopart < stride; ++lopart) {
        const std::size_t base = hipart * stride * 4 + lopart;
        unsigned seen = 0;
        for (std::size_t k = 0; k < 4; ++k) seen |= 1u << q.vals_[base + k * stride];
        if (seen != 0xF) {
          std::vector<Elem> fixed(n);
          unpack(base, n, fixed.data());
          std::vector<Elem> others;
          for (int i = 1; i <= n; ++i)
            if (i != c) others.push_back(fixed[i - 1]);
          throw Error(Err::LatinViolation,
                      "line in coordinate " + std::to_string(c) + " at fixed tuple " +
                          tuple_str(others) + " is not a permutation");
        }
      }
    }
  }
  return q;
}

Elem Quasigroup::evaluate(std::span<const Elem> args) const {
  return vals_[pack(args)];
}

bool Quasigroup::predicate(std::span<const Elem> z) const {
  return z[0] == vals_[pack(z.subspan(1))];
}

Elem solve_for(const Quasigroup& q, int coord, std::span<const Elem> others) {
  const int n = q.arity();
  if (static_cast<int>(others.size()) != n)
    throw Error(Err::ArityMismatch, "solve_for expects the n other coordinates");
  if (coord == 0) return q.evaluate(others);
  // others = (z0, z1, .., skip coord, .., zn)
  std::vector<Elem> args(n);
  const Elem z0 = others[0];
  for (int i = 1, s = 1; i <= n; ++i) {
    if (i == coord) continue;
    args[i - 1] = others[s++];
  }
  for (Elem v = 0; v < 4; ++v) {
    args[coord - 1] = v;
    if (q.evaluate(args) == z0) return v;
  }
  throw std::logic_error("solve_for: no solution in a latin array");
}

Quasigroup retract(const Quasigroup& q,
                   const std::vector<std::pair<int, Elem>>& fixings,
                   int output) {
  const int n = q.arity();
  std::vector<int> fixed_coord(n + 1, -1);
  for (auto [c, v] : fixings) {
    if (c < 0 || c > n) throw Error(Err::BadSubset, "fixed coordinate out of range");
    if (v > 3) throw Error(Err::ValueOutOfRange, "fixed value out of range");
    if (fixed_coord[c] >= 0) throw Error(Err::BadSubset, "coordinate fixed twice");
    fixed_coord[c] = v;
  }
  if (output < 0 || output > n || fixed_coord[output] >= 0)
    throw Error(Err::BadSubset, "output coordinate must be free");
  std::vector<int> args;  // free coordinates other than the output, ascending
  for (int c = 0; c <= n; ++c)
    if (c != output && fixed_coord[c] < 0) args.push_back(c);
  const int k = static_cast<int>(args.size());
  if (k < 1) throw Error(Err::ArityMismatch, "retract needs at least one free argument");

  std::vector<Elem> z(n + 1);
  for (int c = 0; c <= n; ++c)
    if (fixed_coord[c] >= 0) z[c] = static_cast<Elem>(fixed_coord[c]);
  std::vector<Elem> out(pow4(k));
  std::vector<Elem> digits(k);
  std::vector<Elem> others(n);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    unpack(idx, k, digits.data());
    for (int t = 0; t < k; ++t) z[args[t]] = digits[t];
    for (int c = 0, s = 0; c <= n; ++c)
      if (c != output) others[s++] = z[c];
    out[idx] = solve_for(q, output, others);
  }
  return Quasigroup::unchecked(k, std::move(out));
}

Quasigroup apply_isotopy(const Quasigroup& q, const Isotopy& t) {
  const int n = q.arity();
  if (t.arity() != n) throw Error(Err::ArityMismatch, "isotopy arity mismatch");
  const Perm inv0 = t.tau[0].inverse();
  std::vector<Elem> out(q.size());
  std::vector<Elem> digits(n), args(n);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    unpack(idx, n, digits.data());
    for (int i = 0; i < n; ++i) args[i] = t.tau[i + 1](digits[i]);
    out[idx] = inv0(q.at(pack(args)));
  }
  return Quasigroup::unchecked(n, std::move(out));
}

bool is_normalized(const Quasigroup& q) {
  const int n = q.arity();
  for (int i = 1; i <= n; ++i) {
    const std::size_t stride = pow4(i - 1);
    for (std::size_t a = 0; a < 4; ++a)
      if (q.at(a * stride) != a) return false;
  }
  return true;
}

std::pair<Quasigroup, Isotopy> normalize(const Quasigroup& q) {
  const int n = q.arity();
  Isotopy t = Isotopy::identity(n);
  for (Elem a = 0; a < 4; ++a) t.tau[0].to[a] = q.at(a);  // f(a,0,...,0)
  // After the output correction, straighten coordinates 2..n; beta_i(0) = 0
  // already holds, so the corrections act independently.
  const Perm inv0 = t.tau[0].inverse();
  for (int i = 2; i <= n; ++i) {
    const std::size_t stride = pow4(i - 1);
    Perm beta;
    for (Elem b = 0; b < 4; ++b) beta.to[b] = inv0(q.at(b * stride));
    t.tau[i] = beta.inverse();
  }
  return {apply_isotopy(q, t), t};
}

Quasigroup compose(const Quasigroup& h, const Quasigroup& g,
                   const std::vector<int>& sigma) {
  const int m = g.arity();
  const int n = m + h.arity() - 1;
  if (static_cast<int>(sigma.size()) != n)
    throw Error(Err::BadSigma, "sigma must list all n argument positions");
  std::vector<bool> seen(n + 1, false);
  for (int s : sigma) {
    if (s < 1 || s > n || seen[s]) throw Error(Err::BadSigma, "sigma is not a permutation of 1..n");
    seen[s] = true;
  }
  std::vector<Elem> out(pow4(n));
  std::vector<Elem> x(n), gargs(m), hargs(h.arity());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    unpack(idx, n, x.data());
    for (int t = 0; t < m; ++t) gargs[t] = x[sigma[t] - 1];
    hargs[0] = g.evaluate(gargs);
    for (int t = m; t < n; ++t) hargs[t - m + 1] = x[sigma[t] - 1];
    out[idx] = h.evaluate(hargs);
  }
  return Quasigroup::unchecked(n, std::move(out));
}

}  // namespace qg
