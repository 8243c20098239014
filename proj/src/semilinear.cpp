#include "qg/semilinear.hpp"

namespace qg {

bool eval_L(std::span<const Elem> z) {
  int s = 1;
  for (Elem e : z) s ^= hi(e);
  return s == 1;  // xor of hi over all coordinates is 0
}

bool is_standardly_semilinear(const Quasigroup& q) {
  const int n = q.arity();
  std::vector<Elem> x(n);
  for (std::size_t idx = 0; idx < q.size(); ++idx) {
    unpack(idx, n, x.data());
    int s = hi(q.at(idx));
    for (int i = 0; i < n; ++i) s ^= hi(x[i]);
    if (s != 0) return false;
  }
  return true;
}

BoolFn extract_lambda(const Quasigroup& q) {
  if (!is_standardly_semilinear(q))
    throw Error(Err::NotStandardlySemilinear, "quasigroup is not majorized by L");
  const int n = q.arity();
  BoolFn lambda{n, std::vector<std::uint8_t>(std::size_t{1} << n, 2)};
  std::vector<Elem> x(n);
  for (std::size_t idx = 0; idx < q.size(); ++idx) {
    unpack(idx, n, x.data());
    std::size_t hidx = 0;
    int par = lo(q.at(idx)) ^ 1;
    for (int i = 0; i < n; ++i) {
      hidx |= std::size_t(hi(x[i])) << i;
      par ^= lo(x[i]);
    }
    if (lambda.bits[hidx] == 2)
      lambda.bits[hidx] = static_cast<std::uint8_t>(par);
    else if (lambda.bits[hidx] != par)
      throw std::logic_error("extract_lambda: inconsistent parity inside one hi-class");
  }
  return lambda;
}

Quasigroup from_lambda(const BoolFn& lambda) {
  const int n = lambda.n;
  if (lambda.bits.size() != (std::size_t{1} << n))
    throw Error(Err::LengthMismatch, "lambda truth table has wrong length");
  std::vector<Elem> out(pow4(n));
  std::vector<Elem> x(n);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    unpack(idx, n, x.data());
    int h = 0, l = 1;
    std::size_t hidx = 0;
    for (int i = 0; i < n; ++i) {
      h ^= hi(x[i]);
      l ^= lo(x[i]);
      hidx |= std::size_t(hi(x[i])) << i;
    }
    l ^= lambda.bits[hidx];
    out[idx] = static_cast<Elem>((h << 1) | l);
  }
  return Quasigroup::unchecked(n, std::move(out));
}

// ----- isotopes of L -----

std::string LIsotope::partition_names() const {
  std::string s;
  for (auto p : part) s += char('A' + p);
  return s;
}

std::vector<LIsotope> enumerate_L_isotopes(int n) {
  std::size_t count = 2;
  for (int i = 0; i <= n; ++i) count *= 3;
  std::vector<LIsotope> out;
  out.reserve(count);
  std::vector<std::uint8_t> part(n + 1, LIsotope::A);
  for (;;) {
    out.push_back(LIsotope{part, false});
    out.push_back(LIsotope{part, true});
    int i = 0;
    while (i <= n && part[i] == LIsotope::C) part[i++] = LIsotope::A;
    if (i > n) break;
    ++part[i];
  }
  return out;
}

static bool covers(const LIsotope& iso, const Quasigroup& q) {
  const int n = q.arity();
  std::vector<Elem> x(n);
  for (std::size_t idx = 0; idx < q.size(); ++idx) {
    unpack(idx, n, x.data());
    int s = (iso.complement ? 1 : 0) ^ LIsotope::part_bit(iso.part[0], q.at(idx));
    for (int i = 0; i < n; ++i) s ^= LIsotope::part_bit(iso.part[i + 1], x[i]);
    if (s != 0) return false;
  }
  return true;
}

std::optional<LIsotope> is_semilinear(const Quasigroup& q) {
  for (const auto& iso : enumerate_L_isotopes(q.arity()))
    if (covers(iso, q)) return iso;
  return std::nullopt;
}

std::vector<LIsotope> majorizing_isotopes(const Quasigroup& q) {
  if (!is_standardly_semilinear(q))
    throw Error(Err::NotStandardlySemilinear, "majorizing_isotopes expects a standardly semilinear input");
  std::vector<LIsotope> out;
  for (const auto& iso : enumerate_L_isotopes(q.arity()))
    if (covers(iso, q)) out.push_back(iso);
  return out;
}

boost::multiprecision::cpp_int count_semilinear(int n) {
  if (n < 1) throw Error(Err::ArityMismatch, "count_semilinear needs n >= 1");
  using boost::multiprecision::cpp_int;
  cpp_int three = boost::multiprecision::pow(cpp_int(3), n + 1);
  cpp_int two = cpp_int(1) << ((std::size_t{1} << n) + 1);
  cpp_int six = boost::multiprecision::pow(cpp_int(6), n);
  return three * two - 8 * six;
}

AffinityClass affinity(const BoolFn& f) {
  const int n = f.n;
  AffinityClass a;
  a.b0 = f.bits[0];
  a.coef.assign(n, 0);
  for (int i = 0; i < n; ++i) a.coef[i] = f.bits[std::size_t{1} << i] ^ a.b0;
  for (std::size_t idx = 0; idx < f.bits.size(); ++idx) {
    int v = a.b0;
    for (int i = 0; i < n; ++i)
      if (idx >> i & 1) v ^= a.coef[i];
    if (v != f.bits[idx]) {
      a.coef.clear();
      return a;
    }
  }
  a.affine = true;
  return a;
}

std::vector<std::pair<Perm, Perm>> autotopy_pairs(const Quasigroup& q, int i, int j) {
  const int n = q.arity();
  if (i == j || i < 0 || j < 0 || i > n || j > n)
    throw Error(Err::BadSubset, "autotopy_pairs needs two distinct predicate coordinates");
  std::vector<std::pair<Perm, Perm>> out;
  std::vector<Elem> z(n + 1), x(n);
  // Checking support -> support suffices: the transform is a bijection of
  // Sigma^(n+1) and the support is finite, so "into" implies "onto".
  for (const Perm& mu : all_perms()) {
    for (const Perm& nu : all_perms()) {
      bool ok = true;
      for (std::size_t idx = 0; idx < q.size() && ok; ++idx) {
        unpack(idx, n, x.data());
        z[0] = q.at(idx);
        for (int t = 0; t < n; ++t) z[t + 1] = x[t];
        z[i] = mu(z[i]);
        z[j] = nu(z[j]);
        ok = q.predicate(z);
      }
      if (ok) out.emplace_back(mu, nu);
    }
  }
  return out;
}

}  // namespace qg
