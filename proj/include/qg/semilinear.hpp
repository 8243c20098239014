#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qg/core.hpp"

// Standard semilinearity and the lambda correspondence.
//
// L<z0,...,zn> holds iff hi(z0) ^ ... ^ hi(zn) = 0. A quasigroup is standardly
// semilinear when its predicate support lies inside L's; such quasigroups are
// in bijection with Boolean functions lambda of n variables via
//   hi(f(x)) = hi(x1) ^ ... ^ hi(xn)
//   lo(f(x)) = lo(x1) ^ ... ^ lo(xn) ^ lambda(hi(x1),...,hi(xn)) ^ 1.

namespace qg {

struct BoolFn {
  int n = 0;
  std::vector<std::uint8_t> bits;  // size 2^n, index z1 + 2*z2 + ... (z1 fastest)

  std::uint8_t at(std::size_t idx) const { return bits[idx]; }
  friend bool operator==(const BoolFn&, const BoolFn&) = default;
};

bool eval_L(std::span<const Elem> z);

bool is_standardly_semilinear(const Quasigroup& q);

// The unique lambda with lo(z0)^lo(z1)^...^lo(zn)^lambda(hi-class) = 1 at every
// support point; throws NotStandardlySemilinear otherwise.
BoolFn extract_lambda(const Quasigroup& q);

Quasigroup from_lambda(const BoolFn& lambda);

// ----- isotopes of L -----

// Each function isotopic to L is determined by one of three 2-2 partitions of
// Sigma per coordinate plus a single complement bit:
//   value(z) = 1  iff  p0(z0) ^ ... ^ pn(zn) ^ c = 0,
// with p chosen among hi (partition 01|23), lo (02|13), hi^lo (03|12).
struct LIsotope {
  enum Part : std::uint8_t { A = 0, B = 1, C = 2 };  // A: 01|23, B: 02|13, C: 03|12

  std::vector<std::uint8_t> part;  // size n+1, coordinate 0 first
  bool complement = false;

  static int part_bit(std::uint8_t p, Elem x) {
    return p == A ? hi(x) : p == B ? lo(x) : hi(x) ^ lo(x);
  }
  bool eval(std::span<const Elem> z) const {
    int s = complement ? 1 : 0;
    for (std::size_t i = 0; i < z.size(); ++i) s ^= part_bit(part[i], z[i]);
    return s == 0;
  }
  // Coordinate 0 first, e.g. "ABB" plus the complement bit.
  std::string partition_names() const;
  friend bool operator==(const LIsotope&, const LIsotope&) = default;
};

// All 2 * 3^(n+1) functions isotopic to L, pairwise distinct; the first entry
// is L itself (all parts A, complement 0).
std::vector<LIsotope> enumerate_L_isotopes(int n);

// Semilinearity decision: f is semilinear iff support(f) lies inside some
// isotope of L from the enumerated family. Returns the first witness in
// enumeration order.
std::optional<LIsotope> is_semilinear(const Quasigroup& q);

// All isotopes of L majorizing Q; size > 1 exactly when lambda is affine.
std::vector<LIsotope> majorizing_isotopes(const Quasigroup& q);

boost::multiprecision::cpp_int count_semilinear(int n);

struct AffinityClass {
  bool affine = false;
  std::uint8_t b0 = 0;               // meaningful when affine
  std::vector<std::uint8_t> coef;    // size n when affine
};
AffinityClass affinity(const BoolFn& f);

// All (mu, nu) with Q<z> = Q<z with z_i -> mu z_i, z_j -> nu z_j> for all z;
// pairs ordered by (mu, nu) position in all_perms().
std::vector<std::pair<Perm, Perm>> autotopy_pairs(const Quasigroup& q, int i, int j);

}  // namespace qg
