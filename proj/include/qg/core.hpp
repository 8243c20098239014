#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// n-ary quasigroups over Sigma = {0,1,2,3}.
//
// Conventions used throughout:
//  - value arrays are indexed by idx = x1 + 4*x2 + ... + 4^(n-1)*xn (x1 fastest);
//  - predicate coordinates are numbered 0..n, coordinate 0 being the output:
//    Q<z0,...,zn> holds iff z0 = f(z1,...,zn);
//  - hi/lo are the two bits of an element, hi(x) = 1 exactly for x in {2,3}.

namespace qg {

using Elem = std::uint8_t;

constexpr int kOrder = 4;

constexpr int hi(Elem x) { return (x >> 1) & 1; }
constexpr int lo(Elem x) { return x & 1; }

constexpr std::size_t pow4(int n) { return std::size_t{1} << (2 * n); }

enum class Err {
  LengthMismatch,
  ValueOutOfRange,
  LatinViolation,
  ArityMismatch,
  NotNormalized,
  NotStandardlySemilinear,
  NoInnerEdge,
  HypothesisFailed,
  MissingEdge,
  DuplicateEdge,
  ParseError,
  UnsupportedArity,
  BadSubset,
  BadSigma,
  Usage,
};

struct Error : std::runtime_error {
  Err kind;
  Error(Err k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// ----- permutations of Sigma -----

struct Perm {
  std::array<Elem, 4> to{0, 1, 2, 3};

  Elem operator()(Elem x) const { return to[x]; }
  bool is_identity() const { return to == std::array<Elem, 4>{0, 1, 2, 3}; }
  Perm inverse() const {
    Perm p;
    for (Elem x = 0; x < 4; ++x) p.to[to[x]] = x;
    return p;
  }
  friend bool operator==(const Perm&, const Perm&) = default;
};

// pi = (1,0,3,2): the unique nontrivial permutation fixing both hi-blocks setwise
// that appears in the autotopy statement for standardly semilinear quasigroups.
inline constexpr Perm kPi{{1, 0, 3, 2}};

// All 24 permutations in lexicographic order of their value lists.
const std::vector<Perm>& all_perms();

// ----- isotopies -----

// tau[0] acts on the output coordinate, tau[i] on argument i:
// apply_isotopy(Q, T)(x1..xn) = tau0^-1( Q(tau1 x1, ..., taun xn) ).
struct Isotopy {
  std::vector<Perm> tau;

  int arity() const { return static_cast<int>(tau.size()) - 1; }
  static Isotopy identity(int n) { return Isotopy{std::vector<Perm>(n + 1)}; }
  Isotopy inverse() const {
    Isotopy t = *this;
    for (auto& p : t.tau) p = p.inverse();
    return t;
  }
  friend bool operator==(const Isotopy&, const Isotopy&) = default;
};

// ----- quasigroups -----

class Quasigroup {
 public:
  Quasigroup() = default;

  // Checks length, range and the latin property in every coordinate.
  static Quasigroup validated(int n, std::vector<Elem> vals);
  // For values that are latin by construction; cheap invariants only.
  static Quasigroup unchecked(int n, std::vector<Elem> vals);

  int arity() const { return n_; }
  std::size_t size() const { return vals_.size(); }
  Elem at(std::size_t idx) const { return vals_[idx]; }
  const std::vector<Elem>& values() const { return vals_; }

  Elem evaluate(std::span<const Elem> args) const;
  // z has n+1 entries, z[0] the output coordinate.
  bool predicate(std::span<const Elem> z) const;

  friend bool operator==(const Quasigroup&, const Quasigroup&) = default;

 private:
  Quasigroup(int n, std::vector<Elem> vals) : n_(n), vals_(std::move(vals)) {}
  int n_ = 0;
  std::vector<Elem> vals_;
};

std::size_t pack(std::span<const Elem> xs);
void unpack(std::size_t idx, int n, Elem* out);

// Unique v with Q<z | z_coord = v>; `others` lists the n remaining predicate
// coordinates in increasing coordinate order.
Elem solve_for(const Quasigroup& q, int coord, std::span<const Elem> others);

// Fix predicate coordinates per `fixings`; `output` is the free coordinate that
// becomes the result's output, the remaining free coordinates (ascending) its
// arguments. Principal retract = output 0.
Quasigroup retract(const Quasigroup& q,
                   const std::vector<std::pair<int, Elem>>& fixings,
                   int output);

Quasigroup apply_isotopy(const Quasigroup& q, const Isotopy& t);

// f(0,...,0,a,0,...,0) = a at every argument position.
bool is_normalized(const Quasigroup& q);

// Returns the normalized quasigroup and the isotopy T with
// result = apply_isotopy(q, T): tau0(a) = f(a,0,...,0), tau1 = id, and
// tau_i (i >= 2) the inverse of b -> (tau0^-1 f)(0,..,b at i,..,0).
std::pair<Quasigroup, Isotopy> normalize(const Quasigroup& q);

// f(x1..xn) = h(g(x_{sigma(1)},...,x_{sigma(m)}), x_{sigma(m+1)},...,x_{sigma(n)});
// sigma is a permutation of 1..n, m = arity of g.
Quasigroup compose(const Quasigroup& h, const Quasigroup& g,
                   const std::vector<int>& sigma);

}  // namespace qg
