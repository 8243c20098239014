#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "qg/analysis.hpp"
#include "qg/core.hpp"
#include "qg/formats.hpp"

namespace qg::testing {

// The running golden example: a standardly semilinear square whose rows are
// (0,1,2,3), (1,0,3,2), (3,2,0,1), (2,3,1,0); storage is column by column.
inline constexpr const char* kGoldenSquare = "QG n=2 q=4\n0132 1023 2301 3210\n";
inline constexpr const char* kGoldenLambdaBits = "1011";

inline Quasigroup qg_from(const std::string& text) {
  std::istringstream is(text);
  Quasigroup raw = parse_qg(is);
  return Quasigroup::validated(raw.arity(), raw.values());
}

inline Quasigroup from_digits(int n, const std::string& digits) {
  std::vector<Elem> v;
  v.reserve(digits.size());
  for (char c : digits) v.push_back(Elem(c - '0'));
  return Quasigroup::validated(n, std::move(v));
}

inline std::string digits_of(const Quasigroup& q) {
  std::string s(q.size(), '0');
  for (std::size_t i = 0; i < q.size(); ++i) s[i] = char('0' + q.at(i));
  return s;
}

inline Quasigroup tree_qg(const std::string& expr) {
  return parse_tree(expr).evaluate();
}

inline std::string printed(const Quasigroup& q) {
  std::ostringstream os;
  print_qg(os, q);
  return os.str();
}

template <typename F>
Err error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind;
  }
  throw std::logic_error("expected a qg::Error");
}

}  // namespace qg::testing
