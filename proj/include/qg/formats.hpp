#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "qg/analysis.hpp"
#include "qg/coloring.hpp"
#include "qg/core.hpp"
#include "qg/semilinear.hpp"

// Text formats. All printers emit a canonical form and all parsers accept
// surrounding whitespace but reject junk, reporting line:column positions.
//
//   QG n=<n> q=4        hypercube: 4^n digits, x1 fastest, groups of 4,
//   0123 1032 ...       16 groups per line
//
//   BF n=<n>            Boolean function: 2^n chars '0'/'1', z1 fastest,
//   1011                64 per line
//
//   COLORING n=<n>      one line per edge of K_n: "i j g<k>", i < j,
//   1 2 g0              canonical order lexicographic
//
//   (g2 (g0 x1 x3) x2)  composition tree; ops are Gamma ids or inline
//                       row-major tables "t:<16 digits>"
//
//   ISOTOPY n=<n>       n+1 lines of 4 digits, the output permutation first

namespace qg {

Quasigroup parse_qg(std::istream& in);  // digits checked, latin property not
void print_qg(std::ostream& out, const Quasigroup& q);

BoolFn parse_bf(std::istream& in);
void print_bf(std::ostream& out, const BoolFn& f);

EdgeColoring parse_coloring(std::istream& in);
void print_coloring(std::ostream& out, const EdgeColoring& c);

CompositionTree parse_tree(const std::string& text);
std::string print_tree(const CompositionTree& t);

Isotopy parse_isotopy(std::istream& in);
void print_isotopy(std::ostream& out, const Isotopy& t);

using ParsedValue = std::variant<Quasigroup, BoolFn, EdgeColoring, CompositionTree, Isotopy>;
ParsedValue parse_any(std::istream& in);

}  // namespace qg
