#include <algorithm>
#include <sstream>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "qg/coloring.hpp"
#include "qg/enumeration.hpp"
#include "qg/formats.hpp"

using namespace qg;
using namespace qg::testing;

namespace {

template <typename T, typename Parse, typename Print>
void check_roundtrip(const T& value, Parse parse, Print print) {
  std::ostringstream first;
  print(first, value);
  std::istringstream is(first.str());
  const T back = parse(is);
  CHECK(back == value);
  std::ostringstream second;
  print(second, back);
  CHECK(second.str() == first.str());
}

Err parse_qg_error(const std::string& text) {
  return qg::testing::error_kind([&] {
    std::istringstream is(text);
    parse_qg(is);
  });
}

std::string parse_qg_message(const std::string& text) {
  try {
    std::istringstream is(text);
    parse_qg(is);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE_BEGIN("formats");

TEST_CASE("QG canonical bytes and roundtrip") {
  const Quasigroup q = qg_from(kGoldenSquare);
  CHECK(printed(q) == kGoldenSquare);

  check_roundtrip(
      q, [](std::istream& in) { return parse_qg(in); },
      [](std::ostream& out, const Quasigroup& v) { print_qg(out, v); });

  // Whitespace layout is free on input.
  std::istringstream squeezed("QG n=2 q=4\n0132102323013210");
  CHECK(parse_qg(squeezed) == q);
  std::istringstream ragged("  QG n=2 q=4\n01 32\n\n1023 2301\t3210\n\n");
  CHECK(parse_qg(ragged) == q);
}

TEST_CASE("QG printing widths at other arities") {
  const Quasigroup perm = Quasigroup::validated(1, {2, 0, 3, 1});
  CHECK(printed(perm) == "QG n=1 q=4\n2031\n");

  const Quasigroup cube = tree_qg("(g0 (g0 x1 x2) x3)");
  const std::string text = printed(cube);
  CHECK(text.substr(0, 11) == "QG n=3 q=4\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);  // header + one body line

  const Quasigroup four = tree_qg("(g0 (g0 x1 x2) (g0 x3 x4))");
  const std::string body = printed(four);
  CHECK(std::count(body.begin(), body.end(), '\n') == 5);  // header + 4 body lines
  check_roundtrip(
      four, [](std::istream& in) { return parse_qg(in); },
      [](std::ostream& out, const Quasigroup& v) { print_qg(out, v); });
}

TEST_CASE("QG parse errors carry positions") {
  CHECK(parse_qg_error("QG n=2 q=4\n0132 1023 2301 321\n") == Err::LengthMismatch);
  CHECK(parse_qg_message("QG n=2 q=4\n0132 1023 2301 321\n").find("line") !=
        std::string::npos);
  CHECK(parse_qg_error("QG n=2 q=4\n0132 1023 2301 3210 0\n") == Err::LengthMismatch);
  CHECK(parse_qg_error("QG n=2 q=4\n0132 1023 2301 3215\n") == Err::ParseError);
  CHECK(parse_qg_error("QG n=2 q=4\n0132 1023 2301 3210 x\n") == Err::ParseError);
  CHECK(parse_qg_error("QX n=2 q=4\n") == Err::ParseError);
  CHECK(parse_qg_error("QG n=2 q=5\n") == Err::ParseError);
  CHECK(parse_qg_error("QG n=0 q=4\n") == Err::ParseError);
  CHECK(parse_qg_error("QG n=13 q=4\n") == Err::ParseError);
  CHECK(parse_qg_message("QG n=2 q=4\n0132\n5") == "line 3, col 1: expected a digit 0..3");
}

TEST_CASE("BF roundtrip and wrapping") {
  const BoolFn f{2, {1, 0, 1, 1}};
  std::ostringstream os;
  print_bf(os, f);
  CHECK(os.str() == "BF n=2\n1011\n");
  check_roundtrip(
      f, [](std::istream& in) { return parse_bf(in); },
      [](std::ostream& out, const BoolFn& v) { print_bf(out, v); });

  BoolFn big{7, {}};
  big.bits.resize(128);
  for (std::size_t i = 0; i < 128; ++i) big.bits[i] = (i * 5 + 1) % 3 == 0;
  std::ostringstream wide;
  print_bf(wide, big);
  const std::string wide_text = wide.str();
  CHECK(std::count(wide_text.begin(), wide_text.end(), '\n') == 3);
  check_roundtrip(
      big, [](std::istream& in) { return parse_bf(in); },
      [](std::ostream& out, const BoolFn& v) { print_bf(out, v); });

  CHECK(error_kind([] {
          std::istringstream is("BF n=2\n101\n");
          parse_bf(is);
        }) == Err::LengthMismatch);
  CHECK(error_kind([] {
          std::istringstream is("BF n=2\n10121\n");
          parse_bf(is);
        }) == Err::ParseError);
}

TEST_CASE("COLORING roundtrip, order freedom and canonical print") {
  const Quasigroup f = tree_qg("(g1 (g0 x1 x2) x3)");
  const EdgeColoring c = compute_coloring(f);
  std::ostringstream os;
  print_coloring(os, c);
  CHECK(os.str() == "COLORING n=3\n1 2 g0\n1 3 g1\n2 3 g1\n");
  check_roundtrip(
      c, [](std::istream& in) { return parse_coloring(in); },
      [](std::ostream& out, const EdgeColoring& v) { print_coloring(out, v); });

  std::istringstream shuffled("COLORING n=3\n2 3 g1\n1 2 g0\n1 3 g1\n");
  CHECK(parse_coloring(shuffled) == c);
}

TEST_CASE("COLORING rejects duplicates, gaps and bad endpoints") {
  CHECK(error_kind([] {
          std::istringstream is("COLORING n=3\n1 2 g0\n1 2 g1\n2 3 g1\n");
          parse_coloring(is);
        }) == Err::DuplicateEdge);
  CHECK(error_kind([] {
          std::istringstream is("COLORING n=3\n1 2 g0\n2 3 g1\n");
          parse_coloring(is);
        }) == Err::MissingEdge);
  try {
    std::istringstream is("COLORING n=3\n1 2 g0\n2 3 g1\n");
    parse_coloring(is);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("{1,3}") != std::string::npos);
  }
  CHECK(error_kind([] {
          std::istringstream is("COLORING n=3\n2 1 g0\n1 3 g1\n2 3 g1\n");
          parse_coloring(is);
        }) == Err::ParseError);
  CHECK(error_kind([] {
          std::istringstream is("COLORING n=3\n1 4 g0\n1 3 g1\n2 3 g1\n");
          parse_coloring(is);
        }) == Err::ParseError);
  CHECK(error_kind([] {
          std::istringstream is("COLORING n=3\n1 2 g7\n1 3 g1\n2 3 g1\n");
          parse_coloring(is);
        }) == Err::ParseError);
}

TEST_CASE("tree expressions parse, print and canonicalize") {
  const std::string expr = "(g2 (g0 x1 x3) x2)";
  const CompositionTree t = parse_tree(expr);
  CHECK(t.arity == 3);
  CHECK(print_tree(t) == expr);

  // An inline table equal to a catalog entry prints as that entry.
  const CompositionTree aliased = parse_tree("(t:0123103223013210 x1 x2)");
  CHECK(print_tree(aliased) == "(g0 x1 x2)");

  // A non-reduced latin table keeps the explicit form.
  const std::string shifted = "(t:1230210330120321 x1 x2)";
  CHECK(print_tree(parse_tree(shifted)) == shifted);

  CHECK(parse_tree(" ( g1 x2  ( g0 x3 x1 ) ) ").arity == 3);
}

TEST_CASE("tree expression errors") {
  CHECK(error_kind([] { parse_tree("(g0 x1 x1)"); }) == Err::ParseError);
  CHECK(error_kind([] { parse_tree("(g0 x1 x3)"); }) == Err::ParseError);
  CHECK(error_kind([] { parse_tree("x1"); }) == Err::ParseError);
  CHECK(error_kind([] { parse_tree("(g4 x1 x2)"); }) == Err::ParseError);
  CHECK(error_kind([] { parse_tree("(g0 x1 x2"); }) == Err::ParseError);
  CHECK(error_kind([] { parse_tree("(g0 x1 x2) junk"); }) == Err::ParseError);
  CHECK(error_kind([] {
          parse_tree("(t:0000111122223333 x1 x2)");
        }) == Err::LatinViolation);
}

TEST_CASE("ISOTOPY roundtrip and validation") {
  Isotopy t = Isotopy::identity(2);
  t.tau[0] = Perm{{2, 0, 3, 1}};
  t.tau[2] = kPi;
  std::ostringstream os;
  print_isotopy(os, t);
  CHECK(os.str() == "ISOTOPY n=2\n2 0 3 1\n0 1 2 3\n1 0 3 2\n");
  check_roundtrip(
      t, [](std::istream& in) { return parse_isotopy(in); },
      [](std::ostream& out, const Isotopy& v) { print_isotopy(out, v); });

  CHECK(error_kind([] {
          std::istringstream is("ISOTOPY n=1\n0 1 2 3\n0 0 1 2\n");
          parse_isotopy(is);
        }) == Err::ParseError);
  CHECK(error_kind([] {
          std::istringstream is("ISOTOPY n=1\n0 1 2 3\n");
          parse_isotopy(is);
        }) == Err::ParseError);
}

TEST_CASE("parse_any dispatches on the leading token") {
  std::istringstream a(kGoldenSquare);
  CHECK(std::holds_alternative<Quasigroup>(parse_any(a)));
  std::istringstream b("BF n=1\n10\n");
  CHECK(std::holds_alternative<BoolFn>(parse_any(b)));
  std::istringstream c("COLORING n=2\n1 2 g3\n");
  CHECK(std::holds_alternative<EdgeColoring>(parse_any(c)));
  std::istringstream d("ISOTOPY n=1\n0 1 2 3\n3 2 1 0\n");
  CHECK(std::holds_alternative<Isotopy>(parse_any(d)));
  std::istringstream e("(g0 x1 x2)");
  CHECK(std::holds_alternative<CompositionTree>(parse_any(e)));
  std::istringstream f("HELLO\n");
  CHECK(error_kind([&] { parse_any(f); }) == Err::ParseError);
}

TEST_SUITE_END();
