#include "qg/formats.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace qg {

namespace {

struct Scanner {
  std::string text;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Scanner(std::istream& in)
      : text(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()) {}
  explicit Scanner(std::string s) : text(std::move(s)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Err::ParseError,
                "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
  }
  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char get() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) get();
  }
  void skip_blanks() {  // spaces and tabs only
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }
  void expect(const std::string& lit) {
    for (char c : lit) {
      if (eof() || peek() != c) fail("expected \"" + lit + "\"");
      get();
    }
  }
  int read_uint(int max_digits = 9) {
    if (eof() || peek() < '0' || peek() > '9') fail("expected a number");
    long v = 0;
    int digits = 0;
    while (!eof() && peek() >= '0' && peek() <= '9') {
      if (++digits > max_digits) fail("number too long");
      v = v * 10 + (get() - '0');
    }
    return static_cast<int>(v);
  }
  void expect_eol() {
    skip_blanks();
    if (eof()) return;
    if (peek() != '\n' && peek() != '\r') fail("unexpected trailing characters");
    while (!eof() && (peek() == '\r' || peek() == '\n')) get();
  }
  void expect_eof() {
    skip_ws();
    if (!eof()) fail("unexpected trailing content");
  }
};

int parse_header(Scanner& s, const std::string& tag, bool with_order) {
  s.skip_ws();
  s.expect(tag);
  s.skip_blanks();
  s.expect("n=");
  const int n = s.read_uint();
  if (with_order) {
    s.skip_blanks();
    s.expect("q=");
    if (s.read_uint() != 4) s.fail("only order 4 is supported");
  }
  s.expect_eol();
  return n;
}

}  // namespace

Quasigroup parse_qg(std::istream& in) {
  Scanner s(in);
  const int n = parse_header(s, "QG", true);
  if (n < 1 || n > 12) s.fail("arity out of supported range 1..12");
  std::vector<Elem> vals;
  vals.reserve(pow4(n));
  while (true) {
    s.skip_ws();
    if (s.eof()) break;
    const char c = s.peek();
    if (c < '0' || c > '3') {
      if (vals.size() == pow4(n)) break;
      s.fail("expected a digit 0..3");
    }
    if (vals.size() == pow4(n))
      throw Error(Err::LengthMismatch, "line " + std::to_string(s.line) + ", col " +
                                           std::to_string(s.col) + ": more than " +
                                           std::to_string(pow4(n)) + " digits");
    s.get();
    vals.push_back(static_cast<Elem>(c - '0'));
  }
  if (vals.size() != pow4(n))
    throw Error(Err::LengthMismatch, "line " + std::to_string(s.line) + ", col " +
                                         std::to_string(s.col) + ": got " +
                                         std::to_string(vals.size()) + " digits, expected " +
                                         std::to_string(pow4(n)));
  s.expect_eof();
  return Quasigroup::unchecked(n, std::move(vals));
}

void print_qg(std::ostream& out, const Quasigroup& q) {
  out << "QG n=" << q.arity() << " q=4\n";
  const auto& v = q.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << char('0' + v[i]);
    if (i + 1 == v.size() || (i + 1) % 64 == 0)
      out << '\n';
    else if ((i + 1) % 4 == 0)
      out << ' ';
  }
}

BoolFn parse_bf(std::istream& in) {
  Scanner s(in);
  const int n = parse_header(s, "BF", false);
  if (n < 1 || n > 24) s.fail("arity out of supported range 1..24");
  const std::size_t want = std::size_t{1} << n;
  std::vector<std::uint8_t> bits;
  bits.reserve(want);
  while (true) {
    s.skip_ws();
    if (s.eof()) break;
    const char c = s.peek();
    if (c != '0' && c != '1') {
      if (bits.size() == want) break;
      s.fail("expected '0' or '1'");
    }
    if (bits.size() == want)
      throw Error(Err::LengthMismatch, "line " + std::to_string(s.line) + ", col " +
                                           std::to_string(s.col) + ": more than " +
                                           std::to_string(want) + " bits");
    s.get();
    bits.push_back(c == '1');
  }
  if (bits.size() != want)
    throw Error(Err::LengthMismatch, "got " + std::to_string(bits.size()) +
                                         " bits, expected " + std::to_string(want));
  s.expect_eof();
  return BoolFn{n, std::move(bits)};
}

void print_bf(std::ostream& out, const BoolFn& f) {
  out << "BF n=" << f.n << "\n";
  for (std::size_t i = 0; i < f.bits.size(); ++i) {
    out << char('0' + f.bits[i]);
    if (i + 1 == f.bits.size() || (i + 1) % 64 == 0) out << '\n';
  }
}

EdgeColoring parse_coloring(std::istream& in) {
  Scanner s(in);
  const int n = parse_header(s, "COLORING", false);
  if (n < 2 || n > 64) s.fail("vertex count out of supported range 2..64");
  EdgeColoring c{n, std::vector<std::uint8_t>(EdgeColoring::edge_count(n), 4)};
  // Edge lines in any order; completeness is checked afterwards so a short
  // file reports the missing edge rather than a junk syntax position.
  for (;;) {
    s.skip_ws();
    if (s.eof() || s.peek() < '0' || s.peek() > '9') break;
    const int line = s.line, col = s.col;
    const int i = s.read_uint();
    s.skip_blanks();
    const int j = s.read_uint();
    s.skip_blanks();
    s.expect("g");
    const int k = s.read_uint();
    if (i < 1 || j > n || i >= j)
      throw Error(Err::ParseError, "line " + std::to_string(line) + ", col " +
                                       std::to_string(col) + ": edge endpoints must satisfy 1 <= i < j <= n");
    if (k > 3) s.fail("color must be g0..g3");
    if (c.at(i, j) != 4)
      throw Error(Err::DuplicateEdge, "line " + std::to_string(line) + ": edge {" +
                                          std::to_string(i) + "," + std::to_string(j) +
                                          "} listed twice");
    c.set(i, j, static_cast<std::uint8_t>(k));
    s.expect_eol();
  }
  s.expect_eof();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (c.at(i, j) == 4)
        throw Error(Err::MissingEdge,
                    "edge {" + std::to_string(i) + "," + std::to_string(j) + "} missing");
  return c;
}

void print_coloring(std::ostream& out, const EdgeColoring& c) {
  out << "COLORING n=" << c.n << "\n";
  for (int i = 1; i <= c.n; ++i)
    for (int j = i + 1; j <= c.n; ++j)
      out << i << ' ' << j << " g" << int(c.at(i, j)) << "\n";
}

// ----- composition trees -----

namespace {

int parse_tree_node(Scanner& s, CompositionTree& t, std::vector<int>& seen_vars) {
  s.skip_ws();
  if (s.eof()) s.fail("unexpected end of expression");
  if (s.peek() == 'x') {
    s.get();
    const int v = s.read_uint(3);
    if (v < 1) s.fail("variable index must be >= 1");
    seen_vars.push_back(v);
    return t.add_leaf(v);
  }
  if (s.peek() != '(') s.fail("expected '(' or a variable");
  s.get();
  s.skip_ws();
  std::array<Elem, 16> table{};
  if (s.peek() == 'g') {
    s.get();
    const int k = s.read_uint(2);
    if (k > 3) s.fail("no such Gamma operation");
    table = gamma_catalog()[k].table;
  } else if (s.peek() == 't') {
    s.get();
    s.expect(":");
    for (int i = 0; i < 16; ++i) {
      if (s.eof() || s.peek() < '0' || s.peek() > '3') s.fail("expected 16 digits 0..3 after t:");
      table[i] = static_cast<Elem>(s.get() - '0');
    }
    for (int r = 0; r < 4; ++r) {
      unsigned row = 0, col = 0;
      for (int x = 0; x < 4; ++x) {
        row |= 1u << table[4 * r + x];
        col |= 1u << table[4 * x + r];
      }
      if (row != 0xF || col != 0xF)
        throw Error(Err::LatinViolation, "inline table is not a latin square");
    }
  } else {
    s.fail("expected an operation g<k> or t:<table>");
  }
  const int l = parse_tree_node(s, t, seen_vars);
  const int r = parse_tree_node(s, t, seen_vars);
  s.skip_ws();
  if (s.eof() || s.peek() != ')') s.fail("expected ')'");
  s.get();
  return t.add_node(table, l, r);
}

void print_tree_node(std::ostream& out, const CompositionTree& t, int id) {
  const auto& nd = t.nodes[id];
  if (nd.var >= 1) {
    out << 'x' << nd.var;
    return;
  }
  out << '(';
  const int gid = gamma_id_of_table(nd.table);
  if (gid >= 0) {
    out << 'g' << gid;
  } else {
    out << "t:";
    for (Elem e : nd.table) out << char('0' + e);
  }
  out << ' ';
  print_tree_node(out, t, nd.left);
  out << ' ';
  print_tree_node(out, t, nd.right);
  out << ')';
}

}  // namespace

CompositionTree parse_tree(const std::string& text) {
  Scanner s(text);
  CompositionTree t;
  std::vector<int> vars;
  t.root = parse_tree_node(s, t, vars);
  s.expect_eof();
  const int n = static_cast<int>(vars.size());
  std::vector<bool> seen(n + 1, false);
  for (int v : vars) {
    if (v > n || seen[v])
      throw Error(Err::ParseError, "tree variables must be x1..xn, each exactly once");
    seen[v] = true;
  }
  if (n < 2) throw Error(Err::ParseError, "a tree needs at least one binary node");
  t.arity = n;
  return t;
}

std::string print_tree(const CompositionTree& t) {
  std::ostringstream os;
  print_tree_node(os, t, t.root);
  return os.str();
}

Isotopy parse_isotopy(std::istream& in) {
  Scanner s(in);
  const int n = parse_header(s, "ISOTOPY", false);
  if (n < 1 || n > 64) s.fail("arity out of supported range 1..64");
  Isotopy t = Isotopy::identity(n);
  for (int i = 0; i <= n; ++i) {
    unsigned seen = 0;
    for (int k = 0; k < 4; ++k) {
      s.skip_ws();
      if (s.eof() || s.peek() < '0' || s.peek() > '3') s.fail("expected a digit 0..3");
      const Elem v = static_cast<Elem>(s.get() - '0');
      if (seen & (1u << v)) s.fail("permutation repeats a value");
      seen |= 1u << v;
      t.tau[i].to[k] = v;
    }
  }
  s.expect_eof();
  return t;
}

void print_isotopy(std::ostream& out, const Isotopy& t) {
  out << "ISOTOPY n=" << t.arity() << "\n";
  for (const Perm& p : t.tau) {
    for (int k = 0; k < 4; ++k) out << (k ? " " : "") << int(p.to[k]);
    out << "\n";
  }
}

ParsedValue parse_any(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
  const char c = i < text.size() ? text[i] : '\0';
  std::istringstream is(text);
  switch (c) {
    case 'Q': return parse_qg(is);
    case 'B': return parse_bf(is);
    case 'C': return parse_coloring(is);
    case 'I': return parse_isotopy(is);
    case '(': case 'x': return parse_tree(text);
    default: throw Error(Err::ParseError, "unrecognized format (expected QG, BF, COLORING, ISOTOPY or a tree)");
  }
}

}  // namespace qg
