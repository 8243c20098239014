#include "qg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qg/analysis.hpp"
#include "qg/coloring.hpp"
#include "qg/core.hpp"
#include "qg/enumeration.hpp"
#include "qg/formats.hpp"
#include "qg/rng.hpp"
#include "qg/semilinear.hpp"

namespace qg::cli {
namespace {

using nlohmann::ordered_json;

int exit_code(Err kind) {
  switch (kind) {
    case Err::LatinViolation:
    case Err::ValueOutOfRange:
    case Err::NotNormalized:
    case Err::NotStandardlySemilinear:
    case Err::NoInnerEdge:
    case Err::HypothesisFailed:
      return 1;
    default:
      return 2;
  }
}

std::string slurp(std::istream& s) {
  std::ostringstream buf;
  buf << s.rdbuf();
  return buf.str();
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return slurp(in);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Err::Usage, "cannot open " + path);
  return slurp(f);
}

Quasigroup load_qg(const std::string& path, std::istream& in) {
  std::istringstream is(read_input(path, in));
  Quasigroup raw = parse_qg(is);
  return Quasigroup::validated(raw.arity(), raw.values());
}

std::string digit_string(const Quasigroup& q) {
  std::string s(q.size(), '0');
  for (std::size_t i = 0; i < q.size(); ++i) s[i] = char('0' + q.at(i));
  return s;
}

// ----- validate -----

int cmd_validate(const std::string& file, std::istream& in, std::ostream& out) {
  Quasigroup q = load_qg(file, in);
  out << "ok n=" << q.arity() << "\n";
  return 0;
}

// ----- analyze -----

struct AnalyzeFlags {
  std::string file;
  bool json = false;
  bool with_kappa = false;
};

std::string subset_text(const std::vector<std::vector<int>>& subsets) {
  if (subsets.empty()) return "-";
  std::string s;
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    if (k) s += ',';
    s += '{';
    for (std::size_t i = 0; i < subsets[k].size(); ++i) {
      if (i) s += ',';
      s += std::to_string(subsets[k][i]);
    }
    s += '}';
  }
  return s;
}

ordered_json lambda_json(const BoolFn& lam) {
  ordered_json m = ordered_json::object();
  for (std::size_t k = 0; k < lam.bits.size(); ++k) {
    // Key "z1z2..zn" iterated in lexicographic order; the bit array itself
    // stores z1 fastest.
    std::string key(lam.n, '0');
    std::size_t idx = 0;
    for (int j = 0; j < lam.n; ++j) {
      int bit = int(k >> (lam.n - 1 - j)) & 1;
      key[j] = char('0' + bit);
      idx |= std::size_t(bit) << j;
    }
    m[key] = int(lam.bits[idx]);
  }
  return m;
}

std::string bits_text(const BoolFn& lam) {
  std::string s(lam.bits.size(), '0');
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = char('0' + lam.bits[i]);
  return s;
}

int cmd_analyze(const AnalyzeFlags& fl, std::istream& in, std::ostream& out) {
  std::istringstream is(read_input(fl.file, in));
  Quasigroup raw = parse_qg(is);
  const int n = raw.arity();

  Quasigroup q;
  try {
    q = Quasigroup::validated(n, raw.values());
  } catch (const Error& e) {
    if (e.kind != Err::LatinViolation && e.kind != Err::ValueOutOfRange) throw;
    if (fl.json) {
      ordered_json j;
      j["n"] = n;
      j["valid"] = false;
      j["error"] = e.what();
      out << j.dump(2) << "\n";
    } else {
      out << "n=" << n << "\nvalid=0\nerror=" << e.what() << "\n";
    }
    return 1;
  }

  const bool norm = is_normalized(q);
  const auto splits = reducible_subsets(q);
  const bool red = !splits.empty();
  const bool ssl = is_standardly_semilinear(q);
  const auto wit = is_semilinear(q);
  std::optional<BoolFn> lam;
  if (ssl) lam = extract_lambda(q);
  std::optional<int> kap;
  if (fl.with_kappa && n >= 3) kap = kappa(q);

  if (fl.json) {
    ordered_json j;
    j["n"] = n;
    j["valid"] = true;
    j["normalized"] = norm;
    j["reducible"] = red;
    j["splits"] = splits;
    j["standardly_semilinear"] = ssl;
    j["semilinear"] = wit.has_value();
    if (wit) {
      ordered_json w;
      w["partitions"] = wit->partition_names();
      w["complement"] = wit->complement ? 1 : 0;
      j["witness"] = w;
    } else {
      j["witness"] = nullptr;
    }
    j["lambda"] = lam ? lambda_json(*lam) : ordered_json(nullptr);
    j["lambda_bits"] = lam ? ordered_json(bits_text(*lam)) : ordered_json(nullptr);
    if (fl.with_kappa) j["kappa"] = kap ? ordered_json(*kap) : ordered_json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << "n=" << n << "\n";
    out << "valid=1\n";
    out << "normalized=" << int(norm) << "\n";
    out << "reducible=" << int(red) << "\n";
    out << "splits=" << subset_text(splits) << "\n";
    out << "standardly_semilinear=" << int(ssl) << "\n";
    out << "semilinear=" << int(wit.has_value()) << "\n";
    if (wit)
      out << "witness=" << wit->partition_names() << "/" << int(wit->complement) << "\n";
    else
      out << "witness=-\n";
    out << "lambda_bits=" << (lam ? bits_text(*lam) : std::string("-")) << "\n";
    if (fl.with_kappa) {
      if (kap)
        out << "kappa=" << *kap << "\n";
      else
        out << "kappa=-\n";
    }
  }
  return 0;
}

// ----- construct -----

int cmd_construct_lambda(const std::string& bits_arg, int n, std::ostream& out) {
  if (n < 1 || n > 12)
    throw Error(Err::UnsupportedArity, "construct lambda supports 1 <= n <= 12");
  for (char c : bits_arg)
    if (c != '0' && c != '1')
      throw Error(Err::ParseError, "lambda bits must be characters 0/1");
  const std::size_t want = std::size_t{1} << n;
  std::string bits = bits_arg;
  if (bits.size() == 1) bits.assign(want, bits[0]);  // constant lambda shorthand
  if (bits.size() != want)
    throw Error(Err::LengthMismatch, "expected " + std::to_string(want) +
                                         " lambda bits, got " + std::to_string(bits.size()));
  BoolFn f;
  f.n = n;
  f.bits.reserve(want);
  for (char c : bits) f.bits.push_back(c == '1');
  print_qg(out, from_lambda(f));
  return 0;
}

int cmd_construct_tree(const std::string& expr, std::istream& in, std::ostream& out) {
  const std::string text = expr == "-" ? slurp(in) : expr;
  CompositionTree t = parse_tree(text);
  print_qg(out, t.evaluate());
  return 0;
}

// ----- decompose / coloring / reconstruct -----

int cmd_decompose(const std::string& file, std::istream& in, std::ostream& out,
                  std::ostream& err) {
  Quasigroup q = load_qg(file, in);
  auto t = decompose_tree(q);
  if (!t) {
    err << "error: not completely reducible\n";
    return 1;
  }
  out << print_tree(*t) << "\n";
  return 0;
}

int cmd_coloring(const std::string& file, std::istream& in, std::ostream& out) {
  Quasigroup q = load_qg(file, in);
  if (q.arity() < 2) throw Error(Err::UnsupportedArity, "coloring requires n >= 2");
  print_coloring(out, compute_coloring(q));
  return 0;
}

int cmd_reconstruct(const std::string& file, std::istream& in, std::ostream& out,
                    std::ostream& err) {
  std::istringstream is(read_input(file, in));
  EdgeColoring c = parse_coloring(is);
  const auto rep = check_conditions(c);
  if (!rep.ok()) {
    for (const auto& t : rep.a_violations)
      err << "error: three colors on triangle {" << t[0] << "," << t[1] << ","
          << t[2] << "}\n";
    for (const auto& t : rep.b_violations)
      err << "error: two-colored K4 without monochromatic triangle {" << t[0]
          << "," << t[1] << "," << t[2] << "," << t[3] << "}\n";
    return 1;
  }
  print_qg(out, reconstruct(c));
  return 0;
}

// ----- enumerate -----

struct EnumFlags {
  int n = 0;
  bool classify = false;
  bool full = false;
  int jobs = 1;
  std::string shard;
};

std::string record_line(const Quasigroup& q, bool with_class, bool full) {
  std::string line = digit_string(q);
  if (with_class) {
    ClassifyOptions opts;
    opts.full = full;
    const auto r = classify(q, opts);
    line += " reducible=";
    line += r.reducible ? '1' : '0';
    line += " standardly_semilinear=";
    line += r.standardly_semilinear ? '1' : '0';
    line += " semilinear=";
    line += r.semilinear ? (*r.semilinear ? '1' : '0') : '?';
  }
  line += '\n';
  return line;
}

std::pair<int, int> parse_shard(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
    throw Error(Err::Usage, "--shard expects k/m");
  int k = 0, m = 0;
  try {
    std::size_t p1 = 0, p2 = 0;
    k = std::stoi(s.substr(0, slash), &p1);
    m = std::stoi(s.substr(slash + 1), &p2);
    if (p1 != slash || p2 != s.size() - slash - 1) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw Error(Err::Usage, "--shard expects k/m with integers");
  }
  return {k, m};
}

int cmd_enumerate(const EnumFlags& fl, std::ostream& out) {
  if (fl.n == 4) {
    if (fl.shard.empty())
      throw Error(Err::Usage, "enumerate --n 4 requires --shard k/m");
    const auto [k, m] = parse_shard(fl.shard);
    enumerate_n4_shard(k, m, [&](const Quasigroup& q) {
      out << record_line(q, fl.classify, fl.full);
      return true;
    });
    return 0;
  }
  if (fl.n != 2 && fl.n != 3)
    throw Error(Err::UnsupportedArity, "enumerate supports n in {2,3,4}");
  if (!fl.shard.empty()) throw Error(Err::Usage, "--shard applies to --n 4 only");

  const int jobs = std::clamp(fl.jobs, 1, 576);
  if (fl.n == 2 || jobs == 1) {
    enumerate_all(fl.n, [&](const Quasigroup& q) {
      out << record_line(q, fl.classify, fl.full);
      return true;
    });
    return 0;
  }

  // Deterministic parallel mode: contiguous first-layer ranges, buffers
  // concatenated in range order so the byte stream matches --jobs 1.
  std::vector<std::string> buf(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    workers.emplace_back([&, t] {
      const int lo = 576 * t / jobs, hi = 576 * (t + 1) / jobs;
      enumerate_n3_layered(lo, hi, [&](const Quasigroup& q) {
        buf[t] += record_line(q, fl.classify, fl.full);
        return true;
      });
    });
  for (auto& w : workers) w.join();
  for (const auto& b : buf) out << b;
  return 0;
}

// ----- verify-theorem -----

int cmd_verify_theorem(int n, int jobs, std::ostream& out) {
  const TheoremReport r = verify_theorem(n, jobs);
  const auto formula = count_semilinear(n).convert_to<std::uint64_t>();
  ordered_json j;
  j["n"] = r.n;
  j["total"] = r.total;
  j["reducible_only"] = r.reducible_only;
  j["semilinear_only"] = r.semilinear_only;
  j["both"] = r.both;
  j["neither"] = r.neither;
  j["semilinear_total"] = r.semilinear_total;
  j["formula_total"] = formula;
  out << j.dump(2) << "\n";
  return (r.neither == 0 && r.semilinear_total == formula) ? 0 : 1;
}

// ----- random -----

int cmd_random(const std::string& kind, int n, std::uint64_t seed, std::ostream& out) {
  Rng rng(seed);
  if (kind == "tree") {
    out << print_tree(random_tree(n, rng)) << "\n";
  } else if (kind == "semilinear") {
    print_qg(out, random_semilinear(n, rng));
  } else {
    print_isotopy(out, random_isotopy(n, rng));
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"order-4 n-ary quasigroup toolkit"};
  app.name("qg");
  app.require_subcommand(1);

  std::string v_file;
  auto* validate =
      app.add_subcommand("validate", "check a QG file for the latin property");
  validate->add_option("file", v_file, "QG file, - for stdin")->required();

  AnalyzeFlags an;
  auto* analyze =
      app.add_subcommand("analyze", "reducibility and semilinearity report");
  analyze->add_option("file", an.file, "QG file, - for stdin")->required();
  analyze->add_flag("--json", an.json, "emit a JSON report");
  analyze->add_flag("--kappa", an.with_kappa, "include the irreducible retract bound");

  auto* construct = app.add_subcommand("construct", "build quasigroup files");
  construct->require_subcommand(1);
  std::string cl_bits;
  int cl_n = 0;
  auto* c_lambda = construct->add_subcommand(
      "lambda", "standardly semilinear quasigroup from lambda bits");
  c_lambda->add_option("bits", cl_bits, "2^n bits, z1 fastest; a single bit repeats")
      ->required();
  c_lambda->add_option("--n", cl_n, "arity")->required();
  std::string ct_expr;
  auto* c_tree =
      construct->add_subcommand("tree", "quasigroup from a composition tree");
  c_tree->add_option("expr", ct_expr, "tree expression, - for stdin")->required();

  std::string d_file;
  auto* decompose =
      app.add_subcommand("decompose", "canonical complete decomposition");
  decompose->add_option("file", d_file, "QG file, - for stdin")->required();

  std::string col_file;
  auto* coloring =
      app.add_subcommand("coloring", "edge coloring of a normalized quasigroup");
  coloring->add_option("file", col_file, "QG file, - for stdin")->required();

  std::string r_file;
  auto* reconstruct_cmd =
      app.add_subcommand("reconstruct", "quasigroup from an edge coloring");
  reconstruct_cmd->add_option("file", r_file, "COLORING file, - for stdin")
      ->required();

  EnumFlags en;
  auto* enumerate = app.add_subcommand("enumerate", "list all quasigroups of arity n");
  enumerate->add_option("--n", en.n, "arity, 2..4")->required();
  enumerate->add_flag("--classify", en.classify, "append classification fields");
  enumerate->add_flag("--full", en.full,
                      "decide semilinearity even for reducible entries");
  enumerate->add_option("--jobs", en.jobs, "worker threads for n=3");
  enumerate->add_option("--shard", en.shard, "k/m shard selector, n=4 only");

  int vt_n = 0, vt_jobs = 1;
  auto* verify = app.add_subcommand(
      "verify-theorem", "exhaustive reducible-or-semilinear dichotomy check");
  verify->add_option("--n", vt_n, "arity, 2 or 3")->required();
  verify->add_option("--jobs", vt_jobs, "worker threads");

  auto* random = app.add_subcommand("random", "seeded sample generators");
  random->require_subcommand(1);
  struct {
    int n = 0;
    std::uint64_t seed = 0;
  } rnd[3];
  const char* rnd_names[3] = {"tree", "semilinear", "isotopy"};
  const char* rnd_help[3] = {"random composition tree",
                             "random isotope of a standardly semilinear quasigroup",
                             "random isotopy"};
  CLI::App* rnd_cmd[3];
  for (int i = 0; i < 3; ++i) {
    rnd_cmd[i] = random->add_subcommand(rnd_names[i], rnd_help[i]);
    rnd_cmd[i]->add_option("--n", rnd[i].n, "arity")->required();
    rnd_cmd[i]->add_option("--seed", rnd[i].seed, "RNG seed")->required();
  }

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("qg");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_store.size());
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(v_file, in, out);
    if (*analyze) return cmd_analyze(an, in, out);
    if (*construct) {
      if (*c_lambda) return cmd_construct_lambda(cl_bits, cl_n, out);
      return cmd_construct_tree(ct_expr, in, out);
    }
    if (*decompose) return cmd_decompose(d_file, in, out, err);
    if (*coloring) return cmd_coloring(col_file, in, out);
    if (*reconstruct_cmd) return cmd_reconstruct(r_file, in, out, err);
    if (*enumerate) return cmd_enumerate(en, out);
    if (*verify) return cmd_verify_theorem(vt_n, vt_jobs, out);
    for (int i = 0; i < 3; ++i)
      if (*rnd_cmd[i]) return cmd_random(rnd_names[i], rnd[i].n, rnd[i].seed, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qg::cli
