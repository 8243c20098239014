#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qg/cli.hpp"

using namespace qg::testing;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args, const std::string& input = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  CliResult r;
  r.code = qg::cli::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const char* kXorSquare = "QG n=2 q=4\n0123 1032 2301 3210\n";

const char* kGoldenAnalyzeJson = R"({
  "n": 2,
  "valid": true,
  "normalized": false,
  "reducible": false,
  "splits": [],
  "standardly_semilinear": true,
  "semilinear": true,
  "witness": {
    "partitions": "AAA",
    "complement": 0
  },
  "lambda": {
    "00": 1,
    "01": 1,
    "10": 0,
    "11": 1
  },
  "lambda_bits": "1011"
}
)";

const char* kTheoremJsonN2 = R"({
  "n": 2,
  "total": 576,
  "reducible_only": 0,
  "semilinear_only": 576,
  "both": 0,
  "neither": 0,
  "semilinear_total": 576,
  "formula_total": 576
}
)";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("validate accepts, rejects and reports usage errors") {
  const auto ok = run_cli({"validate", "-"}, kGoldenSquare);
  CHECK(ok.code == 0);
  CHECK(ok.out == "ok n=2\n");
  CHECK(ok.err.empty());

  const auto latin = run_cli({"validate", "-"}, "QG n=2 q=4\n0132 1023 2301 3201\n");
  CHECK(latin.code == 1);
  CHECK(latin.out.empty());
  CHECK(latin.err.find("error:") == 0);

  const auto truncated = run_cli({"validate", "-"}, "QG n=2 q=4\n0132\n");
  CHECK(truncated.code == 2);

  const auto missing = run_cli({"validate", "/nonexistent/path.qg"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);
}

TEST_CASE("validate reads from a file path") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "qg_golden_square.qg").string();
  {
    std::ofstream f(path, std::ios::binary);
    f << kGoldenSquare;
  }
  const auto r = run_cli({"validate", path});
  std::filesystem::remove(path);
  CHECK(r.code == 0);
  CHECK(r.out == "ok n=2\n");
}

TEST_CASE("analyze golden JSON report") {
  const auto r = run_cli({"analyze", "-", "--json"}, kGoldenSquare);
  CHECK(r.code == 0);
  CHECK(r.out == kGoldenAnalyzeJson);
  CHECK(r.err.empty());
}

TEST_CASE("analyze text report") {
  const auto r = run_cli({"analyze", "-"}, kGoldenSquare);
  CHECK(r.code == 0);
  CHECK(r.out.find("n=2\nvalid=1\nnormalized=0\nreducible=0\n") == 0);
  CHECK(r.out.find("standardly_semilinear=1\n") != std::string::npos);
  CHECK(r.out.find("witness=AAA/0\n") != std::string::npos);
  CHECK(r.out.find("lambda_bits=1011\n") != std::string::npos);
  CHECK(r.out.find("kappa") == std::string::npos);
}

TEST_CASE("analyze kappa flag") {
  const auto square = run_cli({"analyze", "-", "--kappa"}, kGoldenSquare);
  CHECK(square.out.find("kappa=-\n") != std::string::npos);

  const auto cube = run_cli({"construct", "tree", "(g0 (g0 x1 x2) x3)"});
  REQUIRE(cube.code == 0);
  const auto r = run_cli({"analyze", "-", "--kappa"}, cube.out);
  CHECK(r.code == 0);
  CHECK(r.out.find("kappa=2\n") != std::string::npos);
  CHECK(r.out.find("splits={1,2},{1,3},{2,3}\n") != std::string::npos);

  const auto json = run_cli({"analyze", "-", "--json", "--kappa"}, kGoldenSquare);
  CHECK(json.out.find("\"kappa\": null") != std::string::npos);
}

TEST_CASE("analyze flags invalid squares with exit 1") {
  const auto r = run_cli({"analyze", "-", "--json"},
                         "QG n=2 q=4\n0132 1023 2301 3201\n");
  CHECK(r.code == 1);
  CHECK(r.out.find("\"valid\": false") != std::string::npos);

  const auto text = run_cli({"analyze", "-"}, "QG n=2 q=4\n0132 1023 2301 3201\n");
  CHECK(text.code == 1);
  CHECK(text.out.find("valid=0\n") != std::string::npos);
}

TEST_CASE("construct lambda goldens") {
  const auto xorsq = run_cli({"construct", "lambda", "1", "--n", "2"});
  CHECK(xorsq.code == 0);
  CHECK(xorsq.out == kXorSquare);

  const auto golden = run_cli({"construct", "lambda", "1011", "--n", "2"});
  CHECK(golden.code == 0);
  CHECK(golden.out == kGoldenSquare);

  CHECK(run_cli({"construct", "lambda", "10", "--n", "2"}).code == 2);
  CHECK(run_cli({"construct", "lambda", "10a1", "--n", "2"}).code == 2);
  CHECK(run_cli({"construct", "lambda", "1", "--n", "0"}).code == 2);
}

TEST_CASE("construct tree and stdin composition") {
  const auto direct = run_cli({"construct", "tree", "(g0 x1 x2)"});
  CHECK(direct.code == 0);
  CHECK(direct.out == kXorSquare);

  const auto piped = run_cli({"construct", "tree", "-"}, "(g0 x1 x2)\n");
  CHECK(piped.out == kXorSquare);

  const auto analyzed = run_cli({"analyze", "-", "--json"}, direct.out);
  CHECK(analyzed.code == 0);
  CHECK(analyzed.out.find("\"standardly_semilinear\": true") != std::string::npos);

  CHECK(run_cli({"construct", "tree", "(g0 x1 x1)"}).code == 2);
}

TEST_CASE("decompose emits the canonical tree") {
  const auto cube = run_cli({"construct", "tree", "(g1 (g2 x2 x3) x1)"});
  const auto r = run_cli({"decompose", "-"}, cube.out);
  CHECK(r.code == 0);
  // Canonical first split is the lexicographically least splitting subset.
  CHECK(r.out.substr(0, 1) == "(");
  CHECK(r.out.back() == '\n');
  const auto rebuilt = run_cli({"construct", "tree", r.out.substr(0, r.out.size() - 1)});
  CHECK(rebuilt.out == cube.out);

  const auto and3 = run_cli({"construct", "lambda", "00000001", "--n", "3"});
  const auto irr = run_cli({"decompose", "-"}, and3.out);
  CHECK(irr.code == 1);
  CHECK(irr.err.find("not completely reducible") != std::string::npos);
}

TEST_CASE("coloring and reconstruct invert each other") {
  const auto cube = run_cli({"construct", "tree", "(g1 (g0 x1 x2) x3)"});
  const auto col = run_cli({"coloring", "-"}, cube.out);
  CHECK(col.code == 0);
  CHECK(col.out == "COLORING n=3\n1 2 g0\n1 3 g1\n2 3 g1\n");

  const auto back = run_cli({"reconstruct", "-"}, col.out);
  CHECK(back.code == 0);
  CHECK(back.out == cube.out);

  const auto denorm = run_cli({"coloring", "-"}, kGoldenSquare);
  CHECK(denorm.code == 1);

  const auto bad = run_cli({"reconstruct", "-"},
                           "COLORING n=3\n1 2 g0\n1 3 g1\n2 3 g2\n");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("triangle") != std::string::npos);
}

TEST_CASE("enumerate n=2") {
  const auto r = run_cli({"enumerate", "--n", "2"});
  CHECK(r.code == 0);
  REQUIRE(!r.out.empty());
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 576);
  CHECK(r.out.substr(0, 17) == "0123103223013210\n");

  const auto c = run_cli({"enumerate", "--n", "2", "--classify"});
  CHECK(c.out.substr(0, 64) ==
        "0123103223013210 reducible=0 standardly_semilinear=1 semilinear=");
  CHECK(c.out.find("semilinear=?") == std::string::npos);  // n=2 always decided
}

TEST_CASE("enumerate n=3 bytes are independent of the job count") {
  const auto a = run_cli({"enumerate", "--n", "3"});
  const auto b = run_cli({"enumerate", "--n", "3", "--jobs", "5"});
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.substr(0, 16) == "0123103223013210");
}

TEST_CASE("enumerate usage errors and the sharded n=4 path") {
  CHECK(run_cli({"enumerate", "--n", "4"}).code == 2);
  CHECK(run_cli({"enumerate", "--n", "5"}).code == 2);
  CHECK(run_cli({"enumerate", "--n", "3", "--shard", "0/2"}).code == 2);
  CHECK(run_cli({"enumerate", "--n", "4", "--shard", "junk"}).code == 2);
  CHECK(run_cli({"enumerate", "--n", "4", "--shard", "3/2"}).code == 2);

  // A shard index beyond the base-cube count selects nothing.
  const auto empty = run_cli({"enumerate", "--n", "4", "--shard", "1073741823/1073741824"});
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());
}

TEST_CASE("verify-theorem golden report") {
  const auto r = run_cli({"verify-theorem", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == kTheoremJsonN2);

  const auto jobs = run_cli({"verify-theorem", "--n", "2", "--jobs", "5"});
  CHECK(jobs.out == r.out);

  CHECK(run_cli({"verify-theorem", "--n", "4"}).code == 2);
}

TEST_CASE("random subcommands are seeded and deterministic") {
  const auto t1 = run_cli({"random", "tree", "--n", "4", "--seed", "42"});
  const auto t2 = run_cli({"random", "tree", "--n", "4", "--seed", "42"});
  CHECK(t1.code == 0);
  CHECK(t1.out == t2.out);
  CHECK(t1.out.front() == '(');

  const auto s1 = run_cli({"random", "semilinear", "--n", "3", "--seed", "7"});
  CHECK(s1.code == 0);
  CHECK(s1.out.substr(0, 10) == "QG n=3 q=4");
  const auto validated = run_cli({"validate", "-"}, s1.out);
  CHECK(validated.code == 0);
  const auto analyzed = run_cli({"analyze", "-", "--json"}, s1.out);
  CHECK(analyzed.out.find("\"semilinear\": true") != std::string::npos);

  const auto i1 = run_cli({"random", "isotopy", "--n", "3", "--seed", "1"});
  CHECK(i1.code == 0);
  CHECK(i1.out.substr(0, 12) == "ISOTOPY n=3\n");

  CHECK(run_cli({"random", "tree", "--n", "4"}).code == 2);  // seed required
  CHECK(run_cli({"random", "tree", "--seed", "4"}).code == 2);
}

TEST_CASE("help and usage") {
  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("qg") != std::string::npos);

  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"analyze"}).code == 2);  // file argument required
}

TEST_SUITE_END();
