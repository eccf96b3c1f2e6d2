#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "oracles.hpp"

using testutil::CliResult;
using testutil::run_cli;
using testutil::write_temp;

static std::string binary() {
  const char* p = std::getenv("QLIN_BIN");
  REQUIRE(p != nullptr);
  return p;
}

static std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

TEST_CASE("characteristic polynomial of the doubling map, both routes") {
  std::string bin = binary();
  std::string inst = write_temp("p=2 e=1 m=1 t=0|1 l=5", "pow2");
  CliResult fast = run_cli(bin, "charpoly --instance " + inst);
  REQUIRE(fast.code == 0);
  REQUIRE(fast.out == "1;0;0;0;0;1\n");
  CliResult base =
      run_cli(bin, "charpoly --instance " + inst + " --mode baseline");
  REQUIRE(base.code == 0);
  REQUIRE(base.out == fast.out);
  // the instance can arrive on standard input as well
  CliResult piped = run_cli(bin, "charpoly --instance -",
                            "p=2 e=1 m=1 t=0|1 l=5");
  REQUIRE(piped.code == 0);
  REQUIRE(piped.out == fast.out);
}

TEST_CASE("comments and line breaks in instances are accepted") {
  std::string bin = binary();
  std::string inst = write_temp(
      "# the doubling map\np=2 e=1\nm=1   # trailing note\nt=0|1\nl=5\n",
      "multiline");
  CliResult r = run_cli(bin, "charpoly --instance " + inst);
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "1;0;0;0;0;1\n");
}

TEST_CASE("fast and baseline modes agree on a mixed instance") {
  std::string bin = binary();
  std::string inst =
      write_temp("p=3 e=1 m=2 t=1,2|0,1|2,2 l=10", "mixed");
  CliResult fast = run_cli(bin, "charpoly --instance " + inst);
  CliResult base =
      run_cli(bin, "charpoly --instance " + inst + " --mode baseline");
  REQUIRE(fast.code == 0);
  REQUIRE(base.code == 0);
  REQUIRE(fast.out == base.out);
  REQUIRE_FALSE(fast.out.empty());
  // degree 20 polynomial: 21 coefficients
  REQUIRE(split(split(fast.out, '\n')[0], ';').size() == 21);
  // parallel evaluation changes nothing observable
  CliResult par = run_cli(
      bin, "charpoly --instance " + inst + " --parallel --threads 2");
  REQUIRE(par.code == 0);
  REQUIRE(par.out == fast.out);
}

TEST_CASE("repeated invocations are byte-identical") {
  std::string bin = binary();
  std::string inst = write_temp("p=5 e=1 m=1 t=3|2|1 l=11", "det");
  CliResult a = run_cli(bin, "charpoly --instance " + inst);
  CliResult b = run_cli(bin, "charpoly --instance " + inst);
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);
  CliResult ra = run_cli(bin, "recurrence --instance " + inst);
  CliResult rb = run_cli(bin, "recurrence --instance " + inst);
  REQUIRE(ra.code == 0);
  REQUIRE(ra.out == rb.out);
}

TEST_CASE("the reference relation is printed exactly") {
  std::string bin = binary();
  std::string inst = write_temp("p=7 e=1 m=2 t=1|1|1|1", "ref");
  CliResult r = run_cli(bin, "recurrence --instance " + inst);
  REQUIRE(r.code == 0);
  REQUIRE(r.out ==
          "order=8\n"
          "c0=6;1;0;0;0;0;0;1;6\n"
          "c1=0;0;1;1;1;1;1;1;1\n"
          "c2=4;4;6;1;3;5;0;5\n"
          "c3=0;0;6;4;2;2\n"
          "c4=1;3;2;1;1;6;6\n"
          "c5=0;0;6;2\n"
          "c6=4;6;6;5\n"
          "c7=0;0;1\n");
}

TEST_CASE("malformed inputs exit with the input-error code") {
  std::string bin = binary();
  auto expect2 = [&](const std::string& content, const std::string& tag) {
    std::string inst = write_temp(content, tag);
    CliResult r = run_cli(bin, "charpoly --instance " + inst);
    REQUIRE(r.code == 2);
  };
  expect2("p=2 e=1 m=1 l=5", "missing_t");
  expect2("p=2 e=1 m=1 t=0|1", "missing_l");
  expect2("p=4 e=1 m=1 t=0|1 l=5", "composite_p");
  expect2("p=2 e=1 m=1 t=0|1 l=0", "zero_l");
  expect2("p=2 e=1 m=1 t=1 l=5", "single_t");
  expect2("p=2 e=1 m=1 t=0| l=5", "empty_t");
  expect2("p=2 e=1 m=1 t=0|0 l=5", "zero_lead");
  expect2("p=2 zz=1 m=1 t=0|1 l=5", "bad_key");
  expect2("p=2 p=2 m=1 t=0|1 l=5", "dup_key");
  expect2("p=2 e=1 m=1 t=0|9 l=5", "digit_range");

  CliResult nofile = run_cli(bin, "charpoly --instance /nonexistent/f.txt");
  REQUIRE(nofile.code == 2);
}

TEST_CASE("command-line misuse exits with the input-error code") {
  std::string bin = binary();
  REQUIRE(run_cli(bin, "charpoly --no-such-flag").code == 2);
  REQUIRE(run_cli(bin, "nosuchcommand").code == 2);
  REQUIRE(run_cli(bin, "").code == 2);
  std::string inst = write_temp("p=2 e=1 m=1 t=0|1 l=5", "mode");
  REQUIRE(run_cli(bin, "charpoly --instance " + inst + " --mode slow").code ==
          2);
  REQUIRE(run_cli(bin, "--help").code == 0);
}

TEST_CASE("the embedded suite passes and fault injection is detected") {
  std::string bin = binary();
  CliResult ok = run_cli(bin, "selftest");
  REQUIRE(ok.code == 0);
  REQUIRE(ok.out.find("selftest ok") != std::string::npos);
  REQUIRE(ok.out.find("FAIL") == std::string::npos);
  CliResult bad = run_cli(bin, "selftest --inject-fault");
  REQUIRE(bad.code == 3);
  REQUIRE(bad.out.find("falsification detected as intended") !=
          std::string::npos);
}

TEST_CASE("benchmark output is well-formed CSV") {
  std::string bin = binary();
  std::string csv_path = write_temp("", "csv_out");
  CliResult r = run_cli(bin,
                        "bench --l 8,16 --reps 1 --time-cap-ms 4000 --out " +
                            csv_path);
  REQUIRE(r.code == 0);

  std::ifstream in(csv_path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  REQUIRE(text.find('\r') == std::string::npos);
  REQUIRE(!text.empty());
  REQUIRE(text.back() == '\n');

  std::vector<std::string> lines = split(text, '\n');
  REQUIRE(lines.back().empty());  // file ends with one newline
  lines.pop_back();
  REQUIRE(lines.size() == 5);
  REQUIRE(lines[0] == "p,e,m,r,l,n,algo,order,s,wall_ns");
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> f = split(lines[i], ',');
    REQUIRE(f.size() == 10);
    REQUIRE(f[0] == "2");
    REQUIRE(f[1] == "1");
    REQUIRE(f[2] == "1");
    REQUIRE(f[3] == "2");
    REQUIRE(f[4] == f[5]);  // n = m * l with m = 1
    bool is_fast = f[6] == "fast";
    bool is_base = f[6] == "baseline";
    REQUIRE((is_fast || is_base));
    if (is_fast) {
      REQUIRE(std::stoull(f[7]) <= 4);  // order within 2^r
      REQUIRE(std::stoull(f[8]) >= 1);
    }
    if (f[9] != "timeout") REQUIRE(std::stoull(f[9]) > 0);
  }

  // stdout sink and explicit coefficients
  CliResult out2 = run_cli(bin, "bench --l 4 --reps 1 --t 1|1 --out -");
  REQUIRE(out2.code == 0);
  std::vector<std::string> l2 = split(out2.out, '\n');
  REQUIRE(l2[0] == "p,e,m,r,l,n,algo,order,s,wall_ns");
  REQUIRE(split(l2[1], ',')[3] == "1");  // r derived from the coefficients
}
