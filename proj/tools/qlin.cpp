// Command-line front end: charpoly, recurrence, bench, selftest.
// Exit codes: 0 ok, 2 input error, 3 internal falsification.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qlin/qlin.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw qlin::InvalidInstance("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<uint64_t> parse_uint_list(const std::string& text) {
  std::vector<uint64_t> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw qlin::ParseError(0, pos + 1, "bad list entry '" + tok + "'");
    out.push_back(std::stoull(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> split_bars(const std::string& text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t bar = text.find('|', pos);
    out.push_back(text.substr(
        pos, bar == std::string::npos ? std::string::npos : bar - pos));
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  return out;
}

int cmd_charpoly(const std::string& instance_path, const std::string& mode,
                 bool parallel, unsigned threads) {
  qlin::InstanceSpec spec = qlin::parse_instance(read_input(instance_path));
  if (!spec.l) throw qlin::InvalidInstance("instance is missing l");
  qlin::LinearizedPoly L = spec.make_map();
  qlin::Poly c = mode == "baseline"
                     ? qlin::charpoly_direct(L, *spec.l)
                     : qlin::fast_charpoly(L, *spec.l, parallel, threads);
  std::cout << qlin::poly_to_string(c) << "\n";
  return 0;
}

int cmd_recurrence(const std::string& instance_path) {
  qlin::InstanceSpec spec = qlin::parse_instance(read_input(instance_path));
  qlin::LinearizedPoly L = spec.make_map();
  qlin::PipelinePlan plan = qlin::make_plan(L);
  std::cout << "order=" << plan.rec.order() << "\n";
  for (size_t i = 0; i < plan.rec.coeffs.size(); ++i)
    std::cout << "c" << i << "=" << qlin::poly_to_string(plan.rec.coeffs[i])
              << "\n";
  return 0;
}

int cmd_bench(const qlin::BenchGrid& grid, const std::string& out_path) {
  if (out_path == "-") {
    qlin::run_bench(grid, std::cout);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) throw qlin::InvalidInstance("cannot open '" + out_path + "'");
  qlin::run_bench(grid, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact characteristic polynomials of linearized polynomials"};
  app.require_subcommand(1);

  std::string instance_path = "-";
  std::string mode = "fast";
  bool parallel = false;
  unsigned threads = 0;

  auto* charpoly = app.add_subcommand(
      "charpoly", "print the characteristic polynomial at index l");
  charpoly->add_option("--instance", instance_path,
                       "instance file, or - for stdin");
  charpoly->add_option("--mode", mode, "fast or baseline")
      ->check(CLI::IsMember({"fast", "baseline"}));
  charpoly->add_flag("--parallel", parallel, "evaluate points concurrently");
  charpoly->add_option("--threads", threads, "worker count, 0 = hardware");

  auto* recurrence = app.add_subcommand(
      "recurrence", "print the fitted recurrence for an instance");
  recurrence->add_option("--instance", instance_path,
                         "instance file, or - for stdin");

  qlin::BenchGrid grid;
  std::string ells_text = "128,256,512";
  std::string t_text;
  std::string out_path = "-";
  auto* bench = app.add_subcommand("bench", "time fast vs baseline, CSV out");
  bench->add_option("--p", grid.p, "characteristic");
  bench->add_option("--e", grid.e, "ground exponent, q = p^e");
  bench->add_option("--m", grid.m, "coefficient extension degree");
  bench->add_option("--r", grid.r, "map degree (ignored when --t given)");
  bench->add_option("--l", ells_text, "comma-separated indices");
  bench->add_option("--t", t_text, "explicit coefficients enc|enc|...");
  bench->add_option("--out", out_path, "CSV path, - for stdout");
  bench->add_option("--time-cap-ms", grid.time_cap_ms,
                    "baseline per-cell cap");
  bench->add_option("--reps", grid.reps, "timed repetitions per cell");
  bench->add_flag("--parallel", grid.parallel,
                  "evaluate points concurrently");
  bench->add_option("--threads", grid.threads, "worker count, 0 = hardware");

  bool inject_fault = false;
  auto* selftest = app.add_subcommand("selftest", "run the embedded suite");
  selftest->add_flag("--inject-fault", inject_fault,
                     "corrupt one fitted coefficient to prove detection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // command-line misuse is an input error
  }

  try {
    if (charpoly->parsed())
      return cmd_charpoly(instance_path, mode, parallel, threads);
    if (recurrence->parsed()) return cmd_recurrence(instance_path);
    if (bench->parsed()) {
      grid.ells = parse_uint_list(ells_text);
      if (!t_text.empty()) {
        grid.t_enc = split_bars(t_text);
        if (grid.t_enc.size() < 2)
          throw qlin::InvalidInstance("need coefficients t_0..t_r");
        grid.r = grid.t_enc.size() - 1;
      }
      return cmd_bench(grid, out_path);
    }
    return qlin::run_selftest(std::cout, inject_fault);
  } catch (const qlin::Falsification& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const qlin::NoRelation& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const qlin::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
