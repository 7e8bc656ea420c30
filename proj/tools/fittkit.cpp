// fittkit: run a problem file or a named demo and print a canonical report.
//
//   fittkit --input problem.fk [--format machine]
//   fittkit demo delta-g S3 3
//   fittkit demo hereditary --emit     (print the demo's problem file instead)

#include <fittkit/problem.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fitting ideals and Fitting invariants over commutative rings and orders"};
  std::string input, command, format;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_size;
  std::optional<long> coeff_bound;
  bool emit = false;
  std::vector<std::string> positional;
  app.add_option("--input", input, "problem file");
  app.add_option("--command", command, "override the problem's command");
  app.add_option("--seed", seed, "sampler seed");
  app.add_option("--max-matrix-size", max_size, "largest sampled matrix size");
  app.add_option("--coeff-bound", coeff_bound, "sampled coefficients lie in [-bound, bound]");
  app.add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--emit", emit, "print the problem file instead of running it");
  app.add_option("args", positional, "demo <name> [arguments...]");
  CLI11_PARSE(app, argc, argv);

  using namespace fittkit;
  Problem problem;
  try {
    if (!input.empty()) {
      if (!positional.empty()) throw std::runtime_error("--input and positional arguments are exclusive");
      problem = parse_problem(read_file(input));
    } else if (!positional.empty() && positional[0] == "demo") {
      problem = demo_problem({positional.begin() + 1, positional.end()});
    } else {
      std::cerr << app.help();
      return 1;
    }
    if (!command.empty()) {
      // re-validate by round-tripping the edited problem
      problem.command = command;
      problem = parse_problem(print_problem(problem));
    }
  } catch (const ParseError& e) {
    std::cerr << "fittkit: " << (input.empty() ? "" : input + ": ") << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fittkit: " << e.what() << '\n';
    return 1;
  }
  if (seed) problem.sampler.seed = *seed;
  if (max_size) problem.sampler.max_size = *max_size;
  if (coeff_bound) {
    if (*coeff_bound < 0) {
      std::cerr << "fittkit: --coeff-bound must be non-negative\n";
      return 1;
    }
    problem.sampler.coeff_bound = *coeff_bound;
  }
  if (!format.empty()) problem.format = format == "machine" ? OutputFormat::machine : OutputFormat::text;

  if (emit) {
    std::cout << print_problem(problem);
    return 0;
  }
  ExecutionResult result = execute(problem);
  std::cout << result.output;
  return result.exit_code;
}
