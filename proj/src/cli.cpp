#include "cyclat/cli.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclat/density.hpp"
#include "cyclat/error.hpp"
#include "cyclat/report.hpp"
#include "cyclat/solver.hpp"
#include "cyclat/verify.hpp"

namespace cyclat {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Comma-separated reals. Errors name the 1-based token index and the
// character offset where the token starts.
RealVector parse_vector(const std::string& text) {
  RealVector values;
  std::size_t start = 0;
  std::size_t index = 1;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::size_t lo = start, hi = end;
    while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
    const std::string token = text.substr(lo, hi - lo);
    double v = 0.0;
    const char* first = text.data() + lo;
    const char* last = text.data() + hi;
    if (first < last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (token.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
      throw UsageError("--u: cannot parse token " + std::to_string(index) + " '" + token + "' at character " +
                       std::to_string(lo + 1));
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
    ++index;
  }
  if (values.size() < 2) throw UsageError("--u: need at least 2 entries, got " + std::to_string(values.size()));
  return values;
}

int write_output(const std::string& data, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << data;
    out.flush();
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  file << data;
  if (!file) {
    err << "error: cannot write " << path << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

std::string table_to_json(const std::vector<TableRow>& rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["method"] = r.method;
    row["delta_ours"] = r.delta_ours;
    row["delta_Dn"] = r.delta_Dn;
    row["delta_An"] = r.delta_An;
    row["best_known"] = r.best_known ? nlohmann::ordered_json(*r.best_known) : nlohmann::ordered_json(nullptr);
    doc.push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

void require_json(const std::string& format, const char* command) {
  if (format != "json") throw UsageError(std::string(command) + " emits JSON only; csv is available for table");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circulant cyclic lattices: solve, analyze, tabulate and self-check"};
  app.name("cyclat");
  app.require_subcommand(1);

  std::size_t n = 0;
  std::size_t r0 = 0;
  std::string variant = "a2eq4b";
  double epsilon = SolverSettings{}.epsilon;
  std::uint64_t seed = 0;
  std::size_t max_starts = SolverSettings{}.max_starts;
  bool allow_singular = false;
  std::string u_literal;
  std::size_t n_max = 35;
  std::string format;
  std::string output_path;
  bool quick = false;
  bool tamper = false;
  std::uint64_t verify_seed = VerifyOptions{}.seed;

  auto* solve_cmd = app.add_subcommand("solve", "Solve the orthogonality system and report the lattice");
  solve_cmd->add_option("--n", n, "Dimension")->required()->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  auto* r0_opt = solve_cmd->add_option("--r0", r0, "Distinguished offset (default: 2^alpha, or n/2 for half variants)")
                     ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--variant", variant, "a2eq4b | half-minus-2b | half-6b")
      ->check(CLI::IsMember({"a2eq4b", "half-minus-2b", "half-6b"}));
  solve_cmd->add_option("--epsilon", epsilon, "Convergence threshold on the squared residual")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", seed, "Seed of the start-vector generator");
  solve_cmd->add_option("--max-starts", max_starts, "Number of random starts")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--allow-singular", allow_singular, "Accept a2eq4b systems whose lattices are singular");
  solve_cmd->add_option("--format", format, "json")->check(CLI::IsMember({"json", "csv"}));
  solve_cmd->add_option("--output-path", output_path, "Write the document here instead of stdout");

  auto* analyze_cmd = app.add_subcommand("analyze", "Report on the lattice spanned by a given vector");
  analyze_cmd->add_option("--u", u_literal, "Comma-separated entries of u")->required();
  analyze_cmd->add_option("--format", format, "json")->check(CLI::IsMember({"json", "csv"}));
  analyze_cmd->add_option("--output-path", output_path, "Write the document here instead of stdout");

  auto* table_cmd = app.add_subcommand("table", "Center densities against D_n, A_n and best known");
  table_cmd->add_option("--n-max", n_max, "Largest dimension (2..64)")->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  table_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"json", "csv"}));
  table_cmd->add_option("--output-path", output_path, "Write the table here instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  verify_cmd->add_flag("--quick", quick, "Skip enumeration suites with n > 8");
  verify_cmd->add_flag("--tamper", tamper, "Negative control: corrupt one pair sum in the norm expansion check");
  verify_cmd->add_option("--seed", verify_seed, "Seed of the property generators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitInvalidInput;
  }

  try {
    if (solve_cmd->parsed()) {
      if (format.empty()) format = "json";
      require_json(format, "solve");
      const Variant v = parse_variant(variant);
      if (r0_opt->count() == 0) r0 = v == Variant::A2Eq4B ? r0_optimal(n) : n / 2;
      SolverSettings settings;
      settings.epsilon = epsilon;
      settings.rng_seed = seed;
      settings.max_starts = max_starts;
      settings.allow_singular = allow_singular;
      const SystemSpec spec(n, r0, v, settings);
      const SolveResult result = solve(spec);
      const LatticeReport report = report_for_solution(spec, result);
      const int status = write_output(report_to_json(report), output_path, out, err);
      if (status != kExitOk) return status;
      if (!result.converged) {
        err << "solver did not converge after " << result.starts_used << " starts (best residual "
            << result.residual << ")\n";
        return kExitNotConverged;
      }
      return kExitOk;
    }
    if (analyze_cmd->parsed()) {
      if (format.empty()) format = "json";
      require_json(format, "analyze");
      const LatticeReport report = analyze_vector(GeneratorVector(parse_vector(u_literal)));
      return write_output(report_to_json(report), output_path, out, err);
    }
    if (table_cmd->parsed()) {
      if (format.empty()) format = "csv";
      const auto rows = density_table(n_max);
      return write_output(format == "csv" ? table_to_csv(rows) : table_to_json(rows), output_path, out, err);
    }
    if (verify_cmd->parsed()) {
      VerifyOptions options;
      options.quick = quick;
      options.tamper = tamper;
      options.seed = verify_seed;
      const VerifySummary summary = run_verify(options, &out);
      out.flush();
      if (const PropertyOutcome* f = summary.first_failure()) {
        err << "first counterexample (" << f->name << "): " << f->detail << "\n";
        return kExitVerifyFailed;
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace cyclat
