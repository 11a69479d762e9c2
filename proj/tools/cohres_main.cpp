#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohres/check.hpp"
#include "cohres/disk_quadrature.hpp"
#include "cohres/fock.hpp"
#include "cohres/gamma.hpp"
#include "cohres/resolution.hpp"
#include "cohres/study.hpp"
#include "cohres/version.hpp"

namespace {

using namespace cohres;

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + output);
  }
  out << text;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") {
    return OutputFormat::csv;
  }
  if (text == "json") {
    return OutputFormat::json;
  }
  throw std::invalid_argument("format must be csv or json");
}

std::vector<double> parse_radii_list(const std::string& text) {
  std::vector<double> radii;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t end = std::min(text.find(',', begin), text.size());
    const std::string item = text.substr(begin, end - begin);
    if (item.empty()) {
      throw std::invalid_argument("invalid radii list: '" + text + "'");
    }
    try {
      radii.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse radius '" + item + "'");
    }
    begin = end + 1;
    if (end == text.size()) {
      break;
    }
  }
  return radii;
}

std::string grid_text(const GridSpec& grid) {
  return std::to_string(grid.n_radial) + "x" + std::to_string(grid.n_angular);
}

int run_gamma_table(double radius_sq, std::size_t max_n, const std::string& format,
                    const std::string& output) {
  const GammaTable table = gamma_table(radius_sq, max_n);
  std::vector<double> residuals(max_n + 1);
  residuals[0] = table.I[0] - (1.0 - poisson_term(radius_sq, 0));
  for (std::size_t n = 1; n <= max_n; ++n) {
    residuals[n] = table.I[n] - (table.I[n - 1] - poisson_term(radius_sq, n));
  }
  std::string text;
  if (parse_format(format) == OutputFormat::csv) {
    text += "# cohres gamma-table\n";
    text += std::string("# version: ") + version + "\n";
    text += "# radius-sq: " + format_double(radius_sq) + "\n";
    text += "# max-n: " + std::to_string(max_n) + "\n";
    text += "n,I,Q,recurrence_residual\n";
    for (std::size_t n = 0; n <= max_n; ++n) {
      text += std::to_string(n) + "," + format_double(table.I[n]) + "," +
              format_double(table.Q[n]) + "," + format_double(residuals[n]) + "\n";
    }
  } else {
    nlohmann::ordered_json doc;
    doc["tool"] = "cohres";
    doc["report"] = "gamma-table";
    doc["version"] = version;
    doc["config"] = {{"radius_sq", format_double(radius_sq)},
                     {"max_n", std::to_string(max_n)}};
    doc["rows"] = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n <= max_n; ++n) {
      doc["rows"].push_back({{"n", std::to_string(n)},
                             {"I", format_double(table.I[n])},
                             {"Q", format_double(table.Q[n])},
                             {"recurrence_residual", format_double(residuals[n])}});
    }
    text = doc.dump(2) + "\n";
  }
  emit(text, output);
  return 0;
}

int run_resolve(const std::string& vector_spec, std::size_t dim, double radius,
                const std::string& format, const std::string& output) {
  const VectorSpec spec = parse_vector_spec(vector_spec);
  const FockVector v = make_vector(spec, dim);
  const TruncatedResolution res(radius, v.dim());
  const FockVector image = apply(res, v);
  const double error = strong_error(res, v);
  std::string text;
  if (parse_format(format) == OutputFormat::csv) {
    text += "# cohres resolve\n";
    text += std::string("# version: ") + version + "\n";
    text += "# vector: " + vector_label(spec) + "\n";
    text += "# dim: " + std::to_string(v.dim()) + "\n";
    text += "# radius: " + format_double(radius) + "\n";
    text += "# strong_error: " + format_double(error) + "\n";
    text += "n,input_re,input_im,output_re,output_im,eigenvalue\n";
    for (std::size_t n = 0; n < v.dim(); ++n) {
      text += std::to_string(n) + "," + format_double(v[n].real()) + "," +
              format_double(v[n].imag()) + "," + format_double(image[n].real()) + "," +
              format_double(image[n].imag()) + "," +
              format_double(res.eigenvalues().I[n]) + "\n";
    }
  } else {
    nlohmann::ordered_json doc;
    doc["tool"] = "cohres";
    doc["report"] = "resolve";
    doc["version"] = version;
    doc["config"] = {{"vector", vector_spec},
                     {"dim", std::to_string(v.dim())},
                     {"radius", format_double(radius)}};
    doc["label"] = vector_label(spec);
    doc["strong_error"] = format_double(error);
    doc["rows"] = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < v.dim(); ++n) {
      doc["rows"].push_back({{"n", std::to_string(n)},
                             {"input_re", format_double(v[n].real())},
                             {"input_im", format_double(v[n].imag())},
                             {"output_re", format_double(image[n].real())},
                             {"output_im", format_double(image[n].imag())},
                             {"eigenvalue", format_double(res.eigenvalues().I[n])}});
    }
    text = doc.dump(2) + "\n";
  }
  emit(text, output);
  return 0;
}

int run_converge(const StudyConfig& cfg) {
  const ConvergenceReport report = run_study(cfg);
  const std::string text = cfg.format == OutputFormat::csv ? convergence_csv(report, cfg)
                                                           : convergence_json(report, cfg);
  emit(text, cfg.output);
  return 0;
}

int run_select_radius(const std::string& vector_spec, std::size_t dim, double eps,
                      const std::string& format, const std::string& output) {
  const VectorSpec spec = parse_vector_spec(vector_spec);
  const FockVector v = make_vector(spec, dim);
  const double radius = select_radius(v, eps);
  const double achieved = strong_error(TruncatedResolution(radius, v.dim()), v);
  std::string text;
  if (parse_format(format) == OutputFormat::csv) {
    text += "# cohres select-radius\n";
    text += std::string("# version: ") + version + "\n";
    text += "# vector: " + vector_label(spec) + "\n";
    text += "# dim: " + std::to_string(v.dim()) + "\n";
    text += "eps,radius,strong_error\n";
    text += format_double(eps) + "," + format_double(radius) + "," +
            format_double(achieved) + "\n";
  } else {
    nlohmann::ordered_json doc;
    doc["tool"] = "cohres";
    doc["report"] = "select-radius";
    doc["version"] = version;
    doc["config"] = {{"vector", vector_spec}, {"dim", std::to_string(v.dim())}};
    doc["label"] = vector_label(spec);
    doc["eps"] = format_double(eps);
    doc["radius"] = format_double(radius);
    doc["strong_error"] = format_double(achieved);
    text = doc.dump(2) + "\n";
  }
  emit(text, output);
  return 0;
}

int run_norm_witness(double radius, std::size_t max_m, const std::string& format,
                     const std::string& output) {
  const TruncatedResolution res(radius, max_m + 1);
  const NormWitness witness = norm_witness(res, max_m);
  std::string text;
  if (parse_format(format) == OutputFormat::csv) {
    text += "# cohres norm-witness\n";
    text += std::string("# version: ") + version + "\n";
    text += "# max-m: " + std::to_string(max_m) + "\n";
    text += "radius,m_star,witness,paper_bound\n";
    text += format_double(radius) + "," + std::to_string(witness.m_star) + "," +
            format_double(witness.witness) + "," + format_double(witness.paper_bound) + "\n";
  } else {
    nlohmann::ordered_json doc;
    doc["tool"] = "cohres";
    doc["report"] = "norm-witness";
    doc["version"] = version;
    doc["config"] = {{"radius", format_double(radius)}, {"max_m", std::to_string(max_m)}};
    doc["m_star"] = std::to_string(witness.m_star);
    doc["witness"] = format_double(witness.witness);
    doc["paper_bound"] = format_double(witness.paper_bound);
    text = doc.dump(2) + "\n";
  }
  emit(text, output);
  return 0;
}

int run_quadrature_compare(const std::string& vector_spec, std::size_t dim, double radius,
                           const std::string& grid_spec, const std::string& format,
                           const std::string& output) {
  const VectorSpec spec = parse_vector_spec(vector_spec);
  const FockVector v = make_vector(spec, dim);
  const GridSpec gs = parse_grid_spec(grid_spec);
  const DiskGrid grid(radius, gs.n_radial, gs.n_angular);
  const FockVector analytic = apply(TruncatedResolution(radius, v.dim()), v);
  const double error = distance(quad_resolution(v, grid), analytic);
  const TriangleCheck triangle = triangle_check(v, grid);
  const double bra_residual = bra_exchange_check(v, v, grid);
  const double termwise_residual = termwise_exchange_check(v, grid);
  std::string text;
  if (parse_format(format) == OutputFormat::csv) {
    text += "# cohres quadrature-compare\n";
    text += std::string("# version: ") + version + "\n";
    text += "# vector: " + vector_label(spec) + "\n";
    text += "# dim: " + std::to_string(v.dim()) + "\n";
    text += "# radius: " + format_double(radius) + "\n";
    text += "grid,error_vs_analytic,triangle_lhs,triangle_rhs,bra_exchange_residual,"
            "termwise_exchange_residual\n";
    text += grid_text(gs) + "," + format_double(error) + "," + format_double(triangle.lhs) +
            "," + format_double(triangle.rhs) + "," + format_double(bra_residual) + "," +
            format_double(termwise_residual) + "\n";
  } else {
    nlohmann::ordered_json doc;
    doc["tool"] = "cohres";
    doc["report"] = "quadrature-compare";
    doc["version"] = version;
    doc["config"] = {{"vector", vector_spec},
                     {"dim", std::to_string(v.dim())},
                     {"radius", format_double(radius)},
                     {"grid", grid_text(gs)}};
    doc["label"] = vector_label(spec);
    doc["error_vs_analytic"] = format_double(error);
    doc["triangle_lhs"] = format_double(triangle.lhs);
    doc["triangle_rhs"] = format_double(triangle.rhs);
    doc["norm_sq_integral"] = format_double(triangle.norm_sq_integral);
    doc["bra_exchange_residual"] = format_double(bra_residual);
    doc["termwise_exchange_residual"] = format_double(termwise_residual);
    text = doc.dump(2) + "\n";
  }
  emit(text, output);
  return 0;
}

int run_check(std::uint64_t seed) {
  std::string text;
  text += "# cohres check\n";
  text += std::string("# version: ") + version + "\n";
  text += "# seed: " + std::to_string(seed) + "\n";
  const std::vector<CheckResult> results = run_check_suites(seed);
  int failures = 0;
  for (const CheckResult& result : results) {
    text += format_check_line(result) + "\n";
    if (!result.pass) {
      ++failures;
    }
  }
  if (failures == 0) {
    text += "check: " + std::to_string(results.size()) + "/" +
            std::to_string(results.size()) + " suites passed\n";
  } else {
    text += "check: " + std::to_string(failures) + "/" + std::to_string(results.size()) +
            " suites failed\n";
  }
  std::fputs(text.c_str(), stdout);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohres: truncated coherent-state resolution diagnostics"};
  app.require_subcommand(1);

  std::string vector_spec = "coherent 1,0";
  std::size_t dim = 64;
  std::string format = "csv";
  std::string output;
  std::string grid_spec = "256x256";
  std::uint64_t seed = 42;

  auto* gamma_cmd = app.add_subcommand("gamma-table", "Tabulate I_n(R) and Q_n(R)");
  double radius_sq = 1.0;
  std::size_t max_n = 10;
  gamma_cmd->add_option("--radius-sq", radius_sq, "Argument R of I_n(R)")->required();
  gamma_cmd->add_option("--max-n", max_n, "Largest mode index")->required();
  gamma_cmd->add_option("--format", format, "csv or json");
  gamma_cmd->add_option("--output", output, "Output path (default stdout)");

  auto* resolve_cmd = app.add_subcommand("resolve", "Apply A_r and report the strong error");
  double radius = 2.0;
  resolve_cmd->add_option("--vector", vector_spec, "Test vector spec");
  resolve_cmd->add_option("--dim", dim, "Truncation dimension");
  resolve_cmd->add_option("--radius", radius, "Disk radius r")->required();
  resolve_cmd->add_option("--format", format, "csv or json");
  resolve_cmd->add_option("--output", output, "Output path (default stdout)");

  auto* converge_cmd = app.add_subcommand("converge", "Radius sweep convergence report");
  std::string radii_list = "1,2,4,8";
  double sweep_start = 0.0;
  double sweep_factor = 2.0;
  std::size_t sweep_count = 0;
  converge_cmd->add_option("--vector", vector_spec, "Test vector spec");
  converge_cmd->add_option("--dim", dim, "Truncation dimension");
  converge_cmd->add_option("--radii", radii_list, "Comma-separated radii");
  converge_cmd->add_option("--radius-start", sweep_start, "Geometric sweep start");
  converge_cmd->add_option("--radius-factor", sweep_factor, "Geometric sweep factor");
  converge_cmd->add_option("--radius-count", sweep_count,
                           "Geometric sweep length (enables the sweep)");
  converge_cmd->add_option("--grid", grid_spec, "Quadrature grid KxL echoed in the header");
  converge_cmd->add_option("--seed", seed, "Seed echoed in the header");
  converge_cmd->add_option("--format", format, "csv or json");
  converge_cmd->add_option("--output", output, "Output path (default stdout)");

  auto* select_cmd = app.add_subcommand("select-radius", "Radius guaranteeing strong error < eps");
  double eps = 1e-3;
  select_cmd->add_option("--vector", vector_spec, "Test vector spec");
  select_cmd->add_option("--dim", dim, "Truncation dimension");
  select_cmd->add_option("--eps", eps, "Strong error target")->required();
  select_cmd->add_option("--format", format, "csv or json");
  select_cmd->add_option("--output", output, "Output path (default stdout)");

  auto* witness_cmd = app.add_subcommand("norm-witness", "Basis witness against uniform convergence");
  std::size_t max_m = 64;
  witness_cmd->add_option("--radius", radius, "Disk radius r")->required();
  witness_cmd->add_option("--max-m", max_m, "Largest witness mode scanned")->required();
  witness_cmd->add_option("--format", format, "csv or json");
  witness_cmd->add_option("--output", output, "Output path (default stdout)");

  auto* quad_cmd = app.add_subcommand("quadrature-compare",
                                      "Disk quadrature versus the closed diagonal form");
  quad_cmd->add_option("--vector", vector_spec, "Test vector spec");
  quad_cmd->add_option("--dim", dim, "Truncation dimension");
  quad_cmd->add_option("--radius", radius, "Disk radius r")->required();
  quad_cmd->add_option("--grid", grid_spec, "Quadrature grid KxL");
  quad_cmd->add_option("--format", format, "csv or json");
  quad_cmd->add_option("--output", output, "Output path (default stdout)");

  auto* check_cmd = app.add_subcommand("check", "Run every acceptance suite");
  check_cmd->add_option("--seed", seed, "Seed for the randomized suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gamma_cmd->parsed()) {
      return run_gamma_table(radius_sq, max_n, format, output);
    }
    if (resolve_cmd->parsed()) {
      return run_resolve(vector_spec, dim, radius, format, output);
    }
    if (converge_cmd->parsed()) {
      StudyConfig cfg;
      cfg.vector_spec = vector_spec;
      cfg.dim = dim;
      cfg.radii = sweep_count > 0 ? geometric_sweep(sweep_start, sweep_factor, sweep_count)
                                  : parse_radii_list(radii_list);
      cfg.grid = parse_grid_spec(grid_spec);
      cfg.seed = seed;
      cfg.format = parse_format(format);
      cfg.output = output;
      return run_converge(cfg);
    }
    if (select_cmd->parsed()) {
      return run_select_radius(vector_spec, dim, eps, format, output);
    }
    if (witness_cmd->parsed()) {
      return run_norm_witness(radius, max_m, format, output);
    }
    if (quad_cmd->parsed()) {
      return run_quadrature_compare(vector_spec, dim, radius, grid_spec, format, output);
    }
    if (check_cmd->parsed()) {
      return run_check(seed);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
