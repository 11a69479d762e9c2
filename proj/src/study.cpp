#include "cohres/study.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "cohres/version.hpp"

namespace cohres {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const char* what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw std::invalid_argument(std::string("cannot parse ") + what + ": '" + text + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& text, const char* what) {
  const std::string t = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw std::invalid_argument(std::string("cannot parse ") + what + ": '" + text + "'");
  }
  return value;
}

FockVector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open vector file: " + path);
  }
  std::vector<ComplexAmplitude> coeffs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') {
      continue;
    }
    std::istringstream fields(t);
    std::string re_text;
    std::string im_text;
    if (!(fields >> re_text >> im_text)) {
      throw std::invalid_argument("vector file " + path + " line " +
                                  std::to_string(line_no) + ": expected 're im'");
    }
    std::string extra;
    if (fields >> extra) {
      throw std::invalid_argument("vector file " + path + " line " +
                                  std::to_string(line_no) + ": trailing fields");
    }
    coeffs.emplace_back(parse_double(re_text, "re"), parse_double(im_text, "im"));
  }
  if (coeffs.empty()) {
    throw std::invalid_argument("vector file " + path + " holds no coefficients");
  }
  return FockVector(std::move(coeffs));
}

}  // namespace

VectorSpec parse_vector_spec(const std::string& text) {
  const std::string t = trim(text);
  const auto space = t.find_first_of(" \t");
  if (space == std::string::npos) {
    throw std::invalid_argument("vector spec needs an argument: '" + text + "'");
  }
  const std::string head = t.substr(0, space);
  const std::string rest = trim(t.substr(space + 1));
  VectorSpec spec;
  spec.text = t;
  if (head == "fock") {
    spec.kind = VectorKind::fock;
    spec.fock_m = parse_count(rest, "fock mode index");
  } else if (head == "coherent") {
    spec.kind = VectorKind::coherent;
    const auto comma = rest.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("coherent spec needs 're,im': '" + text + "'");
    }
    spec.alpha = ComplexAmplitude{parse_double(rest.substr(0, comma), "coherent re"),
                                  parse_double(rest.substr(comma + 1), "coherent im")};
  } else if (head == "geometric") {
    spec.kind = VectorKind::geometric;
    spec.q = parse_double(rest, "geometric ratio");
    if (!(spec.q > 0.0) || !(spec.q < 1.0)) {
      throw std::invalid_argument("geometric ratio must satisfy 0 < q < 1");
    }
  } else if (head == "file") {
    spec.kind = VectorKind::file;
    if (rest.empty()) {
      throw std::invalid_argument("file spec needs a path");
    }
    spec.path = rest;
  } else {
    throw std::invalid_argument("unknown vector spec '" + head +
                                "' (expected fock|coherent|geometric|file)");
  }
  return spec;
}

FockVector make_vector(const VectorSpec& spec, std::size_t dim) {
  if (spec.kind != VectorKind::file && dim < 1) {
    throw std::invalid_argument("make_vector: dim must be >= 1");
  }
  switch (spec.kind) {
    case VectorKind::fock:
      if (spec.fock_m >= dim) {
        throw std::invalid_argument("fock mode index must be below dim");
      }
      return FockVector::basis(spec.fock_m, dim);
    case VectorKind::coherent:
      return coherent_coefficients(spec.alpha, dim);
    case VectorKind::geometric: {
      std::vector<ComplexAmplitude> c(dim);
      const double scale = std::sqrt(1.0 - spec.q * spec.q);
      double power = 1.0;
      for (std::size_t n = 0; n < dim; ++n) {
        c[n] = ComplexAmplitude{scale * power, 0.0};
        power *= spec.q;
      }
      return FockVector(std::move(c));
    }
    case VectorKind::file:
      return read_vector_file(spec.path);
  }
  throw std::logic_error("make_vector: unreachable");
}

std::string vector_label(const VectorSpec& spec) {
  if (spec.kind == VectorKind::geometric) {
    return spec.text + " [slow-tail]";
  }
  return spec.text;
}

GridSpec parse_grid_spec(const std::string& text) {
  const std::string t = trim(text);
  const auto x = t.find('x');
  if (x == std::string::npos) {
    throw std::invalid_argument("grid spec must be 'KxL': '" + text + "'");
  }
  GridSpec grid;
  grid.n_radial = parse_count(t.substr(0, x), "grid radial count");
  grid.n_angular = parse_count(t.substr(x + 1), "grid angular count");
  return grid;
}

std::vector<double> geometric_sweep(double start, double factor, std::size_t count) {
  if (!(start > 0.0) || !(factor > 1.0) || count < 1) {
    throw std::invalid_argument("geometric sweep needs start > 0, factor > 1, count >= 1");
  }
  std::vector<double> radii(count);
  double r = start;
  for (std::size_t i = 0; i < count; ++i) {
    radii[i] = r;
    r *= factor;
  }
  return radii;
}

ConvergenceReport run_study(const StudyConfig& cfg) {
  if (cfg.dim < 1) {
    throw std::invalid_argument("run_study: dim must be >= 1");
  }
  if (cfg.radii.empty()) {
    throw std::invalid_argument("run_study: no radii configured");
  }
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    if (!(cfg.radii[i] > 0.0)) {
      throw std::invalid_argument("run_study: radii must be positive");
    }
    if (i > 0 && !(cfg.radii[i - 1] < cfg.radii[i])) {
      throw std::invalid_argument("run_study: radii must be strictly increasing");
    }
  }
  const VectorSpec spec = parse_vector_spec(cfg.vector_spec);
  const FockVector v = make_vector(spec, cfg.dim);
  if (!(norm_sq(v) > 0.0)) {
    throw std::invalid_argument("run_study: vector spec is non-normalizable (zero norm)");
  }
  return radius_sweep(v, cfg.radii, vector_label(spec));
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) {
    throw std::logic_error("format_double: buffer too small");
  }
  return std::string(buf, ptr);
}

namespace {

std::string radii_text(const std::vector<double>& radii) {
  std::string out;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += format_double(radii[i]);
  }
  return out;
}

}  // namespace

std::string convergence_csv(const ConvergenceReport& report, const StudyConfig& cfg) {
  std::string out;
  out += "# cohres convergence report\n";
  out += std::string("# version: ") + version + "\n";
  out += "# vector: " + report.test_vector_label + "\n";
  out += "# dim: " + std::to_string(cfg.dim) + "\n";
  out += "# radii: " + radii_text(cfg.radii) + "\n";
  out += "# grid: " + std::to_string(cfg.grid.n_radial) + "x" +
         std::to_string(cfg.grid.n_angular) + "\n";
  out += "# seed: " + std::to_string(cfg.seed) + "\n";
  out += "radius,strong_error,weak_defect_self,norm_witness,paper_bound\n";
  for (const auto& row : report.rows) {
    out += format_double(row.radius) + "," + format_double(row.strong_error) + "," +
           format_double(row.weak_defect_self) + "," + format_double(row.norm_witness) + "," +
           format_double(row.paper_bound) + "\n";
  }
  return out;
}

std::string convergence_json(const ConvergenceReport& report, const StudyConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["tool"] = "cohres";
  doc["report"] = "convergence";
  doc["version"] = version;
  doc["config"] = {{"vector", cfg.vector_spec},
                   {"dim", std::to_string(cfg.dim)},
                   {"radii", radii_text(cfg.radii)},
                   {"grid", std::to_string(cfg.grid.n_radial) + "x" +
                                std::to_string(cfg.grid.n_angular)},
                   {"seed", std::to_string(cfg.seed)}};
  doc["label"] = report.test_vector_label;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    doc["rows"].push_back({{"radius", format_double(row.radius)},
                           {"strong_error", format_double(row.strong_error)},
                           {"weak_defect_self", format_double(row.weak_defect_self)},
                           {"norm_witness", format_double(row.norm_witness)},
                           {"paper_bound", format_double(row.paper_bound)}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace cohres
