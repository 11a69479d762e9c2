#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cohres/fock.hpp"
#include "cohres/resolution.hpp"

namespace cohres {

enum class VectorKind { fock, coherent, geometric, file };

// Parsed form of a test-vector spec string:
//   "fock <m>" | "coherent <re>,<im>" | "geometric <q>" | "file <path>".
struct VectorSpec {
  VectorKind kind = VectorKind::fock;
  std::size_t fock_m = 0;
  ComplexAmplitude alpha{0.0, 0.0};
  double q = 0.0;
  std::string path;
  std::string text;
};

VectorSpec parse_vector_spec(const std::string& text);

// Realizes the spec at the requested dimension; a file spec takes its
// dimension from the file (one coefficient per line as "re im").
FockVector make_vector(const VectorSpec& spec, std::size_t dim);

// Report label: the spec text, with the geometric vector tagged as the
// canonical slow-tail example.
std::string vector_label(const VectorSpec& spec);

struct GridSpec {
  std::size_t n_radial = 256;
  std::size_t n_angular = 256;
};

// "KxL", e.g. "512x512".
GridSpec parse_grid_spec(const std::string& text);

enum class OutputFormat { csv, json };

struct StudyConfig {
  std::string vector_spec = "coherent 1,0";
  std::size_t dim = 64;
  std::vector<double> radii = {1.0, 2.0, 4.0, 8.0};
  GridSpec grid;
  std::string output;  // empty = stdout
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 42;
};

// start, start·factor, ..., count values.
std::vector<double> geometric_sweep(double start, double factor, std::size_t count);

// Radius sweep for the configured vector; deterministic for a fixed config.
ConvergenceReport run_study(const StudyConfig& cfg);

// Shortest round-trip decimal for a double (round-trip exact).
std::string format_double(double x);

// Serialized reports, headed by a block echoing the config and library
// version. JSON numeric values are decimal strings.
std::string convergence_csv(const ConvergenceReport& report, const StudyConfig& cfg);
std::string convergence_json(const ConvergenceReport& report, const StudyConfig& cfg);

}  // namespace cohres
