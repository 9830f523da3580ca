#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mhrev/spectra.hpp"
#include "mhrev/types.hpp"

namespace mhrev {

/// On-disk kernel: JSON {states, matrix, kind} or a bare CSV matrix (kind
/// inferred as stochastic). Matrices round-trip losslessly.
struct KernelFile {
  enum class Kind { Stochastic, Signed, Generator };
  Kind kind = Kind::Stochastic;
  std::vector<std::string> states;  ///< optional display names, one per state
  Matrix matrix;
};

/// Parses JSON (leading '{') or CSV content. Structural problems throw
/// ParseError; semantic ones (row sums off by more than 1e-9, negative
/// off-diagonal entries where the kind forbids them) throw
/// InvariantViolation naming the violated invariant.
KernelFile parse_kernel_file(const std::string& content);
KernelFile read_kernel_file(const std::string& path);

std::string kernel_file_to_json(const KernelFile& file);
std::string kernel_file_to_csv(const KernelFile& file);
void write_kernel_file(const std::string& path, const KernelFile& file, bool as_csv = false);

std::string gap_scan_to_json(const GapScanResult& scan);
/// CSV columns k, Lambda_M1_root, abs_lambda_M2_root, ps_term, in_C with a
/// comment footer carrying gamma_MH, gamma_ps, t_star and the confidence flag.
std::string gap_scan_to_csv(const GapScanResult& scan);

/// Minimal self-contained SVG line plot of one or more per-k series.
std::string svg_line_plot(const std::vector<std::pair<std::string, std::vector<double>>>& series,
                          const std::string& x_label = "k", const std::string& y_label = "value");

/// Built-in model lookup for the CLI: triangle, dhn, ws, cycle, torus,
/// skipfree. Unknown names throw BadParams.
struct ModelParams {
  int m = 3;
  int n = 5;
  int d = 1;
  double p = 0.8;
};

struct NamedModel {
  StochasticKernel kernel;
  std::vector<std::string> states;
};

NamedModel make_model(const std::string& name, const ModelParams& params);

/// 17-significant-digit decimal rendering used by the CSV writers.
std::string format_double(double v);

}  // namespace mhrev
