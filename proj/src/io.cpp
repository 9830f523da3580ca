#include "mhrev/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mhrev/models.hpp"

namespace mhrev {

using nlohmann::json;

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

KernelFile::Kind kind_from_string(const std::string& s) {
  if (s == "stochastic") return KernelFile::Kind::Stochastic;
  if (s == "signed") return KernelFile::Kind::Signed;
  if (s == "generator") return KernelFile::Kind::Generator;
  throw ParseError("kernel file: unknown kind '" + s + "'");
}

std::string kind_to_string(KernelFile::Kind kind) {
  switch (kind) {
    case KernelFile::Kind::Stochastic: return "stochastic";
    case KernelFile::Kind::Signed: return "signed";
    case KernelFile::Kind::Generator: return "generator";
  }
  return "stochastic";
}

void validate_kernel_file(const KernelFile& file) {
  const int n = static_cast<int>(file.matrix.rows());
  if (n == 0 || file.matrix.cols() != n) {
    throw ParseError("kernel file: matrix must be square and non-empty");
  }
  if (!file.states.empty() && static_cast<int>(file.states.size()) != n) {
    throw ParseError("kernel file: states list does not match the matrix size");
  }
  const double row_target = file.kind == KernelFile::Kind::Generator ? 0.0 : 1.0;
  for (int x = 0; x < n; ++x) {
    const double scale =
        file.kind == KernelFile::Kind::Generator
            ? std::max(1.0, file.matrix.row(x).cwiseAbs().maxCoeff())
            : 1.0;
    if (std::abs(file.matrix.row(x).sum() - row_target) > 1e-9 * scale) {
      throw InvariantViolation("kernel file: row " + std::to_string(x) + " must sum to " +
                               (row_target == 0.0 ? std::string("0") : std::string("1")));
    }
    for (int y = 0; y < n; ++y) {
      const double v = file.matrix(x, y);
      if (file.kind == KernelFile::Kind::Stochastic && v < 0.0) {
        throw InvariantViolation("kernel file: negative entry in a stochastic matrix");
      }
      if (file.kind != KernelFile::Kind::Stochastic && x != y && v < 0.0) {
        throw InvariantViolation("kernel file: negative off-diagonal entry");
      }
    }
  }
}

KernelFile parse_json_kernel(const std::string& content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::exception& e) {
    throw ParseError(std::string("kernel file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix")) {
    throw ParseError("kernel file: expected an object with a 'matrix' field");
  }
  KernelFile file;
  if (doc.contains("kind")) file.kind = kind_from_string(doc["kind"].get<std::string>());
  if (doc.contains("states")) {
    for (const auto& s : doc["states"]) file.states.push_back(s.get<std::string>());
  }
  const auto& rows = doc["matrix"];
  if (!rows.is_array() || rows.empty()) throw ParseError("kernel file: matrix must be an array");
  const int n = static_cast<int>(rows.size());
  file.matrix.resize(n, n);
  for (int x = 0; x < n; ++x) {
    if (!rows[x].is_array() || static_cast<int>(rows[x].size()) != n) {
      throw ParseError("kernel file: matrix rows must all have length " + std::to_string(n));
    }
    for (int y = 0; y < n; ++y) {
      if (!rows[x][y].is_number()) throw ParseError("kernel file: non-numeric matrix entry");
      file.matrix(x, y) = rows[x][y].get<double>();
    }
  }
  validate_kernel_file(file);
  return file;
}

KernelFile parse_csv_kernel(const std::string& content) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError("kernel file: non-numeric CSV cell '" + cell + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("kernel file: empty CSV");
  const int n = static_cast<int>(rows.size());
  KernelFile file;
  file.matrix.resize(n, n);
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(rows[x].size()) != n) {
      throw ParseError("kernel file: CSV matrix is not square");
    }
    for (int y = 0; y < n; ++y) file.matrix(x, y) = rows[x][y];
  }
  validate_kernel_file(file);
  return file;
}

}  // namespace

KernelFile parse_kernel_file(const std::string& content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("kernel file: empty input");
  if (content[first] == '{') return parse_json_kernel(content);
  return parse_csv_kernel(content);
}

KernelFile read_kernel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("kernel file: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kernel_file(buf.str());
}

std::string kernel_file_to_json(const KernelFile& file) {
  json doc;
  doc["kind"] = kind_to_string(file.kind);
  json states = json::array();
  const int n = static_cast<int>(file.matrix.rows());
  for (int x = 0; x < n; ++x) {
    states.push_back(file.states.empty() ? std::to_string(x) : file.states[x]);
  }
  doc["states"] = states;
  json rows = json::array();
  for (int x = 0; x < n; ++x) {
    json row = json::array();
    for (int y = 0; y < n; ++y) row.push_back(file.matrix(x, y));
    rows.push_back(row);
  }
  doc["matrix"] = rows;
  return doc.dump(2) + "\n";
}

std::string kernel_file_to_csv(const KernelFile& file) {
  std::ostringstream out;
  const int n = static_cast<int>(file.matrix.rows());
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (y) out << ',';
      out << format_double(file.matrix(x, y));
    }
    out << '\n';
  }
  return out.str();
}

void write_kernel_file(const std::string& path, const KernelFile& file, bool as_csv) {
  std::ofstream out(path);
  if (!out) throw ParseError("kernel file: cannot write '" + path + "'");
  out << (as_csv ? kernel_file_to_csv(file) : kernel_file_to_json(file));
}

std::string gap_scan_to_json(const GapScanResult& scan) {
  json doc;
  doc["n_max"] = scan.n_max;
  json steps = json::array();
  for (const GapStep& s : scan.per_k) {
    steps.push_back({{"k", s.k},
                     {"Lambda_M1_root", s.Lambda_M1_root},
                     {"abs_lambda_M2_root", s.abs_lambda_M2_root},
                     {"ps_term", s.ps_term},
                     {"in_C", s.in_C}});
  }
  doc["per_k"] = steps;
  doc["C_complement"] = scan.C_complement;
  doc["t_star"] = scan.t_star;
  doc["beta_MH"] = scan.beta_MH;
  doc["gamma_MH"] = scan.gamma_MH;
  doc["gamma_ps"] = scan.gamma_ps;
  doc["gamma_ps_arg"] = scan.gamma_ps_arg;
  doc["converged"] = scan.converged;
  return doc.dump(2) + "\n";
}

std::string gap_scan_to_csv(const GapScanResult& scan) {
  std::ostringstream out;
  out << "k,Lambda_M1_root,abs_lambda_M2_root,ps_term,in_C\n";
  for (const GapStep& s : scan.per_k) {
    out << s.k << ',' << format_double(s.Lambda_M1_root) << ','
        << format_double(s.abs_lambda_M2_root) << ',' << format_double(s.ps_term) << ','
        << (s.in_C ? 1 : 0) << '\n';
  }
  out << "# gamma_MH=" << format_double(scan.gamma_MH)
      << " beta_MH=" << format_double(scan.beta_MH)
      << " gamma_ps=" << format_double(scan.gamma_ps) << " gamma_ps_arg=" << scan.gamma_ps_arg
      << " t_star=" << scan.t_star << " converged=" << (scan.converged ? 1 : 0) << '\n';
  return out.str();
}

std::string svg_line_plot(const std::vector<std::pair<std::string, std::vector<double>>>& series,
                          const std::string& x_label, const std::string& y_label) {
  const int width = 720, height = 440;
  const int ml = 60, mr = 20, mt = 20, mb = 45;
  double lo = 0.0, hi = 1.0;
  size_t max_len = 1;
  bool any = false;
  for (const auto& [name, ys] : series) {
    for (double y : ys) {
      if (!std::isfinite(y)) continue;
      if (!any) {
        lo = hi = y;
        any = true;
      }
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    max_len = std::max(max_len, ys.size());
  }
  if (!any || hi - lo < 1e-12) {
    hi = lo + 1.0;
  }
  const auto sx = [&](double k) {
    return ml + (k - 1.0) / std::max<double>(1.0, static_cast<double>(max_len) - 1.0) *
                    (width - ml - mr);
  };
  const auto sy = [&](double v) { return height - mb - (v - lo) / (hi - lo) * (height - mt - mb); };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
  svg << "<text x=\"15\" y=\"" << (mt + height - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 15 "
      << (mt + height - mb) / 2 << ")\">" << y_label << "</text>\n";
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << sy(lo) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(lo).substr(0, 8)
      << "</text>\n";
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << sy(hi) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(hi).substr(0, 8)
      << "</text>\n";
  svg << "<text x=\"" << sx(1) << "\" y=\"" << height - mb + 16
      << "\" text-anchor=\"middle\" font-size=\"11\">1</text>\n";
  svg << "<text x=\"" << sx(static_cast<double>(max_len)) << "\" y=\"" << height - mb + 16
      << "\" text-anchor=\"middle\" font-size=\"11\">" << max_len << "</text>\n";
  int color = 0;
  int legend_y = mt + 12;
  for (const auto& [name, ys] : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << palette[color % 5] << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < ys.size(); ++i) {
      if (!std::isfinite(ys[i])) continue;
      svg << sx(static_cast<double>(i + 1)) << ',' << sy(ys[i]) << ' ';
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << width - mr - 5 << "\" y=\"" << legend_y
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << palette[color % 5] << "\">" << name
        << "</text>\n";
    legend_y += 16;
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

NamedModel make_model(const std::string& name, const ModelParams& params) {
  if (name == "triangle") {
    return {triangle(), {"0", "1", "2"}};
  }
  if (name == "dhn") {
    return {dhn_sampler(params.m), dhn_labels(params.m)};
  }
  if (name == "ws" || name == "winning-streak") {
    StochasticKernel P = winning_streak(params.m);
    std::vector<std::string> states;
    for (int i = 0; i <= params.m; ++i) states.push_back(std::to_string(i));
    return {std::move(P), std::move(states)};
  }
  if (name == "cycle") {
    StochasticKernel P = asymmetric_cycle(params.n, params.p);
    std::vector<std::string> states;
    for (int i = 0; i < params.n; ++i) states.push_back(std::to_string(i));
    return {std::move(P), std::move(states)};
  }
  if (name == "torus") {
    StochasticKernel P = torus_walk(params.n, params.d, params.p);
    std::vector<std::string> states;
    for (int i = 0; i < P.size(); ++i) states.push_back(std::to_string(i));
    return {std::move(P), std::move(states)};
  }
  if (name == "skipfree" || name == "skip-free") {
    return {upward_skip_free(), {"1", "2", "3", "4"}};
  }
  throw BadParams("unknown model '" + name + "'");
}

}  // namespace mhrev
