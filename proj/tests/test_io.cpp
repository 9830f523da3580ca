#include <doctest.h>

#include "mhrev/io.hpp"
#include "mhrev/kernel.hpp"
#include "mhrev/models.hpp"
#include "mhrev/spectra.hpp"
#include "support.hpp"

using namespace mhrev;
using namespace mhrev::testing;

TEST_CASE("kernel files round-trip losslessly") {
  auto rng = make_rng(7);
  const auto P = random_chain(5, rng);
  KernelFile file;
  file.kind = KernelFile::Kind::Stochastic;
  file.matrix = P.matrix();

  SUBCASE("json") {
    const auto back = parse_kernel_file(kernel_file_to_json(file));
    CHECK(back.kind == KernelFile::Kind::Stochastic);
    REQUIRE(back.matrix.rows() == 5);
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) {
        CHECK(back.matrix(x, y) == file.matrix(x, y));  // bitwise
      }
    }
  }
  SUBCASE("csv") {
    const auto back = parse_kernel_file(kernel_file_to_csv(file));
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) {
        CHECK(back.matrix(x, y) == file.matrix(x, y));
      }
    }
  }
}

TEST_CASE("kernel file validation") {
  CHECK_THROWS_AS(parse_kernel_file("{not json"), ParseError);
  CHECK_THROWS_AS(parse_kernel_file(""), ParseError);
  CHECK_THROWS_AS(parse_kernel_file("0.5,0.5\n0.25,0.25\n"), InvariantViolation);
  CHECK_THROWS_AS(parse_kernel_file("0.5,0.5,0.0\n0.5,0.5\n"), ParseError);
  // Negative off-diagonal entries require the signed tag.
  CHECK_THROWS_AS(
      parse_kernel_file(R"({"kind":"stochastic","matrix":[[-0.5,1.5],[0.5,0.5]]})"),
      InvariantViolation);
  const auto file =
      parse_kernel_file(R"({"kind":"signed","matrix":[[-0.5,1.5],[0.75,0.25]]})");
  CHECK(file.kind == KernelFile::Kind::Signed);
  const auto gen = parse_kernel_file(R"({"kind":"generator","matrix":[[-1.0,1.0],[2.0,-2.0]]})");
  CHECK(gen.kind == KernelFile::Kind::Generator);
  // CSV defaults to stochastic.
  CHECK(parse_kernel_file("0.5,0.5\n0.25,0.75\n").kind == KernelFile::Kind::Stochastic);
}

TEST_CASE("serialization is deterministic") {
  const auto P = triangle();
  KernelFile file;
  file.matrix = P.matrix();
  file.states = {"0", "1", "2"};
  CHECK(kernel_file_to_json(file) == kernel_file_to_json(file));
  CHECK(kernel_file_to_csv(file) == kernel_file_to_csv(file));

  const auto pi = stationary_distribution(P);
  const auto scan = mh_spectral_gap(P, pi, 20);
  CHECK(gap_scan_to_json(scan) == gap_scan_to_json(scan));
  CHECK(gap_scan_to_csv(scan) == gap_scan_to_csv(scan));
}

TEST_CASE("gap scan serialization carries the footer quantities") {
  const auto P = triangle();
  const auto pi = stationary_distribution(P);
  const auto scan = mh_spectral_gap(P, pi, 30);
  const std::string csv = gap_scan_to_csv(scan);
  CHECK(csv.find("k,Lambda_M1_root,abs_lambda_M2_root,ps_term,in_C") == 0);
  CHECK(csv.find("gamma_MH=") != std::string::npos);
  CHECK(csv.find("gamma_ps=") != std::string::npos);
  CHECK(csv.find("t_star=3") != std::string::npos);
  const std::string js = gap_scan_to_json(scan);
  CHECK(js.find("\"gamma_ps\"") != std::string::npos);
  CHECK(js.find("\"per_k\"") != std::string::npos);
}

TEST_CASE("svg plot is emitted") {
  std::vector<std::pair<std::string, std::vector<double>>> series{
      {"a", {0.1, 0.2, 0.3, 0.25}}, {"b", {0.9, 0.8, 0.7, 0.6}}};
  const std::string svg = svg_line_plot(series);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("model lookup") {
  ModelParams params;
  params.m = 4;
  CHECK(make_model("triangle", params).kernel.size() == 3);
  CHECK(make_model("ws", params).kernel.size() == 5);
  CHECK(make_model("dhn", params).kernel.size() == 8);
  params.n = 4;
  params.d = 2;
  CHECK(make_model("torus", params).kernel.size() == 16);
  CHECK(make_model("skipfree", params).kernel.size() == 4);
  CHECK_THROWS_AS(make_model("nope", params), BadParams);
}
