#include <doctest.h>

#include <cmath>
#include <limits>

#include "stategeom/io.hpp"
#include "stategeom/sampling.hpp"
#include "test_support.hpp"

using namespace stategeom;
using namespace stategeom::io;
using oracle::diag;

TEST_CASE("canonical matrix format") {
  const std::string text = format_matrix(diag({0.75, 0.25}), MatrixKind::State);
  CHECK(text == "{\"n\":2,\"kind\":\"state\",\"entries\":[[0.75,0.0],[0.0,0.0],[0.0,0.0],[0.25,0.0]]}\n");

  // negative zero is written as 0.0
  const std::string neg = format_matrix(diag({-0.0, Complex(1.0, -0.0)}));
  CHECK(neg == "{\"n\":2,\"entries\":[[0.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]}\n");
}

TEST_CASE("round trip is byte identical") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator m = random_ginibre(1 + trial % 5, 1 + trial % 5, rng);
    const std::string once = format_matrix(m, MatrixKind::Operator);
    const MatrixFile parsed = parse_matrix(once);
    CHECK(parsed.matrix == m);  // shortest round-trip doubles are exact
    REQUIRE(parsed.kind);
    CHECK(*parsed.kind == MatrixKind::Operator);
    CHECK(format_matrix(parsed.matrix, parsed.kind) == once);
  }
}

TEST_CASE("parse errors") {
  const auto code = [](const std::string& text) {
    return oracle::raised([&] { parse_matrix(text); });
  };
  CHECK(code("not json") == ErrorCode::ParseError);
  CHECK(code("[1,2]") == ErrorCode::ParseError);
  CHECK(code(R"({"n":2,"entries":[[1,0]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"n":0,"entries":[]})") == ErrorCode::ParseError);
  CHECK(code(R"({"n":1,"entries":[[1]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"n":1,"entries":[["a",0]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"n":1,"kind":"tensor","entries":[[1,0]]})") == ErrorCode::ParseError);
  CHECK_FALSE(code(R"({"n":1,"entries":[[1,0]]})"));

  const MatrixFile f = parse_matrix(R"({"entries":[[1,2],[3,4],[5,6],[7,8]],"n":2})");
  CHECK(f.matrix(1, 0) == Complex(5, 6));
  CHECK_FALSE(f.kind);
}

TEST_CASE("csv_number") {
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(csv_number(-0.0) == "0");
  CHECK(std::stod(csv_number(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("truncation output") {
  TruncationReport report;
  report.rows.push_back({2, 1.5, 1.25, 1e-16, false, "FiniteRank(2)"});
  report.rows.push_back({4, 2e6, std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN(), true, "FiniteRank(4)"});
  const std::string csv = truncation_csv(report);
  CHECK(csv.rfind("n,C,opnorm,residual,flag\n", 0) == 0);
  CHECK(csv.find("2,1.5,1.25,9.9999999999999998e-17,ok\n") != std::string::npos);
  CHECK(csv.find(",diverged\n") != std::string::npos);

  const Json doc = truncation_to_json(report);
  CHECK(doc["rows"].size() == 2);
  CHECK(doc["rows"][1]["flag"] == "diverged");
  CHECK(doc["rows"][1]["opnorm"].is_null());
}

TEST_CASE("flow output") {
  const auto half = validate_state(identity(2) / 2.0);
  const std::vector<double> grid{0.0, 0.5};
  const std::vector<StateDensity> states{half, half};
  const std::string csv = flow_csv(grid, states);
  CHECK(csv.rfind("t,re_00,im_00,re_01,im_01,re_10,im_10,re_11,im_11\n", 0) == 0);
  CHECK(csv.find("0.5,0.5,0,0,0,0,0,0.5,0\n") != std::string::npos);
  CHECK(flow_to_json(grid, states)["points"].size() == 2);
}

TEST_CASE("report serializers") {
  const auto cert = connect_phi(validate_state(identity(2) / 2.0), validate_state(diag({0.75, 0.25})));
  const Json c = certificate_to_json(cert, Action::Phi);
  CHECK(c["C"].get<double>() == doctest::Approx(1.5));
  CHECK(c["g"]["kind"] == "operator");
  const std::string keys = c.dump().substr(0, 20);
  CHECK(keys == "{\"action\":\"phi\",\"C\":");

  const Json iso = isotropy_report_to_json(isotropy_report(validate_state(diag({1.0, 0.0}))), Action::Phi);
  CHECK(iso["dim_phi"] == 6);
  CHECK(iso["orbit_dim"] == 2);

  const auto t = gns_construct(validate_state(diag({1.0, 0.0})));
  const Json g = gns_to_json(t);
  CHECK(g["dim"] == 2);
  CHECK(g["algebra"] == "full");
  CHECK(g["basis"].size() == 4);
  CHECK_FALSE(g.contains("verification"));
}

TEST_CASE("truncation config") {
  const auto cfg = parse_truncation_config(
      R"({"spec0":{"kind":"gibbs","ratio":0.5},"spec1":{"kind":"power","exponent":2},"dims":[2,4],"ceiling":100})");
  CHECK(cfg.spec0.kind == SpectrumSpec::Kind::Gibbs);
  CHECK(cfg.spec1.kind == SpectrumSpec::Kind::Power);
  CHECK(cfg.spec1.parameter == 2.0);
  CHECK(cfg.dims == std::vector<std::size_t>{2, 4});
  CHECK(cfg.ceiling == 100.0);

  const auto defaulted = parse_truncation_config(
      R"({"spec0":{"kind":"uniform"},"spec1":{"kind":"uniform"},"dims":[3]})");
  CHECK(defaulted.ceiling == 1e6);

  const auto code = [](const std::string& text) {
    return oracle::raised([&] { parse_truncation_config(text); });
  };
  CHECK(code("{") == ErrorCode::ConfigError);
  CHECK(code(R"({"spec0":{"kind":"gibbs","ratio":2},"spec1":{"kind":"uniform"},"dims":[2]})") ==
        ErrorCode::ConfigError);
  CHECK(code(R"({"spec0":{"kind":"uniform"},"spec1":{"kind":"uniform"},"dims":[]})") ==
        ErrorCode::ConfigError);
  CHECK(code(R"({"spec0":{"kind":"uniform"},"spec1":{"kind":"zeta"},"dims":[2]})") ==
        ErrorCode::ConfigError);
  CHECK(code(R"({"spec0":{"kind":"uniform"},"spec1":{"kind":"uniform"},"dims":[2],"ceiling":-1})") ==
        ErrorCode::ConfigError);
}
