#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qfimeter/errors.hpp"
#include "qfimeter/records.hpp"

using namespace qfimeter;
using namespace qfimeter::io;

TEST_CASE("double formatting round-trips bit-exactly") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 5000; ++i) {
    const double x = std::ldexp(mant(rng), expo(rng));
    CHECK(parse_double(format_double(x)) == x);
  }
  for (double x : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, std::numeric_limits<double>::min(),
                   std::numeric_limits<double>::max(), std::numeric_limits<double>::denorm_min()}) {
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("parse_double rejects partial fields") {
  CHECK_THROWS_AS(parse_double(""), SchemaError);
  CHECK_THROWS_AS(parse_double("1.5x"), SchemaError);
  CHECK_THROWS_AS(parse_double("abc"), SchemaError);
  CHECK_THROWS_AS(parse_double("1,5"), SchemaError);
}

TEST_CASE("sweep CSV round trip") {
  const SweepGrid g = sweep(linspace(0, 4, 5), linspace(-2, 2, 3), 0.9, 4);
  std::stringstream ss;
  write_sweep_csv(ss, g);
  std::string first;
  std::getline(std::stringstream(ss.str()), first);
  CHECK(first == kSweepCsvHeader);

  const SweepGrid back = read_sweep_csv(ss);
  CHECK(back.tau_axis == g.tau_axis);
  CHECK(back.u_axis == g.u_axis);
  CHECK(back.eps == g.eps);
  CHECK(back.n_atoms == g.n_atoms);
  REQUIRE(back.records.size() == g.records.size());
  for (std::size_t i = 0; i < g.records.size(); ++i) {
    CHECK(back.records[i].f_scaled == g.records[i].f_scaled);
    CHECK(back.records[i].fisher_max == g.records[i].fisher_max);
    CHECK(back.records[i].ell_max == g.records[i].ell_max);
    CHECK(back.records[i].ell_min == g.records[i].ell_min);
  }
}

TEST_CASE("sweep JSON carries the CSV values") {
  const SweepGrid g = sweep({0.0, 1.0}, {0.0, 3.0}, 1.0, 2);
  const nlohmann::json j = sweep_to_json(g);
  CHECK(j["n_atoms"] == 2);
  REQUIRE(j["points"].size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(j["points"][i]["f_M"].get<double>() == g.records[i].f_scaled);
    CHECK(j["points"][i]["tau"].get<double>() == g.tau_axis[i % 2]);
    CHECK(j["points"][i]["u"].get<double>() == g.u_axis[i / 2]);
  }
  const nlohmann::json back = nlohmann::json::parse(j.dump());
  CHECK(back["points"][3]["F_M"].get<double>() == g.records[3].fisher_max);
}

TEST_CASE("sweep CSV schema errors") {
  auto read = [](const std::string& text) {
    std::istringstream is(text);
    return read_sweep_csv(is);
  };
  const std::string h = std::string(kSweepCsvHeader) + "\n";
  CHECK_THROWS_AS(read(""), SchemaError);
  CHECK_THROWS_AS(read("n_atoms,tau,eps,u,f_M\n2,0,1,0,1\n"), SchemaError);
  CHECK_THROWS_AS(read(h), SchemaError);
  CHECK_THROWS_AS(read(h + "2,0,1,0,1,4,1\n"), SchemaError);
  CHECK_THROWS_AS(read(h + "2,0,1,0,1,4,1,-1\n2,1,1,0,1,4,1,-1\n2,0,1,1,1,4,1,-1\n"),
                  SchemaError);
  CHECK_THROWS_AS(read(h + "2,0,1,0,1,4,1,-1\n2,1,0.5,0,1,4,1,-1\n"), SchemaError);
  CHECK_THROWS_AS(read(h + "2,0,1,0,1,4,1,-1\n4,1,1,0,1,4,1,-1\n"), SchemaError);
  CHECK_THROWS_AS(read(h + "2,0,1,0,one,4,1,-1\n"), SchemaError);
  const SweepGrid ok = read(h + "2,0,1,0,1,4,1,-1\n2,1,1,0,0.5,2,0.7,-0.7\n");
  CHECK(ok.tau_axis == std::vector<double>{0.0, 1.0});
  CHECK(ok.value(0, 1) == 0.5);
}

TEST_CASE("point records") {
  const QfiPoint p = evaluate_point({0.0, 1.0, 0.0, 2});
  std::ostringstream os;
  write_point_csv(os, p);
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(header == kPointCsvHeader);
  CHECK(row.rfind("2,0,1,0,0,", 0) == 0);

  const nlohmann::json j = point_to_json(p);
  CHECK(j["F_M"].get<double>() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(j["f_M"].get<double>() == p.fisher_scaled);
  CHECK(j["U"].get<double>() == 0.0);
  CHECK(j["degenerate_generator"] == false);
  REQUIRE(j["optimal_state"].size() == 3);
  double norm = 0.0;
  for (const auto& c : j["optimal_state"]) {
    REQUIRE(c.size() == 2);
    norm += std::pow(c[0].get<double>(), 2) + std::pow(c[1].get<double>(), 2);
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("extrapolation records") {
  const ExtrapolationResult r = extrapolate_point(1.0, 2.0, 1.0, {4, 8, 16});
  std::ostringstream os;
  write_extrapolation_csv(os, 1.0, 1.0, 2.0, r);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == kExtrapolationCsvHeader);
  int rows = 0;
  std::string last;
  while (std::getline(is, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 4);
  CHECK(last == "1,1,2,0," + format_double(r.f_infinity));

  const nlohmann::json j = extrapolation_to_json(1.0, 1.0, 2.0, r);
  CHECK(j["f_infinity"].get<double>() == r.f_infinity);
  CHECK(j["n_series"] == std::vector<int>{4, 8, 16});

  const ExtrapolatedGrid g = sweep_extrapolated({0.0, 1.0}, {2.0}, 1.0, {4, 8, 16});
  std::ostringstream gs;
  write_extrapolated_grid_csv(gs, g);
  CHECK(gs.str().rfind(std::string(kExtrapolatedGridCsvHeader) + "\n0,1,2,", 0) == 0);
  CHECK(extrapolated_grid_to_json(g)["f_infinity"].size() == 2);
}
