#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "cfsqz/config.hpp"

using namespace cfsqz;

namespace {

const char* kMinimal =
    "T1 = 0.12\n"
    "L1 = 5e-3\n"
    "l = 0.5\n"
    "x = 0.1\n"
    "T2 = 0.8\n"
    "L2 = 0.05\n"
    "la = 0.25\n"
    "lb = 0.25\n";

std::string with_line(const std::string& extra) { return std::string(kMinimal) + extra; }

bool mentions(const std::exception& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal config uses documented defaults") {
  const RunConfig cfg = parse_config(kMinimal);
  CHECK(cfg.opo.T1 == 0.12);
  CHECK(cfg.opo.L1 == 5e-3);
  CHECK(cfg.opo.l == 0.5);
  CHECK(cfg.opo.x == 0.1);
  CHECK(cfg.opo.pump_sign == PumpSign::Positive);
  CHECK(cfg.feedback.T2 == 0.8);
  CHECK(cfg.feedback.L2 == 0.05);
  CHECK(cfg.feedback.la == 0.25);
  CHECK(cfg.feedback.lb == 0.25);
  CHECK(!cfg.detection.has_value());
  CHECK(cfg.command == Command::Spectrum);
  CHECK(cfg.f_hz == 1.0e6);
  CHECK(cfg.f_min_hz == 1.0e5);
  CHECK(cfg.f_max_hz == 8.0e6);
  CHECK(cfg.n_points == 400);
  CHECK(cfg.t2_grid == 101);
  CHECK(cfg.spacing == GridSpacing::Linear);
  CHECK(cfg.baseline == Baseline::UncontrolledIdeal);
  CHECK(cfg.preset.empty());
  CHECK(cfg.out == "-");
  CHECK(cfg.format == OutputFormat::Csv);
}

TEST_CASE("full config round") {
  const RunConfig cfg = parse_config(
      "# run description\n"
      "T1 = 0.20   # trailing comment\n"
      "L1 = 6.5e-3\n"
      "\n"
      "l = 0.5\n"
      "x = 0.111\n"
      "pump_sign = negative\n"
      "T2 = 0.9\n"
      "L2 = 0.12\n"
      "la = 0.1\n"
      "lb = 0.3\n"
      "xi = 0.985\n"
      "rho = 0.99\n"
      "command = sweep-freq\n"
      "f = 2.5e6\n"
      "fmin = 2e5\n"
      "fmax = 6e6\n"
      "n = 250\n"
      "grid = 51\n"
      "spacing = log\n"
      "baseline = same-loss\n"
      "out = run.json\n"
      "format = json\n");
  CHECK(cfg.opo.pump_sign == PumpSign::Negative);
  REQUIRE(cfg.detection.has_value());
  CHECK(cfg.detection->xi == 0.985);
  CHECK(cfg.detection->rho == 0.99);
  CHECK(cfg.command == Command::SweepFreq);
  CHECK(cfg.f_hz == 2.5e6);
  CHECK(cfg.f_min_hz == 2e5);
  CHECK(cfg.f_max_hz == 6e6);
  CHECK(cfg.n_points == 250);
  CHECK(cfg.t2_grid == 51);
  CHECK(cfg.spacing == GridSpacing::Log);
  CHECK(cfg.baseline == Baseline::SameLoopLoss);
  CHECK(cfg.out == "run.json");
  CHECK(cfg.format == OutputFormat::Json);
}

TEST_CASE("empty document lists the required keys") {
  try {
    parse_config("# nothing here\n\n");
    FAIL("expected ConfigParseError");
  } catch (const ConfigParseError& e) {
    for (const char* key : {"T1", "L1", "l", "x", "T2", "L2", "la", "lb"}) {
      CHECK(mentions(e, key));
    }
  }
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("unknown key") {
    try {
      parse_config(with_line("bogus = 3\n"));
      FAIL("expected ConfigParseError");
    } catch (const ConfigParseError& e) {
      CHECK(e.line() == 9);
      CHECK(mentions(e, "bogus"));
    }
  }
  SUBCASE("duplicate key") {
    try {
      parse_config(with_line("T1 = 0.2\n"));
      FAIL("expected ConfigParseError");
    } catch (const ConfigParseError& e) {
      CHECK(e.line() == 9);
      CHECK(mentions(e, "duplicate"));
    }
  }
  SUBCASE("missing equals") {
    CHECK_THROWS_AS(parse_config(with_line("grid 12\n")), ConfigParseError);
  }
  SUBCASE("bad number") {
    try {
      parse_config(with_line("f = fast\n"));
      FAIL("expected ConfigParseError");
    } catch (const ConfigParseError& e) {
      CHECK(e.line() == 9);
      CHECK(mentions(e, "not a number"));
    }
  }
  SUBCASE("bad integer") {
    CHECK_THROWS_AS(parse_config(with_line("n = 4.5\n")), ConfigParseError);
  }
  SUBCASE("bad enum value") {
    try {
      parse_config(with_line("format = yaml\n"));
      FAIL("expected ConfigParseError");
    } catch (const ConfigParseError& e) {
      CHECK(mentions(e, "csv"));
      CHECK(mentions(e, "json"));
    }
  }
  SUBCASE("missing value") {
    CHECK_THROWS_AS(parse_config(with_line("out =\n")), ConfigParseError);
  }
}

TEST_CASE("bounds violations name the field and bound") {
  try {
    parse_config(
        "T1 = 0.12\nL1 = 5e-3\nl = 0.5\nx = 0.1\n"
        "T2 = 1.5\nL2 = 0.05\nla = 0.25\nlb = 0.25\n");
    FAIL("expected InvalidParameterError");
  } catch (const InvalidParameterError& e) {
    CHECK(mentions(e, "T2"));
    CHECK(mentions(e, "(0, 1]"));
  }
}

TEST_CASE("pump above threshold is a threshold error") {
  CHECK_THROWS_AS(parse_config(
                      "T1 = 0.12\nL1 = 5e-3\nl = 0.5\nx = 1.2\n"
                      "T2 = 0.8\nL2 = 0.05\nla = 0.25\nlb = 0.25\n"),
                  ThresholdError);
}

TEST_CASE("detection key combinations") {
  SUBCASE("eta alone") {
    const RunConfig cfg = parse_config(with_line("eta = 0.961\n"));
    REQUIRE(cfg.detection.has_value());
    CHECK(cfg.detection->rho == 1.0);
    CHECK(cfg.detection->eta() == doctest::Approx(0.961).epsilon(1e-15));
  }
  SUBCASE("xi and rho together") {
    const RunConfig cfg = parse_config(with_line("xi = 0.985\nrho = 0.99\n"));
    REQUIRE(cfg.detection.has_value());
    CHECK(cfg.detection->eta() == doctest::Approx(0.96052275).epsilon(1e-15));
  }
  SUBCASE("xi without rho") {
    CHECK_THROWS_AS(parse_config(with_line("xi = 0.985\n")), ConfigParseError);
  }
  SUBCASE("eta excludes xi and rho") {
    CHECK_THROWS_AS(parse_config(with_line("eta = 0.961\nxi = 0.985\nrho = 0.99\n")),
                    ConfigParseError);
  }
}

TEST_CASE("preset key pairs with the reproduce command only") {
  CHECK_THROWS_AS(parse_config(with_line("preset = fig4\n")), InvalidParameterError);
  CHECK_THROWS_AS(parse_config(with_line("command = reproduce\n")),
                  InvalidParameterError);
  const RunConfig cfg =
      parse_config(with_line("command = reproduce\npreset = fig4\n"));
  CHECK(cfg.command == Command::Reproduce);
  CHECK(cfg.preset == "fig4");
}

TEST_CASE("run fields render every run-level key once") {
  const RunConfig cfg = parse_config(kMinimal);
  const auto fields = cfg.run_fields();
  const char* expected[] = {"command", "fmin", "fmax", "n",   "grid",
                            "spacing", "baseline", "out", "format"};
  REQUIRE(fields.size() == 9);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    CHECK(fields[i].first == expected[i]);
  }
}

TEST_CASE("missing config file is an io error") {
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), IoError);
}
