#include "doctest.h"

#include "levy/model_io.hpp"
#include "levy/zero_set.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace levy;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for:\n" << text);
  return ParseError(0, 0, "", "");
}

}  // namespace

TEST_SUITE("model examples") {
  TEST_CASE("a one-dimensional model with one atom") {
    const auto m = parse_model("dim = 1\natom = 1 @ (1)\n");
    CHECK(m.dimension == 1);
    CHECK(m.is_exact());
    REQUIRE(m.atoms.size() == 1);
    CHECK(m.atoms[0].mass == ModelValue::rational(1));
    CHECK(m.drift == std::vector<ModelValue>{ModelValue::rational(0)});
    const auto t = m.triplet();
    CHECK(t.is_exact());
    CHECK(equals(zero_set_exact(t), lattice_preimage({{Rational(1)}}, {{Rational(1)}}, 1)));
  }

  TEST_CASE("a drift against a half-size jump") {
    const auto m = parse_model("dim = 1\ndrift = (-1/4)\natom = 1/2 @ (1/2)\n");
    CHECK(m.drift[0] == ModelValue::rational(Rational(-1, 4)));
    // b_eff = b - a b_1 = -1/2: the jump compensator adds to the drift.
    const auto r = bounded_reduction(m.triplet());
    CHECK_FALSE(r.measure.has_value());
    CHECK(decide_liouville(m.triplet()).holds);
    const auto plus = parse_model("dim = 1\ndrift = (1/4)\natom = 1/2 @ (1/2)\n");
    CHECK(bounded_reduction(plus.triplet()).measure.has_value());
    CHECK_FALSE(decide_liouville(plus.triplet()).holds);
  }

  TEST_CASE("a tagged irrational forces numeric mode") {
    const auto m = parse_model("dim = 1\natom = 1 @ (sqrt:2)\n");
    CHECK_FALSE(m.is_exact());
    CHECK(m.atoms[0].location[0].tag == "sqrt");
    CHECK(m.atoms[0].location[0].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_FALSE(m.triplet().is_exact());
    CHECK(decide_liouville(m.triplet()).method == VerdictMethod::NumericHeuristic);
    CHECK(parse_model("dim = 1\natom = 1 @ (pi:1/2)\n").atoms[0].location[0].value ==
          doctest::Approx(M_PI / 2).epsilon(1e-15));
  }

  TEST_CASE("decimals, comments and sections") {
    const auto m = parse_model(R"(# comment
name = demo   # trailing comment
dim = 2
drift = (0.25, -1)
covariance = (1, 0, 0, 2)
atom = 3/6 @ (1, 0)

[bernstein]
family = custom
a = 1/2
atom = 1 @ 2

[grid]
period = 2
points = 32

[checks]
harmonic = 1e-9
)");
    CHECK(m.name == "demo");
    CHECK(m.drift[0] == ModelValue::rational(Rational(1, 4)));
    CHECK(m.atoms[0].mass == ModelValue::rational(Rational(1, 2)));
    REQUIRE(m.bernstein);
    CHECK(m.bernstein->family == "custom");
    CHECK(m.bernstein->atoms.size() == 1);
    REQUIRE(m.grid);
    CHECK(m.grid->points == 32);
    REQUIRE(m.checks.size() == 1);
    CHECK(m.checks[0].tolerance == 1e-9);
  }
}

TEST_SUITE("model errors") {
  TEST_CASE("errors carry line, column and field") {
    auto e = parse_error("dim = 2\ndrift = (1, x)\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
    CHECK(e.field() == "drift[1]");

    e = parse_error("dim = 1\natom = 1 @ (1)\natom = -1 @ (2)\n");
    CHECK(e.line() == 3);
    CHECK(e.field() == "measure.atom[1].mass");

    e = parse_error("dim = 2\natom = 1 @ (1)\n");
    CHECK(e.line() == 2);
    CHECK(e.field() == "measure.atom[0].location");

    e = parse_error("dim = 1\ncovariance = (-1)\n");
    CHECK(e.field() == "covariance");

    e = parse_error("dim = 1\ncolour = red\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);

    e = parse_error("atom = 1 @ (1)\n");
    CHECK(e.field() == "dim");

    e = parse_error("dim = 1\n[grid]\nperiod = 1\npoints = 12\n");
    CHECK(e.field() == "grid.points");

    e = parse_error("dim = 1\n[bernstein]\nfamily = power\nalpha = 3/2\n");
    CHECK(e.field().rfind("bernstein", 0) == 0);

    e = parse_error("dim = 1\ndim = 1\n");
    CHECK(e.line() == 2);

    e = parse_error("dim = 1\natom = 1 @ (sqrt:-2)\n");
    CHECK(e.line() == 2);

    e = parse_error("dim = 1\n[checks]\nharmonic = 0\n");
    CHECK(e.field() == "checks.harmonic");
  }

  TEST_CASE("the message names the position") {
    const auto e = parse_error("dim = 1\ndrift = (1/0)\n");
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  TEST_CASE("missing files are reported") { CHECK_THROWS(load_model("/nonexistent/model.txt")); }
}

TEST_SUITE("model properties") {
  TEST_CASE("round trip through the canonical form") {
    const char* sources[] = {
        "dim = 1\natom = 2/4 @ (0.5)\ndrift = (1/4)\n",
        "name = x\ndim = 2\ncovariance = (1, 1/2, 1/2, 1)\natom = 1 @ (sqrt:2, pi:1)\n",
        "dim = 1\natom = 1 @ (1)\n[bernstein]\nfamily = resolvent\ntau = 3\n[grid]\nperiod = 1/2\npoints = 8\n"
        "[checks]\nresolvent = 1e-8\nharmonic = 1e-10\n",
        "dim = 1\n[bernstein]\nfamily = custom\na = 0\natom = 1 @ 2\natom = 1/3 @ 5\n",
    };
    for (const char* s : sources) {
      const auto m    = parse_model(s);
      const auto text = serialize_model(m);
      const auto back = parse_model(text);
      CHECK(back == m);
      CHECK(serialize_model(back) == text);
      CHECK(model_hash(back) == model_hash(m));
    }
  }

  TEST_CASE("hash distinguishes models and ignores formatting") {
    const auto a = parse_model("dim = 1\natom = 1 @ (1)\n");
    const auto b = parse_model("# same\ndim=1\n  atom = 2/2 @ ( 1 )\n");
    const auto c = parse_model("dim = 1\natom = 1 @ (2)\n");
    CHECK(model_hash(a) == model_hash(b));
    CHECK(model_hash(a) != model_hash(c));
    CHECK(model_hash(a).size() == 16);
  }

  TEST_CASE("reports are byte-identical across runs") {
    for (const char* s : {"dim = 1\natom = 1 @ (1)\n", "dim = 2\ncovariance = (1, 0, 0, 0)\natom = 1 @ (0, 1)\n",
                          "dim = 1\ncovariance = (1)\n"}) {
      const auto m  = parse_model(s);
      const auto r1 = report_json(build_report(m));
      const auto r2 = report_json(build_report(parse_model(serialize_model(m))));
      CHECK(r1 == r2);
      CHECK(r1.find("\"hash\"") != std::string::npos);
      CHECK(build_report(m).all_pass());
    }
  }

  TEST_CASE("report verdicts and checks") {
    const auto r = build_report(parse_model("dim = 1\natom = 1 @ (1)\n"));
    CHECK_FALSE(r.verdict.holds);
    CHECK(r.verdict.method == VerdictMethod::Exact);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, c.name << ": " << c.detail);
    const auto n = build_report(parse_model("dim = 1\natom = 1 @ (1)\natom = 1 @ (sqrt:2)\n"));
    CHECK(n.verdict.method == VerdictMethod::NumericHeuristic);
    CHECK(report_json(n).find("numeric-heuristic") != std::string::npos);
  }
}
