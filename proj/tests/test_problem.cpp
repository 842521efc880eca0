#include <catch2/catch_amalgamated.hpp>

#include "frobmult/problem.hpp"

using namespace frobmult;

namespace {

const char* kMinimal = R"(
# F_2[x,y] with the Koszul complex on x, y
[ring]
p = 2
vars = ["x", "y"]
ideal = []

[complex K]
koszul = ["x", "y"]

[module k]
generators = ["x", "y"]

[options]
emax = 4
)";

}  // namespace

TEST_CASE("minimal problem file parses") {
  Problem p = parse_problem(kMinimal);
  CHECK(p.ring->p() == 2);
  CHECK(p.ring->dim() == 2);
  REQUIRE(p.find_complex("K"));
  CHECK(p.find_complex("K")->validation().ok);
  CHECK(p.find_module("R"));  // built in
  CHECK(p.find_module("k"));
  CHECK(p.options.e_max == 4u);
}

TEST_CASE("derived complexes and raw grids") {
  Problem p = parse_problem(R"(
[ring]
p = 3
vars = ["x", "y"]

[complex A]
koszul = ["x"]

[complex B]
tensor = ["A", "A"]

[complex C]
shift = ["B", 1]

[complex D]
frobenius = ["A", 2]

[complex RAW]
lo = 0
shifts = [[0], [1, 1]]
d1 = [["x", "y"]]
)");
  CHECK(p.find_complex("B")->rank(1) == 2);
  CHECK(p.find_complex("C")->lo() == 1);
  CHECK(*p.find_complex("D") ==
        frobenius(*p.find_complex("A"), 2));
  const FreeComplex* raw = p.find_complex("RAW");
  REQUIRE(raw);
  CHECK(raw->validation().ok);
  CHECK(raw->differential(1).at(0, 1) == p.ring->parse("y"));
}

TEST_CASE("diagnostics carry names and positions") {
  SECTION("undefined complex") {
    try {
      parse_problem(R"(
[ring]
p = 2
vars = ["x"]

[complex T]
tensor = ["Z", "Z"]
)");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(std::string(e.what()).find("Z") != std::string::npos);
      CHECK(e.line == 7);
    }
  }
  SECTION("inhomogeneous grid entry") {
    try {
      parse_problem(R"(
[ring]
p = 2
vars = ["x", "y", "u", "v"]

[complex W]
shifts = [[0], [2]]
d1 = [["x*y - u"]]
)");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      std::string msg = e.what();
      CHECK(msg.find("x*y - u") != std::string::npos);
      CHECK(msg.find("row 0") != std::string::npos);
      CHECK(e.line == 8);
    }
  }
  SECTION("undefined probe module") {
    CHECK_THROWS_AS(parse_problem(R"(
[ring]
p = 2
vars = ["x"]

[options]
probes = ["M"]
)"),
                    parse_error);
  }
  SECTION("duplicate names") {
    CHECK_THROWS_AS(parse_problem(R"(
[ring]
p = 2
vars = ["x"]

[complex A]
koszul = ["x"]

[module A]
generators = ["x"]
)"),
                    parse_error);
  }
  SECTION("polynomial syntax error points at the file line") {
    try {
      parse_problem(R"(
[ring]
p = 2
vars = ["x"]

[complex A]
koszul = ["x +"]
)");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line == 7);
    }
  }
  SECTION("non-prime modulus") {
    CHECK_THROWS_AS(parse_problem("[ring]\np = 4\nvars = [\"x\"]\n"),
                    parse_error);
  }
}

TEST_CASE("run: spec outputs") {
  RunOptions opts;
  opts.x = "K";
  opts.y = "R";
  SECTION("chi") {
    auto [out, code] = run_safe("chi", kMinimal, opts);
    CHECK(code == 0);
    CHECK(out["schema"] == 1);
    CHECK(out["chi"] == 1);
  }
  SECTION("dutta") {
    opts.u_forced_auto = true;
    opts.e_max = 4;
    auto [out, code] = run_safe("dutta", kMinimal, opts);
    CHECK(code == 0);
    CHECK(out["dutta"] == "1/1");
    CHECK(out["u"] == 0);
    CHECK(out["components"] == ordered_json::array({"1/1"}));
    CHECK(out["table"]["values"] == ordered_json::array({1, 4, 16, 64, 256}));
  }
  SECTION("numvan") {
    opts.e_max = 1;
    auto [out, code] = run_safe("numvan", kMinimal, opts);
    CHECK(code == 0);
    CHECK(out["pass"] == true);
    CHECK(out["lhs"] == 4);
    CHECK(out["rhs"] == 4);
  }
  SECTION("chi against the residue field") {
    // alternating sum of Koszul binomials: 1 - 2 + 1
    opts.y = "k";
    auto [out, code] = run_safe("chi", kMinimal, opts);
    CHECK(code == 0);
    CHECK(out["chi"] == 0);
  }
  SECTION("decompose") {
    opts.e_max = 3;
    auto [out, code] = run_safe("decompose", kMinimal, opts);
    CHECK(code == 0);
    CHECK(out["reconstructs"] == true);
    CHECK(out["components"] == ordered_json::array({"1/1"}));
  }
  SECTION("vdim and fixed-point") {
    auto [v, cv] = run_safe("vdim", kMinimal, opts);
    CHECK(cv == 0);
    CHECK(v["u_obs"] == 0);
    CHECK(v["consistent"] == true);
    auto [f, cf] = run_safe("fixed-point", kMinimal, opts);
    CHECK(cf == 0);
    CHECK(f["pass"] == true);
  }
  SECTION("homology at one degree") {
    opts.e = 0;
    auto [out, code] = run_safe("homology", kMinimal, opts);
    CHECK(code == 0);
    CHECK(out["homology"]["length"] == 1);
  }
  SECTION("validate") {
    auto [out, code] = run_safe("validate", kMinimal, RunOptions{});
    CHECK(code == 0);
    CHECK(out["ok"] == true);
  }
}

TEST_CASE("run: exit codes") {
  RunOptions opts;
  opts.x = "K";
  opts.y = "R";
  SECTION("parse error is 2") {
    auto [out, code] = run_safe("chi", "[ring]\np = 2\n", opts);
    CHECK(code == 2);
    CHECK(out["error"]["code"] == "parse");
    CHECK(out["error"].contains("line"));
  }
  SECTION("undefined name is 2") {
    opts.y = "Z";
    auto [out, code] = run_safe("chi", kMinimal, opts);
    CHECK(code == 2);
    CHECK(std::string(out["error"]["message"]).find("Z") != std::string::npos);
  }
  SECTION("incompatible pair is 3") {
    const char* text = R"(
[ring]
p = 5
vars = ["x", "y"]
ideal = ["x*y"]

[complex A]
koszul = ["x"]

[module Y]
generators = ["y"]
)";
    opts.x = "A";
    opts.y = "Y";
    auto [out, code] = run_safe("chi", text, opts);
    CHECK(code == 3);
    CHECK(out["error"]["code"] == "incompatible");
  }
  SECTION("capacity overflow is 4") {
    const char* text = R"(
[ring]
p = 2
vars = ["x"]

[complex A]
koszul = ["x"]

[complex B]
frobenius = ["A", 60]
)";
    opts.x = "B";
    auto [out, code] = run_safe("chi", text, opts);
    CHECK(code == 4);
    CHECK(out["error"]["code"] == "capacity");
  }
}

TEST_CASE("byte-identical output for identical input") {
  RunOptions opts;
  opts.x = "K";
  opts.y = "R";
  opts.e_max = 3;
  auto [a, ca] = run_safe("dutta", kMinimal, opts);
  auto [b, cb] = run_safe("dutta", kMinimal, opts);
  CHECK(a.dump() == b.dump());
  auto [v1, c1] = run_safe("vdim", kMinimal, opts);
  auto [v2, c2] = run_safe("vdim", kMinimal, opts);
  CHECK(v1.dump() == v2.dump());
}
