#include "tiltfmt/runner.hpp"
#include "tiltfmt/scenario.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace tiltfmt;

namespace {

const char* demo_text = R"(# exercise every block type
seed 7

context
  g = 3
  r = 1
  dX = 0
  dY = 0
  degX = 6
  degY = 6   # optional, checked against the context invariant
end

vector E
  base = 0
  v = 6, 6, 6, 6
end

vector O
  v = 6, 0, 0, 0
end

vector W
  v = 0, 6, 6, 0
end

task walls
  x = E
  y = O
  expect = circle
  center = 1/2
  radius_sq = 1/4
end

task nu
  input = E
  b = 0
  alpha = 1
  expect = 0
end

task charge
  input = O
  omega = i*(2)
  expect = i*(-8)
end

task transform
  input = E
  expect_v = 6, -6, 6, -6
  expect_base = 0
end

task bg
  input = E
  b = 0
  alpha = 1
  expect = holds
  expect_defect = 0
end

task bg-chain
  lambda = 1
  input = W
end

task bg-chain
  lambda = 1
  randomized = 20
end

task equiv-params
  k = 1
  lambda = 3/2
end

task polarization
  a = 2
  expect_rank = 8
  expect_slope = -1/2
end
)";

}  // namespace

TEST_CASE("parsing a full scenario") {
    const Scenario sc = parse_scenario(demo_text);
    REQUIRE(sc.seed == 7);
    REQUIRE(sc.ctx.g == 3);
    REQUIRE(sc.ctx.degY == 6);
    REQUIRE(sc.vectors.size() == 3);
    REQUIRE(sc.find_vector("E") != nullptr);
    REQUIRE(sc.find_vector("O")->v[0] == Scalar{6});
    REQUIRE(sc.find_vector("missing") == nullptr);
    REQUIRE(sc.tasks.size() == 9);
    REQUIRE(sc.tasks[0].kind == Task::Kind::walls);
    REQUIRE(sc.tasks[0].expect_kind == Wall::Kind::circle);
    REQUIRE(sc.tasks[1].expect_value == Scalar{0});
    REQUIRE(sc.tasks[5].input == "W");
    REQUIRE(sc.tasks[6].randomized == 20);
    REQUIRE(sc.tasks[8].expect_slope == Rational(-1, 2));
}

TEST_CASE("render and reparse") {
    const Scenario sc = parse_scenario(demo_text);
    const std::string text = render_scenario(sc);
    const Scenario again = parse_scenario(text);
    REQUIRE(again == sc);
    REQUIRE(render_scenario(again) == text);
}

TEST_CASE("parse errors carry line positions") {
    auto fails_with = [](const std::string& text, const std::string& needle) {
        REQUIRE_THROWS_WITH(parse_scenario(text), Catch::Matchers::ContainsSubstring(needle));
    };

    fails_with("vector E\n  v = 1, 1\nend\n", "needs a context block");
    const std::string ctx = "context\n  g = 3\n  r = 1\n  degX = 6\nend\n";
    fails_with(ctx + "vector E\n  v = 1, 1\nend\n", "exactly g + 1 components");
    fails_with(ctx + "vector E\n  v = 1, 1\nend\n", "line 6");
    fails_with(ctx + "task nu\n  input = F\n  b = 0\n  alpha = 1\nend\n", "unknown vector 'F'");
    fails_with(ctx + "task nu\n  input = F\nend\n", "line 7");
    fails_with(ctx + "vector E\n  v = 0, 0, 0, 1\n", "never closed");
    fails_with(ctx + "vector E\n  v = 0, 0, 0, 1\nend\nvector E\n  v = 0, 0, 0, 1\nend\n",
               "duplicate vector");
    fails_with(ctx + "vector E\n  v = 0, 0, zz, 1\nend\n", "scalar syntax at column");
    fails_with(ctx + "vector E\n  v = 0, 0, 0, 1\n  extra = 2\nend\n", "unknown field 'extra'");
    fails_with(ctx + "task frobnicate\nend\n", "unknown task kind");
    fails_with(ctx + "bogus\n", "expected 'seed', 'context', 'vector' or 'task'");
    fails_with(ctx + "vector E\n  v = 0, 0, 0, 1\n  v = 0, 0, 0, 2\nend\n", "duplicate field");
    fails_with("seed -2\ncontext\n  g = 3\n  r = 1\n  degX = 6\nend\n", "nonnegative");
    fails_with("context\n  g = 3\n  r = 1\nend\n", "context needs degX");
    fails_with("context\n  g = 3\n  r = 1\n  degX = 6\n  degY = 5\nend\n",
               "(degX/g!)*(degY/g!) = 1/r^2");
    fails_with("context\n  g = 0\n  r = 1\n  degX = 6\nend\n", "dimension >= 1");

    const std::string e = ctx + "vector E\n  v = 0, 0, 0, 1\nend\n";
    fails_with(e + "task nu\n  input = E\n  b = 0\n  alpha = 0\nend\n", "alpha > 0");
    fails_with(e + "task charge\n  input = E\n  omega = 1\nend\n", "Im <= 0");
    fails_with(e + "task charge\n  input = E\n  omega = i\n  k = 5\nend\n", "out of range");
    fails_with(e + "task bg-chain\n  lambda = 1\nend\n", "exactly one of input or randomized");
    fails_with(e + "task bg-chain\n  lambda = 1\n  input = E\n  randomized = 4\nend\n",
               "exactly one of input or randomized");
    fails_with(e + "task walls\n  x = E\n  y = E\n  expect = parabola\nend\n", "wall kind");
    fails_with(e + "task equiv-params\n  k = 3\n  lambda = 1\nend\n", "1 <= k <= g - 1");
    fails_with(e + "task polarization\n  a = -2\nend\n", "a > 0");
}

TEST_CASE("running a scenario") {
    const Scenario sc = parse_scenario(demo_text);
    RunOptions opt;
    opt.scenario_name = "demo";
    opt.grid = 8;

    const RunResult r = run_scenario(sc, opt);
    INFO(r.report);
    REQUIRE(r.failures == 0);
    REQUIRE(r.exit_code() == 0);
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("scenario demo"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("seed 7"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("kind = circle"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("center_b = 1/2"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("nu at (b, alpha) = (0, 1) is 0"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("Z = i*(-8)"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("20/20 randomized inputs"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("omega_X = 3/4 + i*(3/4*sqrt3)"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("rank = 8"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("summary: 9 tasks, 0 failures"));

    REQUIRE(r.artifacts.size() == 2);
    REQUIRE(r.artifacts[0].filename == "demo-task1-wall.csv");
    REQUIRE(r.artifacts[1].filename == "demo-task1-wall.svg");
    REQUIRE_THAT(r.artifacts[0].contents,
                 Catch::Matchers::StartsWith("b,alpha,nu_x,nu_y,side"));
    REQUIRE_THAT(r.artifacts[1].contents, Catch::Matchers::StartsWith("<svg"));
    // 8x8 grid plus the header line
    REQUIRE(std::count(r.artifacts[0].contents.begin(), r.artifacts[0].contents.end(), '\n') == 65);

    // identical bytes on a second run
    const RunResult r2 = run_scenario(sc, opt);
    REQUIRE(r2.report == r.report);
    REQUIRE(r2.artifacts.size() == r.artifacts.size());
    REQUIRE(r2.artifacts[0].contents == r.artifacts[0].contents);
    REQUIRE(r2.artifacts[1].contents == r.artifacts[1].contents);

    // the seed override is visible and honored
    RunOptions seeded = opt;
    seeded.seed_override = 12345;
    const RunResult r3 = run_scenario(sc, seeded);
    REQUIRE_THAT(r3.report, Catch::Matchers::ContainsSubstring("seed 12345"));
    REQUIRE(r3.failures == 0);
}

TEST_CASE("failed expectations are reported, not thrown") {
    const std::string text =
        "context\n  g = 3\n  r = 1\n  degX = 6\nend\n"
        "vector E\n  v = 6, 6, 6, 6\nend\n"
        "vector O\n  v = 6, 0, 0, 0\nend\n"
        "task walls\n  x = E\n  y = O\n  expect = vertical_line\nend\n"
        "task nu\n  input = E\n  b = 0\n  alpha = 1\n  expect = 5\nend\n";
    const RunResult r = run_scenario(parse_scenario(text), RunOptions{});
    REQUIRE(r.failures == 2);
    REQUIRE(r.exit_code() == 1);
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("FAIL"));
    REQUIRE_THAT(r.report,
                 Catch::Matchers::ContainsSubstring("expected vertical_line, got circle"));
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("expected 5, got 0"));
}

TEST_CASE("runtime task errors become failures") {
    const std::string text =
        "context\n  g = 3\n  r = 1\n  degX = 6\nend\n"
        "vector E\n  base = i\n  v = 6, 0, 0, 0\nend\n"
        "task charge\n  input = E\n  omega = i\nend\n"
        "task equiv-params\n  k = 1\n  lambda = 1\nend\n";
    const Scenario sc = parse_scenario(text);
    const RunResult r = run_scenario(sc, RunOptions{});
    REQUIRE(r.failures == 1);
    REQUIRE_THAT(r.report, Catch::Matchers::ContainsSubstring("real base"));

    // a 4-fold context routes equiv-params through the float flag
    const std::string g4 =
        "context\n  g = 4\n  r = 1\n  degX = 6\nend\n"
        "task equiv-params\n  k = 1\n  lambda = 1\nend\n";
    RunOptions opt;
    const RunResult exact = run_scenario(parse_scenario(g4), opt);
    REQUIRE(exact.failures == 1);
    REQUIRE_THAT(exact.report, Catch::Matchers::ContainsSubstring("inexact root"));
    opt.float_mode = true;
    const RunResult floated = run_scenario(parse_scenario(g4), opt);
    INFO(floated.report);
    REQUIRE(floated.failures == 0);
    REQUIRE_THAT(floated.report, Catch::Matchers::ContainsSubstring("(float)"));
}
