#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "hankelmc/experiments.hpp"
#include "hankelmc/io.hpp"

using namespace hmc;

namespace {

RunConfig small_config() {
    RunConfig cfg;
    cfg.dims = {4, 9};
    cfg.p_values = {0.5, 0.9};
    cfg.r_values = {1, 2};
    cfg.trials = 2;
    cfg.seed = 17;
    cfg.threads = 2;
    cfg.solver.max_iter = 300;
    return cfg;
}

PhaseGrid handmade_grid(int successes) {
    PhaseGrid g;
    g.p_values = {0.5};
    g.r_values = {1};
    g.trials = 4;
    g.successes = IMatrix::Constant(1, 1, successes);
    g.nonconverged = IMatrix::Zero(1, 1);
    return g;
}

} // namespace

TEST_CASE("modes and default grids") {
    CHECK(parse_mode("2d") == Mode::Matrix2D);
    CHECK(parse_mode("3d") == Mode::Array3D);
    CHECK(parse_mode("special") == Mode::Special);
    CHECK(to_string(Mode::Array3D) == "3d");
    CHECK_THROWS(parse_mode("4d"));

    const auto p = default_p_values();
    REQUIRE(p.size() == 18u);
    CHECK(p.front() == doctest::Approx(0.10));
    CHECK(p.back() == doctest::Approx(0.95));
    for (std::size_t i = 1; i < p.size(); ++i)
        CHECK(p[i] - p[i - 1] == doctest::Approx(0.05));
    CHECK(default_r_values(Mode::Matrix2D).size() == 24u);
    CHECK(default_r_values(Mode::Array3D).back() == 12);
    CHECK(default_r_values(Mode::Special) == std::vector<int>{1});
}

TEST_CASE("config validation") {
    RunConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.dims = {4, 9, 9};
    CHECK_THROWS(cfg.validate());
    cfg = small_config();
    cfg.r_values = {6};
    CHECK_THROWS(cfg.validate());
    cfg = small_config();
    cfg.p_values = {1.5};
    CHECK_THROWS(cfg.validate());
    cfg = small_config();
    cfg.mode = Mode::Array3D;
    cfg.dims = {9, 9, 4};
    cfg.adversarial = true;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("config JSON round-trip and strictness") {
    RunConfig cfg = small_config();
    cfg.csv_path = "out/grid.csv";
    const RunConfig back = run_config_from_json(run_config_to_json(cfg));
    CHECK(back.dims == cfg.dims);
    CHECK(back.p_values == cfg.p_values);
    CHECK(back.r_values == cfg.r_values);
    CHECK(back.trials == cfg.trials);
    CHECK(back.seed == cfg.seed);
    CHECK(back.solver.max_iter == 300);
    CHECK(back.csv_path == "out/grid.csv");

    const RunConfig scalar = run_config_from_json(R"({"mode":"special","p":0.4,"r":1})");
    CHECK(scalar.mode == Mode::Special);
    CHECK(scalar.p_values == std::vector<double>{0.4});
    CHECK_THROWS_AS(run_config_from_json(R"({"trails": 3})"), ParseError);
    CHECK_THROWS_AS(run_config_from_json("{"), ParseError);
}

TEST_CASE("trials = 0 gives an all-zero grid") {
    RunConfig cfg = small_config();
    cfg.trials = 0;
    const PhaseGrid g = phase_transition_run(cfg);
    CHECK(g.successes.rows() == 2);
    CHECK(g.successes.cols() == 2);
    CHECK(g.successes.isZero());
    CHECK(g.rate(0, 0) == 0.0);
}

TEST_CASE("grids are deterministic and independent of the thread count") {
    RunConfig cfg = small_config();
    const PhaseGrid a = phase_transition_run(cfg);
    cfg.threads = 1;
    const PhaseGrid b = phase_transition_run(cfg);
    CHECK(a.successes == b.successes);
    CHECK(a.nonconverged == b.nonconverged);
    CHECK(grid_to_csv(a) == grid_to_csv(b));
    for (Eigen::Index i = 0; i < a.successes.size(); ++i) {
        CHECK(a.successes(i) >= 0);
        CHECK(a.successes(i) <= cfg.trials);
    }
    CHECK(trial_seed(1, 0, 0, 0) != trial_seed(1, 0, 0, 1));
    CHECK(trial_seed(1, 2, 3, 4) == trial_seed(1, 2, 3, 4));
}

TEST_CASE("single trials are reproducible") {
    const RunConfig cfg = small_config();
    const TrialRecord a = run_trial(cfg, 1, 1, 0), b = run_trial(cfg, 1, 1, 0);
    CHECK(a.relative_error == b.relative_error);
    CHECK(a.iterations == b.iterations);
    CHECK(a.success == (a.relative_error < cfg.solver.success_threshold));
}

TEST_CASE("PGM pixels") {
    CHECK(grid_to_pgm(handmade_grid(4)) == "P2\n1 1\n255\n255\n");
    CHECK(grid_to_pgm(handmade_grid(0)) == "P2\n1 1\n255\n0\n");
    CHECK(grid_to_pgm(handmade_grid(1)).find("\n64\n") != std::string::npos);
}

TEST_CASE("CSV layout and round trip") {
    PhaseGrid g;
    g.p_values = {0.1, 0.35};
    g.r_values = {1, 7};
    g.trials = 3;
    g.successes.resize(2, 2);
    g.successes << 3, 2, 1, 0;
    g.nonconverged = IMatrix::Zero(2, 2);
    const std::string csv = grid_to_csv(g);
    CHECK(csv.rfind("r/p,0.100000,0.350000\n1,1.000000,0.666667\n", 0) == 0);
    const GridRates back = grid_from_csv(csv);
    CHECK(back.p_values == std::vector<double>{0.1, 0.35});
    CHECK(back.r_values == g.r_values);
    CHECK(back.rates(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));

    PhaseGrid again;
    again.p_values = back.p_values;
    again.r_values = back.r_values;
    again.trials = 3;
    again.successes = (back.rates * 3.0).array().round().cast<int>();
    again.nonconverged = IMatrix::Zero(2, 2);
    CHECK(grid_to_csv(again) == csv);
}

TEST_CASE("emitters write files and fail on unwritable paths") {
    const auto dir = std::filesystem::temp_directory_path() / "hankelmc_unit" / "grid";
    const PhaseGrid g = handmade_grid(2);
    emit_grid_csv(g, dir / "g.csv");
    emit_heatmap_pgm(g, dir / "g.pgm");
    CHECK(load_text(dir / "g.csv") == grid_to_csv(g));
    CHECK(load_text(dir / "g.pgm") == grid_to_pgm(g));
    CHECK_THROWS_AS(emit_grid_csv(g, "/proc/forbidden/g.csv"), IoError);
}

TEST_CASE("monotonicity counts drops along p") {
    PhaseGrid g;
    g.p_values = {0.1, 0.2, 0.3, 0.4};
    g.r_values = {1, 2};
    g.trials = 10;
    g.successes.resize(2, 4);
    g.successes << 0, 5, 4, 10, 0, 0, 3, 1;
    const auto m = monotonicity(g);
    CHECK(m.inversions == 2);
    CHECK(m.worst_drop == 2);
}
