#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hankelmc/solver.hpp"

namespace hmc {

enum class Mode { Matrix2D, Array3D, Special };

std::string to_string(Mode m);
Mode parse_mode(const std::string &text);

/// Everything a phase-transition run depends on. The grid it produces is a
/// pure function of this struct.
struct RunConfig {
    Mode mode = Mode::Matrix2D;
    /// {d, n} for 2d/special, {n, s, d} for 3d.
    std::vector<Eigen::Index> dims{16, 47};
    /// {n1, n2} or {L1, K1, L2, K2}; empty picks the square-ish default.
    std::vector<Eigen::Index> shape;
    std::vector<double> p_values;
    std::vector<int> r_values;
    int trials = 50;
    std::uint64_t seed = 1;
    SolverConfig solver;
    /// Replace `adversarial_rows` rows of X_hat with two-spike rows (2d only).
    bool adversarial = false;
    int adversarial_rows = 2;
    /// Worker threads; 0 uses the hardware concurrency.
    int threads = 0;

    std::string csv_path, pgm_path, json_path;

    /// Throws DomainError / DimensionError on inconsistent settings.
    void validate() const;

    HankelShape hankel_shape() const;
    TwoLevelShape two_level_shape() const;
};

/// 18 equispaced values 0.10, 0.15, ..., 0.95.
std::vector<double> default_p_values();
/// 1..24 for 2d, 1..12 for 3d, {1} for special.
std::vector<int> default_r_values(Mode mode);

/// Fills empty grids with the defaults.
RunConfig with_defaults(RunConfig cfg);

RunConfig run_config_from_json(const std::string &text);
std::string run_config_to_json(const RunConfig &cfg);

struct TrialRecord {
    std::size_t r_index = 0, p_index = 0;
    int trial = 0;
    bool success = false;
    bool converged = false;
    int iterations = 0;
    double relative_error = 0.0;
    std::string error; ///< set when the trial threw
};

struct PhaseGrid {
    std::vector<double> p_values;
    std::vector<int> r_values;
    int trials = 0;
    /// |r| x |p|; rows follow r_values.
    IMatrix successes;
    /// Trials that stopped at max_iter (counted by their error, not dropped).
    IMatrix nonconverged;
    std::uint64_t seed = 0;
    std::string config_json;

    double rate(std::size_t r_index, std::size_t p_index) const;
};

/// Per-trial seed: derive_seed(seed, {r_index, p_index, trial}).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t r_index, std::size_t p_index, int trial);

/// Runs one trial of the configured experiment.
TrialRecord run_trial(const RunConfig &cfg, std::size_t r_index, std::size_t p_index, int trial);

using TrialCallback = std::function<void(const TrialRecord &)>;

/// Runs every (r, p, trial) on a worker pool. Cells are written to disjoint
/// slots, so the grid does not depend on scheduling. The callback (if any)
/// is invoked under a lock as trials finish.
PhaseGrid phase_transition_run(const RunConfig &cfg, const TrialCallback &on_trial = {});

std::string grid_to_csv(const PhaseGrid &grid);
/// Reads a CSV produced by grid_to_csv into p_values, r_values and rates.
struct GridRates {
    std::vector<double> p_values;
    std::vector<int> r_values;
    Eigen::MatrixXd rates;
};
GridRates grid_from_csv(const std::string &text);

/// Plain P2 image, one pixel per cell, gray = round(255 * rate), r grows
/// downward and p rightward.
std::string grid_to_pgm(const PhaseGrid &grid);
std::string grid_to_json(const PhaseGrid &grid);

void emit_grid_csv(const PhaseGrid &grid, const std::filesystem::path &path);
void emit_heatmap_pgm(const PhaseGrid &grid, const std::filesystem::path &path);

/// Counts pairs of neighbouring p cells (same r) whose rate drops, and the
/// largest drop in trials.
struct MonotonicityReport {
    int inversions = 0;
    int worst_drop = 0;
};
MonotonicityReport monotonicity(const PhaseGrid &grid);

} // namespace hmc
