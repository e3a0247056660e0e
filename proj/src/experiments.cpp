#include "hankelmc/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hankelmc/io.hpp"
#include "hankelmc/rng.hpp"
#include "hankelmc/signals.hpp"

namespace hmc {

using nlohmann::json;

namespace {

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

template <class T> T get_or(const json &j, const char *key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

} // namespace

std::string to_string(Mode m) {
    switch (m) {
    case Mode::Matrix2D:
        return "2d";
    case Mode::Array3D:
        return "3d";
    case Mode::Special:
        return "special";
    }
    return "2d";
}

Mode parse_mode(const std::string &text) {
    if (text == "2d")
        return Mode::Matrix2D;
    if (text == "3d")
        return Mode::Array3D;
    if (text == "special")
        return Mode::Special;
    throw DomainError("mode must be one of 2d, 3d, special (got '" + text + "')");
}

std::vector<double> default_p_values() {
    std::vector<double> p;
    for (int i = 0; i < 18; ++i)
        p.push_back((10 + 5 * i) / 100.0);
    return p;
}

std::vector<int> default_r_values(Mode mode) {
    const int top = mode == Mode::Matrix2D ? 24 : mode == Mode::Array3D ? 12 : 1;
    std::vector<int> r;
    for (int i = 1; i <= top; ++i)
        r.push_back(i);
    return r;
}

RunConfig with_defaults(RunConfig cfg) {
    if (cfg.p_values.empty())
        cfg.p_values = default_p_values();
    if (cfg.r_values.empty())
        cfg.r_values = default_r_values(cfg.mode);
    return cfg;
}

HankelShape RunConfig::hankel_shape() const {
    if (mode == Mode::Array3D || dims.size() != 2)
        throw DimensionError("hankel_shape: config is not two-dimensional");
    if (shape.empty())
        return HankelShape::for_length(dims[1]);
    if (shape.size() != 2)
        throw DimensionError("shape must be [n1, n2] in 2d mode");
    HankelShape s(shape[0], shape[1]);
    if (s.n() != dims[1])
        throw DimensionError("shape: n1 + n2 - 1 must equal n");
    return s;
}

TwoLevelShape RunConfig::two_level_shape() const {
    if (mode != Mode::Array3D || dims.size() != 3)
        throw DimensionError("two_level_shape: config is not three-dimensional");
    if (shape.empty())
        return TwoLevelShape::for_size(dims[0], dims[1]);
    if (shape.size() != 4)
        throw DimensionError("shape must be [L1, K1, L2, K2] in 3d mode");
    TwoLevelShape s(shape[0], shape[1], shape[2], shape[3]);
    if (s.n() != dims[0] || s.s() != dims[1])
        throw DimensionError("shape: L1 + K1 - 1 and L2 + K2 - 1 must equal n and s");
    return s;
}

void RunConfig::validate() const {
    solver.validate();
    const std::size_t want = mode == Mode::Array3D ? 3 : 2;
    if (dims.size() != want)
        throw DimensionError("dims must have " + std::to_string(want) + " entries in " +
                             to_string(mode) + " mode");
    for (auto e : dims)
        if (e < 1)
            throw DimensionError("dims must be positive");
    if (trials < 0)
        throw DomainError("trials must be nonnegative");
    if (threads < 0)
        throw DomainError("threads must be nonnegative");
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0))
            throw DomainError("p values must lie in [0, 1]");

    Eigen::Index rmax = 0;
    if (mode == Mode::Array3D) {
        const auto s = two_level_shape();
        rmax = std::min(s.rows(), s.cols());
        if (adversarial)
            throw DomainError("adversarial replacement is only defined in 2d mode");
    } else {
        const auto s = hankel_shape();
        rmax = std::min(s.n1, s.n2);
        if (mode == Mode::Special && adversarial)
            throw DomainError("adversarial replacement does not apply to the special matrix");
        if (adversarial && (adversarial_rows < 1 || adversarial_rows > dims[0]))
            throw DomainError("adversarial_rows must lie in [1, d]");
    }
    if (mode != Mode::Special)
        for (int r : r_values)
            if (r < 1 || r > rmax)
                throw DomainError("r = " + std::to_string(r) + " outside [1, " +
                                  std::to_string(rmax) + "]");
}

RunConfig run_config_from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what(), 0);
    }
    if (!j.is_object())
        throw ParseError("config must be a JSON object", 0);
    static const char *known[] = {"mode",  "dims",   "shape",      "p_values",    "p",
                                  "r_values", "r",   "trials",     "seed",        "solver",
                                  "adversarial", "adversarial_rows", "threads", "outputs"};
    for (const auto &item : j.items()) {
        bool ok = false;
        for (const char *k : known)
            ok = ok || item.key() == k;
        if (!ok)
            throw ParseError("unknown config field '" + item.key() + "'", 0);
    }

    RunConfig cfg;
    try {
        cfg.mode = parse_mode(get_or<std::string>(j, "mode", "2d"));
        if (cfg.mode == Mode::Array3D)
            cfg.dims = {9, 9, 16};
        cfg.dims = get_or(j, "dims", cfg.dims);
        cfg.shape = get_or(j, "shape", cfg.shape);
        if (j.contains("p"))
            cfg.p_values = {j.at("p").get<double>()};
        cfg.p_values = get_or(j, "p_values", cfg.p_values);
        if (j.contains("r"))
            cfg.r_values = {j.at("r").get<int>()};
        cfg.r_values = get_or(j, "r_values", cfg.r_values);
        cfg.trials = get_or(j, "trials", cfg.trials);
        cfg.seed = get_or(j, "seed", cfg.seed);
        cfg.adversarial = get_or(j, "adversarial", cfg.adversarial);
        cfg.adversarial_rows = get_or(j, "adversarial_rows", cfg.adversarial_rows);
        cfg.threads = get_or(j, "threads", cfg.threads);
        if (j.contains("solver")) {
            const json &s = j.at("solver");
            cfg.solver.rho = get_or(s, "rho", cfg.solver.rho);
            cfg.solver.tol_primal = get_or(s, "tol_primal", cfg.solver.tol_primal);
            cfg.solver.tol_dual = get_or(s, "tol_dual", cfg.solver.tol_dual);
            cfg.solver.max_iter = get_or(s, "max_iter", cfg.solver.max_iter);
            cfg.solver.success_threshold =
                get_or(s, "success_threshold", cfg.solver.success_threshold);
        }
        if (j.contains("outputs")) {
            const json &o = j.at("outputs");
            cfg.csv_path = get_or<std::string>(o, "csv", "");
            cfg.pgm_path = get_or<std::string>(o, "pgm", "");
            cfg.json_path = get_or<std::string>(o, "json", "");
        }
    } catch (const json::exception &e) {
        throw ParseError(std::string("bad config field: ") + e.what(), 0);
    }
    cfg = with_defaults(std::move(cfg));
    cfg.validate();
    return cfg;
}

std::string run_config_to_json(const RunConfig &cfg) {
    json j;
    j["mode"] = to_string(cfg.mode);
    j["dims"] = cfg.dims;
    if (!cfg.shape.empty())
        j["shape"] = cfg.shape;
    j["p_values"] = cfg.p_values;
    j["r_values"] = cfg.r_values;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["adversarial"] = cfg.adversarial;
    j["adversarial_rows"] = cfg.adversarial_rows;
    j["threads"] = cfg.threads;
    j["solver"] = {{"rho", cfg.solver.rho},
                   {"tol_primal", cfg.solver.tol_primal},
                   {"tol_dual", cfg.solver.tol_dual},
                   {"max_iter", cfg.solver.max_iter},
                   {"success_threshold", cfg.solver.success_threshold}};
    j["outputs"] = {{"csv", cfg.csv_path}, {"pgm", cfg.pgm_path}, {"json", cfg.json_path}};
    return j.dump(2);
}

double PhaseGrid::rate(std::size_t r_index, std::size_t p_index) const {
    if (trials == 0)
        return 0.0;
    return static_cast<double>(successes(static_cast<Eigen::Index>(r_index),
                                         static_cast<Eigen::Index>(p_index))) /
           trials;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t r_index, std::size_t p_index,
                         int trial) {
    return derive_seed(seed, {r_index, p_index, static_cast<std::uint64_t>(trial)});
}

TrialRecord run_trial(const RunConfig &cfg, std::size_t r_index, std::size_t p_index,
                      int trial) {
    TrialRecord rec;
    rec.r_index = r_index;
    rec.p_index = p_index;
    rec.trial = trial;
    const std::uint64_t base = trial_seed(cfg.seed, r_index, p_index, trial);
    const int r = cfg.r_values.at(r_index);
    const double p = cfg.p_values.at(p_index);
    try {
        if (cfg.mode == Mode::Array3D) {
            const auto &dm = cfg.dims;
            const SpectralArray truth =
                gen_spectral_3d(dm[0], dm[1], dm[2], r, derive_seed(base, {0}));
            const SamplingMask mask = bernoulli_mask(dm, p, derive_seed(base, {2}));
            const auto res = admm_complete_3d(project(truth.X, mask), mask,
                                              cfg.two_level_shape(), cfg.solver, &truth.X);
            rec.success = res.succeeded(cfg.solver);
            rec.converged = res.converged;
            rec.iterations = res.iterations;
            rec.relative_error = *res.relative_error;
        } else {
            const Eigen::Index d = cfg.dims[0], n = cfg.dims[1];
            CMatrix x;
            if (cfg.mode == Mode::Special) {
                x = gen_special(d, n);
            } else {
                SpectralMatrix sm = gen_spectral_matrix(d, n, r, derive_seed(base, {0}));
                x = cfg.adversarial ? replace_rows(sm.X_hat, cfg.adversarial_rows, r,
                                                   derive_seed(base, {1}))
                                          .X
                                    : std::move(sm.X);
            }
            const SamplingMask mask = bernoulli_mask(cfg.dims, p, derive_seed(base, {2}));
            const auto res =
                admm_complete(project(x, mask), mask, cfg.hankel_shape(), cfg.solver, &x);
            rec.success = res.succeeded(cfg.solver);
            rec.converged = res.converged;
            rec.iterations = res.iterations;
            rec.relative_error = *res.relative_error;
        }
        if (!std::isfinite(rec.relative_error))
            rec.success = false;
    } catch (const std::exception &e) {
        rec.success = false;
        rec.error = e.what();
    }
    return rec;
}

PhaseGrid phase_transition_run(const RunConfig &input, const TrialCallback &on_trial) {
    const RunConfig cfg = with_defaults(input);
    cfg.validate();
    PhaseGrid grid;
    grid.p_values = cfg.p_values;
    grid.r_values = cfg.mode == Mode::Special ? std::vector<int>{1} : cfg.r_values;
    grid.trials = cfg.trials;
    grid.seed = cfg.seed;
    grid.config_json = run_config_to_json(cfg);

    RunConfig run = cfg;
    run.r_values = grid.r_values;
    const std::size_t nr = grid.r_values.size(), np = grid.p_values.size();
    const std::size_t per_cell = static_cast<std::size_t>(cfg.trials);
    const std::size_t jobs = nr * np * per_cell;
    std::vector<TrialRecord> records(jobs);

    std::atomic<std::size_t> next{0};
    std::mutex report;
    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const std::size_t cell = job / per_cell;
            records[job] = run_trial(run, cell / np, cell % np, static_cast<int>(job % per_cell));
            if (on_trial) {
                std::lock_guard lock(report);
                on_trial(records[job]);
            }
        }
    };
    unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    grid.successes = IMatrix::Zero(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(np));
    grid.nonconverged = grid.successes;
    for (const auto &rec : records) {
        const auto ri = static_cast<Eigen::Index>(rec.r_index);
        const auto pi = static_cast<Eigen::Index>(rec.p_index);
        grid.successes(ri, pi) += rec.success ? 1 : 0;
        grid.nonconverged(ri, pi) += rec.converged ? 0 : 1;
    }
    return grid;
}

std::string grid_to_csv(const PhaseGrid &grid) {
    std::ostringstream out;
    out << "r/p";
    for (double p : grid.p_values)
        out << ',' << fixed6(p);
    out << '\n';
    for (std::size_t a = 0; a < grid.r_values.size(); ++a) {
        out << grid.r_values[a];
        for (std::size_t b = 0; b < grid.p_values.size(); ++b)
            out << ',' << fixed6(grid.rate(a, b));
        out << '\n';
    }
    return out.str();
}

GridRates grid_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto cells_of = [](const std::string &s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string c;
        while (std::getline(ss, c, ','))
            out.push_back(c);
        return out;
    };
    auto number = [&](const std::string &s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw ParseError("bad number '" + s + "'", lineno);
        return v;
    };

    GridRates out;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = cells_of(line);
        if (out.p_values.empty() && rows.empty()) {
            if (cells.empty() || cells[0] != "r/p")
                throw ParseError("grid CSV must start with 'r/p'", lineno);
            for (std::size_t c = 1; c < cells.size(); ++c)
                out.p_values.push_back(number(cells[c]));
            continue;
        }
        if (cells.size() != out.p_values.size() + 1)
            throw ParseError("row has the wrong number of cells", lineno);
        const double r = number(cells[0]);
        if (r != std::floor(r))
            throw ParseError("r must be an integer", lineno);
        out.r_values.push_back(static_cast<int>(r));
        std::vector<double> row;
        for (std::size_t c = 1; c < cells.size(); ++c)
            row.push_back(number(cells[c]));
        rows.push_back(std::move(row));
    }
    if (lineno == 0)
        throw ParseError("empty grid CSV", 1);
    out.rates.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(out.p_values.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < rows[a].size(); ++b)
            out.rates(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = rows[a][b];
    return out;
}

std::string grid_to_pgm(const PhaseGrid &grid) {
    std::ostringstream out;
    out << "P2\n" << grid.p_values.size() << ' ' << grid.r_values.size() << "\n255\n";
    for (std::size_t a = 0; a < grid.r_values.size(); ++a) {
        for (std::size_t b = 0; b < grid.p_values.size(); ++b) {
            if (b)
                out << ' ';
            out << static_cast<int>(std::lround(255.0 * grid.rate(a, b)));
        }
        out << '\n';
    }
    return out.str();
}

std::string grid_to_json(const PhaseGrid &grid) {
    json j;
    j["p_values"] = grid.p_values;
    j["r_values"] = grid.r_values;
    j["trials"] = grid.trials;
    j["seed"] = grid.seed;
    json succ = json::array(), nonconv = json::array(), rates = json::array();
    for (Eigen::Index a = 0; a < grid.successes.rows(); ++a) {
        json s = json::array(), c = json::array(), r = json::array();
        for (Eigen::Index b = 0; b < grid.successes.cols(); ++b) {
            s.push_back(grid.successes(a, b));
            c.push_back(grid.nonconverged(a, b));
            r.push_back(grid.rate(static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
        }
        succ.push_back(s);
        nonconv.push_back(c);
        rates.push_back(r);
    }
    j["successes"] = succ;
    j["nonconverged"] = nonconv;
    j["rates"] = rates;
    if (!grid.config_json.empty())
        j["config"] = json::parse(grid.config_json);
    return j.dump(2);
}

void emit_grid_csv(const PhaseGrid &grid, const std::filesystem::path &path) {
    save_text(path, grid_to_csv(grid));
}

void emit_heatmap_pgm(const PhaseGrid &grid, const std::filesystem::path &path) {
    save_text(path, grid_to_pgm(grid));
}

MonotonicityReport monotonicity(const PhaseGrid &grid) {
    MonotonicityReport rep;
    for (Eigen::Index a = 0; a < grid.successes.rows(); ++a)
        for (Eigen::Index b = 1; b < grid.successes.cols(); ++b) {
            const int drop = grid.successes(a, b - 1) - grid.successes(a, b);
            if (drop > 0) {
                ++rep.inversions;
                rep.worst_drop = std::max(rep.worst_drop, drop);
            }
        }
    return rep;
}

} // namespace hmc
