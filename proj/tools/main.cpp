// hankelmc: generate instances, complete matrices, run phase-transition
// grids and evaluate dual certificates from the command line.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hankelmc/certificate.hpp"
#include "hankelmc/experiments.hpp"
#include "hankelmc/fourier.hpp"
#include "hankelmc/geometry.hpp"
#include "hankelmc/io.hpp"
#include "hankelmc/rng.hpp"
#include "hankelmc/signals.hpp"
#include "hankelmc/solver.hpp"

using nlohmann::json;
using namespace hmc;

namespace {

constexpr int kValidation = 1;
constexpr int kIo = 2;

struct GenArgs {
    std::string mode = "2d";
    Eigen::Index d = 16, n = 47, s = 9;
    int r = 1;
    std::uint64_t seed = 1;
    int adversarial = 0;
    std::optional<double> p;
    std::string out, mask_out;
};

struct CompleteArgs {
    std::string matrix, mask, truth, out, report;
    std::vector<Eigen::Index> shape;
    SolverConfig solver;
};

struct PhaseArgs {
    std::string config;
    std::optional<int> threads;
    std::string csv, pgm, json_out;
    bool quiet = false;
};

struct CertifyArgs {
    bool special = false;
    Eigen::Index d = 4, n = 15;
    int r = 1;
    double p = 0.8;
    std::uint64_t seed = 1;
    std::vector<Eigen::Index> omega;
    std::string matrix, out;
    int power_iter = 500;
    double power_tol = 1e-4;
};

struct IncoherenceArgs {
    std::string matrix, out;
    bool special = false;
    Eigen::Index d = 16, n = 47;
    int r = 1;
    std::uint64_t seed = 1;
    int adversarial = 0;
};

void emit(const std::string &path, std::string text) {
    if (text.empty() || text.back() != '\n')
        text += '\n';
    if (path.empty() || path == "-")
        std::cout << text;
    else
        save_text(path, text);
}

HankelShape shape_2d(const std::vector<Eigen::Index> &shape, Eigen::Index n) {
    if (shape.empty())
        return HankelShape::for_length(n);
    if (shape.size() != 2)
        throw DimensionError("--shape needs n1,n2 for a 2d matrix");
    HankelShape s(shape[0], shape[1]);
    if (s.n() != n)
        throw DimensionError("--shape: n1 + n2 - 1 must equal the column count");
    return s;
}

TwoLevelShape shape_3d(const std::vector<Eigen::Index> &shape, Eigen::Index n, Eigen::Index s) {
    if (shape.empty())
        return TwoLevelShape::for_size(n, s);
    if (shape.size() != 4)
        throw DimensionError("--shape needs L1,K1,L2,K2 for a 3d array");
    TwoLevelShape t(shape[0], shape[1], shape[2], shape[3]);
    if (t.n() != n || t.s() != s)
        throw DimensionError("--shape does not match the array size");
    return t;
}

CMatrix instance_2d(bool special, Eigen::Index d, Eigen::Index n, int r, std::uint64_t seed,
                    int adversarial) {
    if (special)
        return gen_special(d, n);
    SpectralMatrix sm = gen_spectral_matrix(d, n, r, seed);
    if (adversarial > 0)
        return replace_rows(sm.X_hat, adversarial, r, derive_seed(seed, {1})).X;
    return sm.X;
}

json report_json(const CertificateReport &rep) {
    return {{"fro_gap", rep.fro_gap},
            {"fro_bound", rep.fro_bound},
            {"perp_norm", rep.perp_norm},
            {"perp_bound", rep.perp_bound},
            {"omega_residual", rep.omega_residual},
            {"omega_tol", rep.omega_tol},
            {"rip_deviation", rep.rip_deviation},
            {"rip_bound", rep.rip_bound},
            {"rip_converged", rep.rip_converged},
            {"passed", rep.passed}};
}

int run_gen(const GenArgs &a) {
    const Mode mode = parse_mode(a.mode);
    if (mode == Mode::Array3D) {
        if (a.adversarial)
            throw DomainError("--adversarial is only defined for 2d instances");
        const SpectralArray arr = gen_spectral_3d(a.n, a.s, a.d, a.r, a.seed);
        emit(a.out, [&] {
            std::ostringstream ss;
            write_array3(ss, arr.X);
            return ss.str();
        }());
        if (a.p)
            save_mask(a.mask_out, bernoulli_mask({a.n, a.s, a.d}, *a.p, derive_seed(a.seed, {2})));
        return 0;
    }
    const CMatrix x = instance_2d(mode == Mode::Special, a.d, a.n, a.r, a.seed, a.adversarial);
    std::ostringstream ss;
    write_matrix(ss, x);
    emit(a.out, ss.str());
    if (a.p)
        save_mask(a.mask_out, bernoulli_mask({a.d, a.n}, *a.p, derive_seed(a.seed, {2})));
    return 0;
}

int run_complete(const CompleteArgs &a) {
    const ComplexData data = load_complex_data(a.matrix);
    const SamplingMask mask = load_mask(a.mask);
    json rep;
    if (data.is_3d) {
        const Array3 &x = data.array;
        const auto shape = shape_3d(a.shape, x.n(), x.s());
        std::optional<Array3> truth;
        if (!a.truth.empty())
            truth = load_array3(a.truth);
        const auto res = admm_complete_3d(project(x, mask), mask, shape, a.solver,
                                          truth ? &*truth : nullptr);
        save_array3(a.out, res.X);
        rep = {{"iterations", res.iterations},
               {"primal_residual", res.primal_residual},
               {"dual_residual", res.dual_residual},
               {"converged", res.converged}};
        if (res.relative_error)
            rep["relative_error"] = *res.relative_error;
    } else {
        const CMatrix &x = data.matrix;
        const auto shape = shape_2d(a.shape, x.cols());
        std::optional<CMatrix> truth;
        if (!a.truth.empty())
            truth = load_matrix(a.truth);
        const auto res = admm_complete(project(x, mask), mask, shape, a.solver,
                                       truth ? &*truth : nullptr);
        save_matrix(a.out, res.X);
        rep = {{"iterations", res.iterations},
               {"primal_residual", res.primal_residual},
               {"dual_residual", res.dual_residual},
               {"converged", res.converged}};
        if (res.relative_error)
            rep["relative_error"] = *res.relative_error;
    }
    if (!a.report.empty())
        emit(a.report, rep.dump(2));
    return 0;
}

int run_phase(const PhaseArgs &a) {
    RunConfig cfg = run_config_from_json(load_text(a.config));
    if (a.threads)
        cfg.threads = *a.threads;
    if (!a.csv.empty())
        cfg.csv_path = a.csv;
    if (!a.pgm.empty())
        cfg.pgm_path = a.pgm;
    if (!a.json_out.empty())
        cfg.json_path = a.json_out;
    cfg.validate();

    const PhaseGrid grid = phase_transition_run(cfg, [&](const TrialRecord &t) {
        if (!t.error.empty())
            std::cerr << "trial r=" << cfg.r_values[t.r_index] << " p=" << cfg.p_values[t.p_index]
                      << " #" << t.trial << " failed: " << t.error << '\n';
        else if (!t.converged && !a.quiet)
            std::cerr << "trial r=" << cfg.r_values[t.r_index] << " p=" << cfg.p_values[t.p_index]
                      << " #" << t.trial << " hit max_iter (relative error "
                      << t.relative_error << ")\n";
    });
    if (!cfg.csv_path.empty())
        emit_grid_csv(grid, cfg.csv_path);
    if (!cfg.pgm_path.empty())
        emit_heatmap_pgm(grid, cfg.pgm_path);
    if (!cfg.json_path.empty())
        emit(cfg.json_path, grid_to_json(grid));
    if (cfg.csv_path.empty() && cfg.json_path.empty())
        std::cout << grid_to_csv(grid);
    return 0;
}

int run_certify(const CertifyArgs &a) {
    if (a.special) {
        const SpecialCertificate c = special_dual_certificate(a.omega, a.d);
        json mags = json::array();
        for (Eigen::Index j = 0; j < c.transformed.size(); ++j)
            mags.push_back(std::abs(c.transformed(j)));
        const json out = {{"d", a.d},
                          {"omega", a.omega},
                          {"lambda", std::vector<double>(c.lambda.data(),
                                                         c.lambda.data() + c.lambda.size())},
                          {"magnitudes", mags},
                          {"first_entry_error", c.first_entry_error},
                          {"max_off_entry", c.max_off_entry},
                          {"parity_pair", c.parity_pair},
                          {"passed", c.passed}};
        emit(a.out, out.dump(2));
        return 0;
    }

    CMatrix x;
    if (!a.matrix.empty())
        x = load_matrix(a.matrix);
    else
        x = instance_2d(false, a.d, a.n, a.r, a.seed, 0);
    const HankelShape shape = HankelShape::for_length(x.cols());
    const TangentSpace t = block_svd(hankel_blockdiag(x, shape));
    const BlockDiagonal uv = sign_matrix(t);
    const GolfingPartition part =
        golfing_partition({x.rows(), x.cols()}, a.p, derive_seed(a.seed, {3}));
    const GolfingResult g = golfing_certificate(t, uv, part);
    PowerIterationOptions opts;
    opts.max_iter = a.power_iter;
    opts.tol = a.power_tol;
    opts.seed = derive_seed(a.seed, {4});
    const CertificateReport rep = verify_certificate(g.lambda, t, part.union_mask(), a.p, opts);
    json out = report_json(rep);
    out["k0"] = part.k0;
    out["q"] = part.q;
    out["residuals"] = g.residuals;
    out["halving_steps"] = g.halving_steps();
    emit(a.out, out.dump(2));
    return 0;
}

int run_incoherence(const IncoherenceArgs &a) {
    CMatrix x = a.matrix.empty() ? instance_2d(a.special, a.d, a.n, a.r, a.seed, a.adversarial)
                                 : load_matrix(a.matrix);
    const TangentSpace t = block_svd(hankel_blockdiag(x, HankelShape::for_length(x.cols())));
    const AverageIncoherence avg = avg_incoherence(t);
    const WorstIncoherence worst = worst_incoherence(t);
    const IncoherenceConsequences cons = check_incoherence_consequences(t);
    const double n = static_cast<double>(avg.n);
    const json out = {
        {"n", avg.n},
        {"r", avg.r},
        {"raw_average", std::max(avg.raw_u, avg.raw_v)},
        {"raw_worst", worst.raw},
        {"mu0", avg.mu0},
        {"mu1", worst.mu1},
        {"ginf_sign", ginf_norm(sign_matrix(t))},
        {"ginf_bound", avg.mu0 * static_cast<double>(avg.r) / n},
        {"consequences",
         {{"ineq1_u", cons.ineq1_u},
          {"ineq1_v", cons.ineq1_v},
          {"ineq1_bound", cons.ineq1_bound},
          {"ineq2", cons.ineq2},
          {"ineq2_bound", cons.ineq2_bound},
          {"holds", cons.holds()}}}};
    emit(a.out, out.dump(2));
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fourier-domain Hankel matrix completion"};
    app.require_subcommand(1);

    GenArgs gen;
    auto *g = app.add_subcommand("gen", "write a test instance");
    g->add_option("--mode", gen.mode, "2d, 3d or special")->check(CLI::IsMember({"2d", "3d", "special"}));
    g->add_option("--d", gen.d, "rows (2d) or frontal slices (3d)");
    g->add_option("--n", gen.n, "columns (2d) or slice rows (3d)");
    g->add_option("--s", gen.s, "slice columns (3d)");
    g->add_option("--r", gen.r, "spectral rank");
    g->add_option("--seed", gen.seed);
    g->add_option("--adversarial", gen.adversarial, "rows replaced by two-spike rows");
    auto *gp = g->add_option("--p", gen.p, "also draw a Bernoulli(p) mask");
    g->add_option("--mask-out", gen.mask_out)->needs(gp);
    gp->needs(g->get_option("--mask-out"));
    g->add_option("--out,-o", gen.out, "output file (default stdout)");

    CompleteArgs comp;
    auto *c = app.add_subcommand("complete", "complete a partially observed matrix or array");
    c->add_option("--matrix", comp.matrix, "observed data (#complex or #complex3)")->required();
    c->add_option("--mask", comp.mask, "mask file")->required();
    c->add_option("--truth", comp.truth, "ground truth for the relative error");
    c->add_option("--shape", comp.shape, "n1,n2 or L1,K1,L2,K2")->delimiter(',');
    c->add_option("--rho", comp.solver.rho);
    c->add_option("--tol-primal", comp.solver.tol_primal);
    c->add_option("--tol-dual", comp.solver.tol_dual);
    c->add_option("--max-iter", comp.solver.max_iter);
    c->add_option("--out,-o", comp.out, "completed data")->required();
    c->add_option("--report", comp.report, "JSON solver report ('-' for stdout)");

    PhaseArgs phase;
    auto *p = app.add_subcommand("phase", "run a phase-transition grid from a JSON config");
    p->add_option("--config", phase.config)->required();
    p->add_option("--threads", phase.threads);
    p->add_option("--csv", phase.csv);
    p->add_option("--pgm", phase.pgm);
    p->add_option("--json", phase.json_out);
    p->add_flag("--quiet", phase.quiet, "do not log trials that hit max_iter");

    CertifyArgs cert;
    auto *ce = app.add_subcommand("certify", "golfing or closed-form dual certificate");
    ce->add_flag("--special", cert.special, "closed-form certificate for 1 e_1^T");
    ce->add_option("--d", cert.d);
    ce->add_option("--n", cert.n);
    ce->add_option("--r", cert.r);
    ce->add_option("--p", cert.p);
    ce->add_option("--seed", cert.seed);
    ce->add_option("--omega", cert.omega, "1-based observed rows, e.g. 1,2")->delimiter(',');
    ce->add_option("--matrix", cert.matrix, "use this matrix instead of a generated one");
    ce->add_option("--power-iter", cert.power_iter);
    ce->add_option("--power-tol", cert.power_tol);
    ce->add_option("--out,-o", cert.out);

    IncoherenceArgs inc;
    auto *in = app.add_subcommand("incoherence", "incoherence parameters of an instance");
    in->add_option("--matrix", inc.matrix);
    in->add_flag("--special", inc.special);
    in->add_option("--d", inc.d);
    in->add_option("--n", inc.n);
    in->add_option("--r", inc.r);
    in->add_option("--seed", inc.seed);
    in->add_option("--adversarial", inc.adversarial);
    in->add_option("--out,-o", inc.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kValidation;
    }

    try {
        if (*g)
            return run_gen(gen);
        if (*c)
            return run_complete(comp);
        if (*p)
            return run_phase(phase);
        if (*ce)
            return run_certify(cert);
        return run_incoherence(inc);
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
}
