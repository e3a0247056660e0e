#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hankelmc/certificate.hpp"
#include "hankelmc/experiments.hpp"
#include "hankelmc/fourier.hpp"
#include "hankelmc/geometry.hpp"
#include "hankelmc/hankel.hpp"
#include "hankelmc/sampling.hpp"
#include "hankelmc/signals.hpp"
#include "hankelmc/solver.hpp"

namespace py = pybind11;
using namespace hmc;

namespace {

// Masks cross the boundary as boolean numpy arrays: d x n, or n x s x d.
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

SamplingMask mask_from_2d(const BoolMatrix &m) {
    SamplingMask out({m.rows(), m.cols()});
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            out.set(i, k, m(i, k));
    return out;
}

BoolMatrix mask_to_2d(const SamplingMask &m) {
    BoolMatrix out(m.dims()[0], m.dims()[1]);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index k = 0; k < out.cols(); ++k)
            out(i, k) = m.observed(i, k);
    return out;
}

py::array_t<bool> mask_to_3d(const SamplingMask &m) {
    const auto n = m.dims()[0], s = m.dims()[1], d = m.dims()[2];
    py::array_t<bool> out({n, s, d});
    auto v = out.mutable_unchecked<3>();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < s; ++k)
            for (Eigen::Index i = 0; i < d; ++i)
                v(j, k, i) = m.observed(j, k, i);
    return out;
}

SamplingMask mask_from_3d(const py::array_t<bool, py::array::c_style | py::array::forcecast> &a) {
    if (a.ndim() != 3)
        throw DimensionError("3D mask must have shape (n, s, d)");
    auto v = a.unchecked<3>();
    SamplingMask out({v.shape(0), v.shape(1), v.shape(2)});
    for (py::ssize_t j = 0; j < v.shape(0); ++j)
        for (py::ssize_t k = 0; k < v.shape(1); ++k)
            for (py::ssize_t i = 0; i < v.shape(2); ++i)
                out.set(j, k, i, v(j, k, i));
    return out;
}

// Arrays are numpy (n, s, d) with frontal slices along the last axis.
py::array_t<cplx> array_to_numpy(const Array3 &x) {
    py::array_t<cplx> out({x.n(), x.s(), x.d()});
    auto v = out.mutable_unchecked<3>();
    for (Eigen::Index j = 0; j < x.n(); ++j)
        for (Eigen::Index k = 0; k < x.s(); ++k)
            for (Eigen::Index i = 0; i < x.d(); ++i)
                v(j, k, i) = x(j, k, i);
    return out;
}

Array3 array_from_numpy(const py::array_t<cplx, py::array::c_style | py::array::forcecast> &a) {
    if (a.ndim() != 3)
        throw DimensionError("array must have shape (n, s, d)");
    auto v = a.unchecked<3>();
    Array3 out(v.shape(0), v.shape(1), v.shape(2));
    for (py::ssize_t j = 0; j < v.shape(0); ++j)
        for (py::ssize_t k = 0; k < v.shape(1); ++k)
            for (py::ssize_t i = 0; i < v.shape(2); ++i)
                out(j, k, i) = v(j, k, i);
    return out;
}

HankelShape shape_arg(Eigen::Index n, const std::optional<std::pair<Eigen::Index, Eigen::Index>> &s) {
    return s ? HankelShape(s->first, s->second) : HankelShape::for_length(n);
}

TangentSpace tangent_of(const CMatrix &x) {
    return block_svd(hankel_blockdiag(x, HankelShape::for_length(x.cols())));
}

SolverConfig solver_config(double rho, double tol, int max_iter) {
    SolverConfig cfg;
    cfg.rho = rho;
    cfg.tol_primal = cfg.tol_dual = tol;
    cfg.max_iter = max_iter;
    cfg.validate();
    return cfg;
}

template <class R>
py::dict solve_report(const R &res) {
    py::dict d;
    d["iterations"] = res.iterations;
    d["converged"] = res.converged;
    d["primal_residual"] = res.primal_residual;
    d["dual_residual"] = res.dual_residual;
    d["relative_error"] = res.relative_error ? py::cast(*res.relative_error) : py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_hankelmc, m) {
    m.doc() = "Fourier-domain Hankel matrix completion";

    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    // lifts
    m.def("hankel_lift", [](const CVector &x, std::pair<Eigen::Index, Eigen::Index> s) {
        return hankel_lift(x, {s.first, s.second});
    }, py::arg("x"), py::arg("shape"));
    m.def("hankel_adjoint", [](const CMatrix &mat) {
        return hankel_adjoint(mat, {mat.rows(), mat.cols()});
    }, py::arg("m"));
    m.def("antidiag_weights", [](std::pair<Eigen::Index, Eigen::Index> s) {
        return antidiag_weights({s.first, s.second});
    }, py::arg("shape"));
    m.def("g_lift", [](const CVector &x, std::pair<Eigen::Index, Eigen::Index> s) {
        return g_lift(x, {s.first, s.second});
    }, py::arg("x"), py::arg("shape"));
    m.def("g_adjoint", [](const CMatrix &mat) { return g_adjoint(mat, {mat.rows(), mat.cols()}); },
          py::arg("m"));
    m.def("two_level_lift", [](const CMatrix &s, std::array<Eigen::Index, 4> p) {
        return two_level_lift(s, {p[0], p[1], p[2], p[3]});
    }, py::arg("slice"), py::arg("shape"));
    m.def("two_level_adjoint", [](const CMatrix &mat, std::array<Eigen::Index, 4> p) {
        return two_level_adjoint(mat, {p[0], p[1], p[2], p[3]});
    }, py::arg("m"), py::arg("shape"));
    m.def("two_level_weights", [](std::array<Eigen::Index, 4> p) {
        return two_level_weights({p[0], p[1], p[2], p[3]});
    }, py::arg("shape"));

    m.def("unitary_dft", &unitary_dft, py::arg("d"));
    m.def("ghat_lift", [](const CMatrix &x, std::optional<std::pair<Eigen::Index, Eigen::Index>> s) {
        return ghat_lift(x, shape_arg(x.cols(), s)).blocks();
    }, py::arg("x"), py::arg("shape") = py::none());
    m.def("hankel_blockdiag", [](const CMatrix &x, std::optional<std::pair<Eigen::Index, Eigen::Index>> s) {
        return hankel_blockdiag(x, shape_arg(x.cols(), s)).blocks();
    }, py::arg("x"), py::arg("shape") = py::none());
    m.def("ghat_adjoint", [](std::vector<CMatrix> blocks) {
        return ghat_adjoint(BlockDiagonal(std::move(blocks)));
    }, py::arg("blocks"));

    // sampling
    m.def("bernoulli_mask", [](Eigen::Index d, Eigen::Index n, double p, std::uint64_t seed) {
        return mask_to_2d(bernoulli_mask({d, n}, p, seed));
    }, py::arg("d"), py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("bernoulli_mask_3d", [](Eigen::Index n, Eigen::Index s, Eigen::Index d, double p,
                                  std::uint64_t seed) {
        return mask_to_3d(bernoulli_mask({n, s, d}, p, seed));
    }, py::arg("n"), py::arg("s"), py::arg("d"), py::arg("p"), py::arg("seed"));

    // solver
    m.def("svt", &svt, py::arg("m"), py::arg("tau"));
    m.def("complete", [](const CMatrix &observed, const BoolMatrix &mask,
                         std::optional<CMatrix> truth, double rho, double tol, int max_iter) {
        const SamplingMask sm = mask_from_2d(mask);
        const auto res = admm_complete(project(observed, sm), sm,
                                       HankelShape::for_length(observed.cols()),
                                       solver_config(rho, tol, max_iter), truth ? &*truth : nullptr);
        return py::make_tuple(res.X, solve_report(res));
    }, py::arg("observed"), py::arg("mask"), py::arg("truth") = py::none(), py::arg("rho") = 0.05,
       py::arg("tol") = 1e-7, py::arg("max_iter") = 3000,
       "ADMM completion of a d x n matrix; returns (X, report).");
    m.def("complete_3d", [](py::array_t<cplx> observed, py::array_t<bool> mask,
                            std::optional<py::array_t<cplx>> truth, double rho, double tol,
                            int max_iter) {
        const Array3 obs = array_from_numpy(observed);
        const SamplingMask sm = mask_from_3d(mask);
        std::optional<Array3> ref;
        if (truth)
            ref = array_from_numpy(*truth);
        const auto res = admm_complete_3d(project(obs, sm), sm,
                                          TwoLevelShape::for_size(obs.n(), obs.s()),
                                          solver_config(rho, tol, max_iter), ref ? &*ref : nullptr);
        return py::make_tuple(array_to_numpy(res.X), solve_report(res));
    }, py::arg("observed"), py::arg("mask"), py::arg("truth") = py::none(), py::arg("rho") = 0.05,
       py::arg("tol") = 1e-7, py::arg("max_iter") = 3000);
    m.def("relative_error", py::overload_cast<const CMatrix &, const CMatrix &>(&relative_error),
          py::arg("x"), py::arg("reference"));

    // signals
    m.def("gen_spectral_matrix", [](Eigen::Index d, Eigen::Index n, int r, std::uint64_t seed) {
        const auto s = gen_spectral_matrix(d, n, r, seed);
        return py::make_tuple(s.X, s.X_hat);
    }, py::arg("d"), py::arg("n"), py::arg("r"), py::arg("seed"),
       "Returns (X, X_hat) with X_hat = F X.");
    m.def("gen_special", &gen_special, py::arg("d"), py::arg("n"));
    m.def("gen_adversarial_row", &gen_adversarial_row, py::arg("n"), py::arg("r"), py::arg("seed"));
    m.def("replace_rows", [](const CMatrix &x_hat, int count, int r, std::uint64_t seed) {
        const auto rep = replace_rows(x_hat, count, r, seed);
        return py::make_tuple(rep.X, rep.X_hat, rep.rows);
    }, py::arg("x_hat"), py::arg("count"), py::arg("r"), py::arg("seed"));
    m.def("gen_spectral_3d", [](Eigen::Index n, Eigen::Index s, Eigen::Index d, int r,
                                std::uint64_t seed) {
        const auto a = gen_spectral_3d(n, s, d, r, seed);
        return py::make_tuple(array_to_numpy(a.X), array_to_numpy(a.X_hat));
    }, py::arg("n"), py::arg("s"), py::arg("d"), py::arg("r"), py::arg("seed"));

    // geometry and certificates
    m.def("incoherence", [](const CMatrix &x) {
        const TangentSpace t = tangent_of(x);
        const auto avg = avg_incoherence(t);
        const auto worst = worst_incoherence(t);
        const auto cons = check_incoherence_consequences(t);
        py::dict d;
        d["raw_average"] = std::max(avg.raw_u, avg.raw_v);
        d["raw_worst"] = worst.raw;
        d["mu0"] = avg.mu0;
        d["mu1"] = worst.mu1;
        d["r"] = avg.r;
        d["consequences_hold"] = cons.holds();
        return d;
    }, py::arg("x"), "Incoherence of the Fourier-domain Hankel blocks of a d x n matrix.");
    m.def("gf_norm", [](std::vector<CMatrix> b) { return gf_norm(BlockDiagonal(std::move(b))); },
          py::arg("blocks"));
    m.def("ginf_norm", [](std::vector<CMatrix> b) { return ginf_norm(BlockDiagonal(std::move(b))); },
          py::arg("blocks"));
    m.def("rip_deviation", [](const CMatrix &x, const BoolMatrix &mask, double p, double tol,
                              int max_iter, std::uint64_t seed) {
        return rip_deviation(tangent_of(x), mask_from_2d(mask), p, {tol, max_iter, seed}).value;
    }, py::arg("x"), py::arg("mask"), py::arg("p"), py::arg("tol") = 1e-4,
       py::arg("max_iter") = 500, py::arg("seed") = 0);
    m.def("special_dual_certificate", [](const std::vector<Eigen::Index> &omega, Eigen::Index d) {
        const auto c = special_dual_certificate(omega, d);
        py::dict out;
        out["lambda"] = c.lambda;
        out["transformed"] = c.transformed;
        out["first_entry_error"] = c.first_entry_error;
        out["max_off_entry"] = c.max_off_entry;
        out["passed"] = c.passed;
        return out;
    }, py::arg("omega"), py::arg("d"), "omega holds 1-based indices.");

    // experiments
    m.def("phase_transition", [](const std::string &config_json) {
        const RunConfig cfg = with_defaults(run_config_from_json(config_json));
        PhaseGrid g;
        {
            py::gil_scoped_release release;
            g = phase_transition_run(cfg);
        }
        return grid_to_json(g);
    }, py::arg("config_json"), "Runs a phase-transition grid; returns the grid as JSON text.");
}
