#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "currents/hodge.hpp"
#include "currents/koszul.hpp"
#include "currents/macdonald.hpp"
#include "currents/report.hpp"

namespace py = pybind11;
using namespace currents;

namespace {

std::vector<std::tuple<int, int, int, long long>> pack_table(const std::vector<BlockResult>& t) {
    std::vector<std::tuple<int, int, int, long long>> out;
    out.reserve(t.size());
    for (const auto& e : t) out.emplace_back(e.d, e.p, e.w, e.dim);
    return out;
}

std::vector<std::tuple<int, int, int, long long>> pack_series(const GradedSeries& s) {
    std::vector<std::tuple<int, int, int, long long>> out;
    out.reserve(s.coeff.size());
    for (const auto& [k, v] : s.coeff)
        out.emplace_back(std::get<0>(k), std::get<1>(k), std::get<2>(k), v);
    return out;
}

std::vector<std::tuple<int, int, int, long long, long long>>
pack_diffs(const std::vector<SeriesDiff>& ds) {
    std::vector<std::tuple<int, int, int, long long, long long>> out;
    out.reserve(ds.size());
    for (const auto& e : ds) out.emplace_back(e.d, e.p, e.w, e.computed, e.predicted);
    return out;
}

} // namespace

PYBIND11_MODULE(_currents, m) {
    m.doc() = "exact and numeric cohomology of truncated and super current algebras";
    m.attr("__version__") = kToolVersion;

    m.def(
        "algebra_info",
        [](const std::string& name) {
            LieAlgebraData alg = build_algebra(name);
            py::dict d;
            d["name"] = alg.name();
            d["dim"] = alg.dim;
            d["exponents"] = alg.exponents;
            d["labels"] = alg.labels;
            return d;
        },
        py::arg("algebra"), "basis labels, dimension, and exponents of a supported algebra");

    m.def(
        "truncated_table",
        [](const std::string& name, int n, int max_w, int threads) {
            return pack_table(truncated_cohomology_table(build_algebra(name), n, max_w, threads));
        },
        py::arg("algebra"), py::arg("n"), py::arg("max_w") = -1, py::arg("threads") = 1,
        "exact bigraded cohomology of the truncated current algebra as (d, p, w, dim) rows");

    m.def(
        "super_table",
        [](const std::string& name, int max_d, int max_p, int max_w, int threads) {
            return pack_table(
                super_cohomology_table(build_algebra(name), Bounds{max_d, max_p, max_w}, threads));
        },
        py::arg("algebra"), py::arg("max_d"), py::arg("max_p"), py::arg("max_w"),
        py::arg("threads") = 1,
        "exact relative cohomology of the super current algebra as (d, p, w, dim) rows");

    m.def(
        "predicted_truncated",
        [](const std::string& name, int n, int max_d, int max_w) {
            LieAlgebraData alg = build_algebra(name);
            if (max_d < 0) max_d = alg.dim * n;
            if (max_w < 0) max_w = alg.dim * n * (n - 1) / 2;
            return pack_series(predicted_truncated_series(alg, n, Bounds{max_d, 0, max_w}));
        },
        py::arg("algebra"), py::arg("n"), py::arg("max_d") = -1, py::arg("max_w") = -1,
        "nonzero coefficients of the predicted truncated product as (d, p, w, value) rows");

    m.def(
        "predicted_super",
        [](const std::string& name, int max_d, int max_p, int max_w) {
            return pack_series(
                predicted_super_series(build_algebra(name), Bounds{max_d, max_p, max_w}));
        },
        py::arg("algebra"), py::arg("max_d"), py::arg("max_p"), py::arg("max_w"),
        "nonzero coefficients of the predicted super series as (d, p, w, value) rows");

    m.def(
        "truncated_diff",
        [](const std::string& name, int n, int threads) {
            LieAlgebraData alg = build_algebra(name);
            Bounds b{alg.dim * n, 0, alg.dim * n * (n - 1) / 2};
            auto table = truncated_cohomology_table(alg, n, b.max_w, threads);
            return pack_diffs(compare_series(table, b, predicted_truncated_series(alg, n, b)));
        },
        py::arg("algebra"), py::arg("n"), py::arg("threads") = 1,
        "blocks where the computed truncated table and the prediction disagree (empty = verified)");

    m.def(
        "super_diff",
        [](const std::string& name, int max_d, int max_p, int max_w, int threads) {
            LieAlgebraData alg = build_algebra(name);
            Bounds b{max_d, max_p, max_w};
            auto table = super_cohomology_table(alg, b, threads);
            return pack_diffs(compare_series(table, b, predicted_super_series(alg, b)));
        },
        py::arg("algebra"), py::arg("max_d"), py::arg("max_p"), py::arg("max_w"),
        py::arg("threads") = 1,
        "blocks where the computed super table and the prediction disagree (empty = verified)");

    m.def(
        "iwahori_diff",
        [](const std::string& name, int max_d, int max_p, int max_w, int threads) {
            return pack_diffs(iwahori_series_check(build_algebra(name),
                                                   Bounds{max_d, max_p, max_w}, threads));
        },
        py::arg("algebra"), py::arg("max_d"), py::arg("max_p"), py::arg("max_w"),
        py::arg("threads") = 1,
        "blocks where the Borel-type pair table and the factorized prediction disagree");

    m.def(
        "hodge_deviations",
        [](const std::string& name, int d, int p, int w) {
            LieAlgebraData alg = build_algebra(name);
            HodgeContext ctx(alg);
            py::dict out;
            out["adjointness"] = verify_adjointness(ctx, d, p, w);
            out["laplacian_split"] = verify_laplacian_split(ctx, d, p, w);
            NakanoReport nk = verify_nakano(ctx, d, p, w);
            out["nakano_invariant"] = nk.invariant_identity;
            out["nakano_zero_mode"] = nk.k_on_invariants;
            out["transfer_split"] = verify_t_decomposition(ctx, d, p, w);
            return out;
        },
        py::arg("algebra"), py::arg("d"), py::arg("p"), py::arg("w"),
        "max deviations of the metric-side identities on one block");

    m.def(
        "harmonic_dim",
        [](const std::string& name, int d, int p, int w, double tol) {
            LieAlgebraData alg = build_algebra(name);
            HodgeContext ctx(alg);
            return static_cast<long long>(harmonic_basis(ctx, d, p, w, tol).vectors.cols());
        },
        py::arg("algebra"), py::arg("d"), py::arg("p"), py::arg("w"), py::arg("tol") = 1e-7,
        "dimension of the numeric harmonic subspace of one block");

    m.def(
        "delta1",
        [](int mm, int n, int max_k) {
            Delta1Report rep = delta1_cokernel(mm, n, max_k);
            py::dict out;
            out["kernel_dim"] = rep.kernel_dim;
            out["cokernel_weights"] = rep.cokernel_weights;
            return out;
        },
        py::arg("m"), py::arg("n"), py::arg("max_k") = 8,
        "kernel dimension and cokernel weights of the edge differential at the germ level");
}
