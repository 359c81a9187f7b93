#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "currents/hodge.hpp"

using namespace currents;

namespace {

struct Fixture {
    LieAlgebraData alg = build_algebra("sl2");
    HodgeContext ctx{alg};
};

} // namespace

TEST_CASE("metric diagonal: odd depths invert, repeated even factors contribute factorials") {
    Fixture f;
    const Block& b1 = f.ctx.block(1, 0, 2); // single psi at depth 2
    Eigen::VectorXd g1 = metric_diagonal(b1);
    for (int i = 0; i < b1.dim(); ++i) CHECK(g1(i) == doctest::Approx(0.5));

    const Block& b2 = f.ctx.block(0, 2, 0); // sigma pairs at depth 0
    Eigen::VectorXd g2 = metric_diagonal(b2);
    for (int i = 0; i < b2.dim(); ++i) {
        const Monomial& m = b2.basis[i];
        double expect = m.sigmas[0] == m.sigmas[1] ? 2.0 : 1.0;
        CHECK(g2(i) == doctest::Approx(expect));
    }

    const Block& b3 = f.ctx.block(2, 1, 3);
    Eigen::VectorXd g3 = metric_diagonal(b3);
    for (int i = 0; i < b3.dim(); ++i) {
        const Monomial& m = b3.basis[i];
        double expect = 1.0 / (m.psis[0].depth * m.psis[1].depth);
        CHECK(g3(i) == doctest::Approx(expect));
    }
}

TEST_CASE("the context rejects algebras with a degenerate Killing form") {
    LieAlgebraData gl2 = build_algebra("gl2");
    CHECK_THROWS_AS(HodgeContext{gl2}, UnsupportedAlgebra);
}

TEST_CASE("implemented adjoints agree with the metric adjoints") {
    Fixture f;
    for (auto [d, p, w] : {std::tuple{0, 1, 2}, {1, 1, 2}, {1, 0, 3}, {2, 1, 3}, {1, 2, 2}})
        CHECK(verify_adjointness(f.ctx, d, p, w) < 1e-9);
}

TEST_CASE("the Laplacian is hermitian positive semidefinite in scaled coordinates") {
    Fixture f;
    for (auto [d, p, w] : {std::tuple{1, 1, 2}, {2, 0, 3}, {1, 2, 2}}) {
        const Block& blk = f.ctx.block(d, p, w);
        Eigen::VectorXd s = metric_diagonal(blk).cwiseSqrt();
        Eigen::MatrixXcd lh = s.cast<Cplx>().asDiagonal() * laplacian_matrix(f.ctx, d, p, w) *
                              s.cwiseInverse().cast<Cplx>().asDiagonal();
        CHECK((lh - lh.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((lh + lh.adjoint()) / 2.0);
        CHECK(es.eigenvalues().minCoeff() > -1e-9);
    }
}

TEST_CASE("differential of a single odd generator matches the pair expansion") {
    Fixture f;
    const int n = 4;
    const Block& src = f.ctx.block(1, 0, n);
    const Block& tgt = f.ctx.block(2, 0, n);
    Eigen::MatrixXcd dd = dbar_matrix(f.ctx, 1, 0, n);
    for (int b = 0; b < f.ctx.cb.dim; ++b) {
        Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(tgt.dim());
        for (int a = 0; a < f.ctx.cb.dim; ++a)
            for (int m = 1; m < n; ++m)
                for (const auto& [e, v] : f.ctx.cb.bracket[a][b]) {
                    auto [mono, sgn] = normalize({psi(a, m), psi(e, n - m)});
                    if (sgn == 0) continue;
                    expect(tgt.index_of(mono)) += 0.5 * v * Cplx(sgn, 0);
                }
        int col = src.index_of(Monomial{{psi(b, n)}, {}});
        CHECK((dd.col(col) - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("adjoint differential on an odd pair carries the (n+p)/np coefficient") {
    Fixture f;
    const int n = 1, p = 3;
    const Block& src = f.ctx.block(2, 0, n + p);
    const Block& tgt = f.ctx.block(1, 0, n + p);
    Eigen::MatrixXcd ds = dbar_star_matrix(f.ctx, 2, 0, n + p);
    for (int b = 0; b < f.ctx.cb.dim; ++b)
        for (int c = 0; c < f.ctx.cb.dim; ++c) {
            auto [mono, sgn] = normalize({psi(b, n), psi(c, p)});
            if (sgn == 0) continue;
            REQUIRE(sgn == 1); // n < p keeps the written order canonical
            Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(tgt.dim());
            for (const auto& [e, v] : f.ctx.cb.bracket[b][c])
                expect(tgt.index_of(Monomial{{psi(e, n + p)}, {}})) +=
                    v * Cplx(double(n + p) / (n * p), 0);
            CHECK((ds.col(src.index_of(mono)) - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
}

TEST_CASE("adjoint differential on a mixed pair divides by the odd depth") {
    Fixture f;
    const int n = 2, p = 1; // sigma depth n, psi depth p
    const Block& src = f.ctx.block(1, 1, n + p);
    const Block& tgt = f.ctx.block(0, 1, n + p);
    Eigen::MatrixXcd ds = dbar_star_matrix(f.ctx, 1, 1, n + p);
    for (int b = 0; b < f.ctx.cb.dim; ++b)
        for (int c = 0; c < f.ctx.cb.dim; ++c) {
            Monomial mono{{psi(c, p)}, {sigma(b, n)}};
            Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(tgt.dim());
            for (const auto& [e, v] : f.ctx.cb.bracket[c][b])
                expect(tgt.index_of(Monomial{{}, {sigma(e, n + p)}})) += v * Cplx(1.0 / p, 0);
            CHECK((ds.col(src.index_of(mono)) - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
}

TEST_CASE("single-generator closed forms: harmonic-sum coefficients to 1e-10") {
    Fixture f;
    for (int n = 1; n <= 6; ++n) {
        LinearGermCoefficients c = linear_germ_coefficients(f.ctx, n);
        CAPTURE(n);
        CHECK(c.max_deviation < 1e-10);
        CHECK(c.laplacian == doctest::Approx(c.expected_laplacian).epsilon(1e-10));
        CHECK(c.d_term == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(c.k_term == doctest::Approx(-1.0 / n).epsilon(1e-10));
    }
}

TEST_CASE("Laplacian splits into current, transfer, and zero-mode terms on full blocks") {
    Fixture f;
    for (auto [d, p, w] : {std::tuple{1, 0, 3}, {2, 0, 4}, {1, 1, 3}, {0, 2, 2}, {2, 1, 3}})
        CHECK(verify_laplacian_split(f.ctx, d, p, w) < 1e-8);
}

TEST_CASE("zero-mode term annihilates invariants; Nakano identity holds there") {
    Fixture f;
    for (auto [d, p, w] : {std::tuple{1, 1, 2}, {2, 0, 3}, {1, 2, 2}, {2, 1, 3}}) {
        NakanoReport rep = verify_nakano(f.ctx, d, p, w);
        CAPTURE(d);
        CAPTURE(p);
        CAPTURE(w);
        CHECK(rep.invariant_identity < 1e-8);
        CHECK(rep.k_on_invariants < 1e-8);
    }
}

TEST_CASE("commutator term plus exterior degree equals the transfer term on full blocks") {
    Fixture f;
    for (auto [d, p, w] : {std::tuple{1, 0, 3}, {2, 0, 3}, {1, 1, 2}, {2, 1, 3}, {1, 2, 2}})
        CHECK(verify_t_decomposition(f.ctx, d, p, w) < 1e-8);
}

TEST_CASE("harmonic dimensions equal exact cohomology dimensions per block") {
    Fixture f;
    Bounds bounds{2, 2, 3};
    auto table = super_cohomology_table(f.alg, bounds);
    for (const auto& r : table) {
        HarmonicBasis hb = harmonic_basis(f.ctx, r.d, r.p, r.w);
        CAPTURE(r.d);
        CAPTURE(r.p);
        CAPTURE(r.w);
        CHECK(hb.vectors.cols() == r.dim);
    }
}

TEST_CASE("known harmonic blocks: invariant pairing at weight zero, first mixed class") {
    Fixture f;
    CHECK(harmonic_basis(f.ctx, 0, 2, 0).vectors.cols() == 1);
    CHECK(harmonic_basis(f.ctx, 1, 1, 1).vectors.cols() == 1);
    CHECK(harmonic_basis(f.ctx, 1, 0, 1).vectors.cols() == 0);
    CHECK(harmonic_basis(f.ctx, 1, 0, 2).vectors.cols() == 0);
}

TEST_CASE("both harmonic constructions produce the same subspace") {
    Fixture f;
    for (auto [d, p, w] : {std::tuple{0, 2, 0}, {1, 1, 1}, {1, 1, 2}, {0, 2, 2}, {2, 2, 3}}) {
        HarmonicBasis h1 = harmonic_basis(f.ctx, d, p, w);
        HarmonicBasis h2 = harmonic_basis_joint(f.ctx, d, p, w);
        CAPTURE(d);
        CAPTURE(p);
        CAPTURE(w);
        REQUIRE(h1.vectors.cols() == h2.vectors.cols());
        CHECK(subspace_distance(f.ctx, h1, h2) < 1e-7);
    }
}

TEST_CASE("products of harmonic vectors stay harmonic") {
    Fixture f;
    CHECK(verify_harmonic_subalgebra(f.ctx, {0, 2, 0}, {0, 2, 0}) < 1e-7);
    CHECK(verify_harmonic_subalgebra(f.ctx, {0, 2, 0}, {1, 1, 1}) < 1e-7);
    CHECK(verify_harmonic_subalgebra(f.ctx, {1, 1, 1}, {1, 1, 2}) < 1e-7);
}

TEST_CASE("kernel extraction refuses to guess near the threshold") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-6; // inside the two-decade band around 1e-7
    CHECK_THROWS_AS(dense_kernel(m, 1e-7), ToleranceAmbiguity);
    m(1, 1) = 1e-12;
    CHECK(dense_kernel(m, 1e-7).cols() == 1);
}

TEST_CASE("numeric invariants match the exact invariant count") {
    Fixture f;
    BlockCache cache(f.ctx.uni);
    for (auto [d, p, w] : {std::tuple{0, 2, 0}, {1, 1, 1}, {2, 1, 3}, {1, 2, 2}}) {
        auto exact = invariant_subspace(cache.get(d, p, w));
        CHECK(invariant_columns(f.ctx, d, p, w).cols() == static_cast<int>(exact.size()));
    }
}
