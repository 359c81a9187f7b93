#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "currents/liealg.hpp"

using namespace currents;

namespace {

Rational coeff_of(const BasisVec<Rational>& v, int idx) {
    for (const auto& [c, k] : v)
        if (c == idx) return k;
    return Rational(0);
}

// [[a,b],c] + [[b,c],a] + [[c,a],b] expanded through the bracket tables.
std::vector<Rational> jacobi_defect(const LieAlgebraData& alg, int a, int b, int c) {
    std::vector<Rational> out(alg.dim, Rational(0));
    auto add_double = [&](int x, int y, int z) {
        for (const auto& [m, k] : alg.bracket[x][y])
            for (const auto& [r, k2] : alg.bracket[m][z]) out[r] += k * k2;
    };
    add_double(a, b, c);
    add_double(b, c, a);
    add_double(c, a, b);
    return out;
}

} // namespace

TEST_CASE("dimensions, labels and distinguished indices") {
    auto sl2 = build_algebra("sl2");
    CHECK(sl2.dim == 3);
    CHECK(sl2.labels == std::vector<std::string>{"E12", "H1", "E21"});
    CHECK(sl2.cartan == std::vector<int>{1});
    CHECK(sl2.simple_raising == std::vector<int>{0});
    CHECK(sl2.simple_lowering == std::vector<int>{2});

    CHECK(build_algebra("sl3").dim == 8);
    CHECK(build_algebra("sl4").dim == 15);
    CHECK(build_algebra("gl2").dim == 4);
    CHECK(build_algebra("gl3").dim == 9);
}

TEST_CASE("exponents") {
    CHECK(build_algebra("sl2").exponents == std::vector<int>{1});
    CHECK(build_algebra("sl3").exponents == std::vector<int>{1, 2});
    CHECK(build_algebra("sl4").exponents == std::vector<int>{1, 2, 3});
    CHECK(build_algebra("gl2").exponents == std::vector<int>{0, 1});
    CHECK(build_algebra("gl3").exponents == std::vector<int>{0, 1, 2});
}

TEST_CASE("unsupported algebras are rejected") {
    CHECK_THROWS_AS(build_algebra("sp4"), UnsupportedAlgebra);
    CHECK_THROWS_AS(build_algebra("sl1"), UnsupportedAlgebra);
    CHECK_THROWS_AS(build_algebra("sl"), UnsupportedAlgebra);
}

TEST_CASE("sl2 bracket table matches the hand computation") {
    auto alg = build_algebra("sl2");
    const int e = 0, h = 1, f = 2;
    CHECK(coeff_of(alg.bracket[h][e], e) == 2);
    CHECK(coeff_of(alg.bracket[h][f], f) == -2);
    CHECK(coeff_of(alg.bracket[e][f], h) == 1);
    CHECK(alg.bracket[e][e].empty());
}

TEST_CASE("bracket antisymmetry and Jacobi identity") {
    for (const char* name : {"sl2", "sl3", "gl2", "gl3"}) {
        auto alg = build_algebra(name);
        for (int a = 0; a < alg.dim; ++a)
            for (int b = 0; b < alg.dim; ++b)
                for (int c = 0; c < alg.dim; ++c) {
                    if (c == 0) // antisymmetry once per pair
                        for (const auto& [m, k] : alg.bracket[a][b])
                            CHECK(coeff_of(alg.bracket[b][a], m) == -k);
                    for (const auto& v : jacobi_defect(alg, a, b, c)) CHECK(is_zero(v));
                }
    }
}

TEST_CASE("Killing gram matches the closed trace form") {
    for (const char* name : {"sl2", "sl3", "sl4", "gl2", "gl3"}) {
        auto alg = build_algebra(name);
        for (int a = 0; a < alg.dim; ++a)
            for (int b = 0; b < alg.dim; ++b) {
                Rational txy(0), tx(0), ty(0);
                for (int i = 0; i < alg.n; ++i) {
                    tx += alg.rep[a][i][i];
                    ty += alg.rep[b][i][i];
                    for (int j = 0; j < alg.n; ++j) txy += alg.rep[a][i][j] * alg.rep[b][j][i];
                }
                Rational expected = Rational(2 * alg.n) * txy;
                if (alg.family == Family::gl) expected -= 2 * tx * ty;
                CHECK(alg.killing[a][b] == expected);
            }
    }
}

TEST_CASE("coadjoint table is the negative transpose of the adjoint one") {
    auto alg = build_algebra("sl3");
    for (int a = 0; a < alg.dim; ++a)
        for (int b = 0; b < alg.dim; ++b)
            for (const auto& [c, k] : alg.coadjoint[a][b])
                CHECK(coeff_of(alg.bracket[a][c], b) == -k);
}

TEST_CASE("ad weights vanish exactly on Cartan directions") {
    for (const char* name : {"sl3", "gl2"}) {
        auto alg = build_algebra(name);
        for (int a = 0; a < alg.dim; ++a) {
            bool zero = true;
            for (int w : alg.ad_weight[a]) zero = zero && (w == 0);
            bool is_cartan =
                std::find(alg.cartan.begin(), alg.cartan.end(), a) != alg.cartan.end();
            CHECK(zero == is_cartan);
        }
    }
}

TEST_CASE("compact basis of sl2 is the scaled Pauli triple") {
    auto alg = build_algebra("sl2");
    auto cb = compact_basis(alg);
    REQUIRE(cb.dim == 3);
    double s = 1.0 / (2.0 * std::sqrt(2.0));
    CHECK(std::abs(cb.xi[0](0, 1) - Cplx(s, 0)) < 1e-12);   // sigma_x / 2 sqrt 2
    CHECK(std::abs(cb.xi[1](0, 1) - Cplx(0, s)) < 1e-12);   // -sigma_y / 2 sqrt 2
    CHECK(std::abs(cb.xi[2](0, 0) - Cplx(s, 0)) < 1e-12);   // sigma_z / 2 sqrt 2
}

TEST_CASE("compact basis invariants") {
    for (const char* name : {"sl2", "sl3", "gl2"}) {
        auto alg = build_algebra(name);
        auto cb = compact_basis(alg);
        REQUIRE(cb.dim == alg.dim);

        for (int a = 0; a < cb.dim; ++a) {
            CHECK((cb.xi[a] - cb.xi[a].adjoint()).norm() < 1e-12);
            for (int b = 0; b < cb.dim; ++b) {
                double scale = (a == cb.center_index || b == cb.center_index) ? 1.0 : 2.0 * alg.n;
                Cplx p = scale * (cb.xi[a] * cb.xi[b]).trace();
                CHECK(std::abs(p - (a == b ? Cplx(1) : Cplx(0))) < 1e-10);
            }
        }

        // structure constants: purely imaginary and totally antisymmetric
        auto g = [&](int a, int b, int c) -> Cplx {
            for (const auto& [idx, v] : cb.bracket[a][b])
                if (idx == c) return v;
            return Cplx(0);
        };
        for (int a = 0; a < cb.dim; ++a)
            for (int b = 0; b < cb.dim; ++b)
                for (const auto& [c, v] : cb.bracket[a][b]) {
                    CHECK(std::abs(v.real()) < 1e-10);
                    CHECK(std::abs(v + g(b, a, c)) < 1e-10);
                    CHECK(std::abs(v + g(a, c, b)) < 1e-10);
                }

        // sum_a ad(xi_a)^2 = identity on the traceless part, 0 on the center
        Eigen::MatrixXcd casimir = Eigen::MatrixXcd::Zero(cb.dim, cb.dim);
        for (int a = 0; a < cb.dim; ++a) {
            Eigen::MatrixXcd ada = Eigen::MatrixXcd::Zero(cb.dim, cb.dim);
            for (int b = 0; b < cb.dim; ++b)
                for (const auto& [c, v] : cb.bracket[a][b]) ada(c, b) = v;
            casimir += ada * ada;
        }
        Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(cb.dim, cb.dim);
        if (cb.center_index >= 0) expect(cb.center_index, cb.center_index) = 0;
        CHECK((casimir - expect).norm() < 1e-10);
    }
}

TEST_CASE("sl2 compact structure constant magnitude") {
    auto cb = compact_basis(build_algebra("sl2"));
    Cplx g12 = 0;
    for (const auto& [c, v] : cb.bracket[0][1])
        if (c == 2) g12 = v;
    CHECK(std::abs(std::abs(g12) - 1.0 / std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("invariant forms exist exactly at exponent degrees and are invariant") {
    struct Case { const char* name; std::vector<int> good; std::vector<int> bad; };
    for (const Case& tc : {Case{"sl2", {2}, {1, 3}}, Case{"sl3", {2, 3}, {1, 4}},
                           Case{"gl2", {1, 2}, {3}}, Case{"sl4", {2, 3, 4}, {5}}}) {
        auto alg = build_algebra(tc.name);
        for (int k : tc.bad) CHECK_THROWS_AS(invariant_form(alg, k), NotAnExponent);
        for (int k : tc.good) {
            auto phi = invariant_form(alg, k);
            CHECK(!phi.coeff.empty());
            // ad-invariance: sum_i Phi(a_0, .., [b, a_i], .., a_m) = 0
            std::vector<int> idx(k, 0);
            for (;;) {
                for (int b = 0; b < alg.dim; ++b) {
                    Rational acc(0);
                    for (int i = 0; i < k; ++i)
                        for (const auto& [c, coef] : alg.bracket[b][idx[i]]) {
                            std::vector<int> jdx = idx;
                            jdx[i] = c;
                            acc += coef * phi.at(jdx);
                        }
                    CHECK(is_zero(acc));
                }
                int p = k - 1;
                while (p >= 0 && idx[p] == alg.dim - 1) --p;
                if (p < 0) break;
                int nv = idx[p] + 1;
                for (int q = p; q < k; ++q) idx[q] = nv;
            }
        }
    }
}

TEST_CASE("compact-basis quadratic form is a multiple of the identity pairing") {
    auto alg = build_algebra("sl2");
    auto cb = compact_basis(alg);
    auto phi = invariant_form_compact(alg, cb, 2);
    Cplx diag = phi.at({0, 0});
    CHECK(std::abs(diag) > 1e-12);
    for (int a = 0; a < cb.dim; ++a)
        for (int b = a; b < cb.dim; ++b) {
            Cplx expect = (a == b) ? diag : Cplx(0);
            CHECK(std::abs(phi.at({a, b}) - expect) < 1e-10);
        }
}

TEST_CASE("gl2 trace form pairs only the center-aligned direction") {
    auto alg = build_algebra("gl2");
    auto phi = invariant_form(alg, 1);   // x -> tr(x)
    // basis order E11 E12 E21 E22
    CHECK(phi.at({0}) == 1);
    CHECK(phi.at({3}) == 1);
    CHECK(phi.at({1}) == 0);
    CHECK(phi.at({2}) == 0);
}
