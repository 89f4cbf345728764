#include <doctest.h>

#include <cmath>

#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"

using namespace qcorr;

namespace {

CMatrix random_matrix(RandomStream& rs, int n) {
    CMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = Complex(rs.next_normal(), rs.next_normal());
    return m;
}

CMatrix random_hermitian(RandomStream& rs, int n) {
    const CMatrix m = random_matrix(rs, n);
    CMatrix h = m;
    h += m.adjoint();
    h *= Complex(0.5, 0.0);
    return h;
}

CMatrix random_unitary(RandomStream& rs, int n) {
    // Gram-Schmidt on a Ginibre draw
    CMatrix g = random_matrix(rs, n);
    for (int c = 0; c < n; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            Complex dot(0, 0);
            for (int r = 0; r < n; ++r) dot += std::conj(g(r, prev)) * g(r, c);
            for (int r = 0; r < n; ++r) g(r, c) -= dot * g(r, prev);
        }
        double nrm = 0.0;
        for (int r = 0; r < n; ++r) nrm += std::norm(g(r, c));
        nrm = std::sqrt(nrm);
        for (int r = 0; r < n; ++r) g(r, c) /= nrm;
    }
    return g;
}

}  // namespace

TEST_CASE("hermitian eigensolver: residuals, orthonormality, ordering") {
    RandomStream rs(11);
    for (int t = 0; t < 200; ++t) {
        const CMatrix h = random_hermitian(rs, 4);
        const EigenSystem es = eig_hermitian_full(h);
        for (size_t i = 0; i + 1 < es.values.size(); ++i)
            CHECK(es.values[i] >= es.values[i + 1]);
        // residual || H v - w v || per pair, vectors as matrix columns
        for (int j = 0; j < 4; ++j) {
            double res = 0.0, nrm = 0.0;
            for (int r = 0; r < 4; ++r) {
                Complex hv(0, 0);
                for (int c = 0; c < 4; ++c) hv += h(r, c) * es.vectors(c, j);
                res += std::norm(hv - es.values[static_cast<size_t>(j)] * es.vectors(r, j));
                nrm += std::norm(es.vectors(r, j));
            }
            CHECK(std::sqrt(res) <= 1e-9);
            CHECK(std::abs(std::sqrt(nrm) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("trace equals eigenvalue sum") {
    RandomStream rs(12);
    for (int t = 0; t < 1000; ++t) {
        const CMatrix h = random_hermitian(rs, 4);
        double tr = 0.0;
        for (int i = 0; i < 4; ++i) tr += h(i, i).real();
        const Spectrum sp = eig_hermitian(h);
        CHECK(std::abs(tr - sp.sum()) <= 1e-10 * (1.0 + std::abs(tr)));
    }
}

TEST_CASE("spectrum invariant under unitary conjugation") {
    RandomStream rs(13);
    for (int t = 0; t < 200; ++t) {
        const CMatrix h = random_hermitian(rs, 4);
        const CMatrix w = random_unitary(rs, 4);
        const Spectrum a = eig_hermitian(h);
        const Spectrum b = eig_hermitian(w * h * w.adjoint());
        CHECK(a.distance(b) <= 1e-9);
    }
}

TEST_CASE("non-hermitian input rejected") {
    CMatrix m(4);
    for (int i = 0; i < 4; ++i) m(i, i) = Complex(1.0, 0.0);
    m(0, 1) = Complex(1e-3, 0.0);  // no matching (1, 0) entry
    CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
}

TEST_CASE("svd2 reconstruction and conventions") {
    RandomStream rs(14);
    for (int t = 0; t < 1000; ++t) {
        const CMatrix a = random_matrix(rs, 2);
        const Svd2 sv = svd2(a);
        CHECK(sv.d(0, 0).real() >= sv.d(1, 1).real());
        CHECK(sv.d(1, 1).real() >= -1e-12);
        CHECK(std::abs(sv.d(0, 1)) <= 1e-10);
        CHECK(std::abs(sv.d(1, 0)) <= 1e-10);
        CHECK(sv.u.unitarity_error() <= 1e-10);
        CHECK(sv.v.unitarity_error() <= 1e-10);
        // V a U^T = D  <=>  a = V^dag D conj(U)
        const CMatrix back = sv.v.adjoint() * sv.d * sv.u.conjugate();
        CHECK((back - a).max_abs() <= 1e-10);
    }
}

TEST_CASE("cubic solver against expanded products") {
    RandomStream rs(15);
    for (int t = 0; t < 1000; ++t) {
        double r[3];
        r[0] = rs.uniform(-3.0, 3.0);
        r[1] = rs.uniform(-3.0, 3.0);
        r[2] = rs.uniform(-3.0, 3.0);
        std::sort(r, r + 3, std::greater<double>());
        const double e1 = r[0] + r[1] + r[2];
        const double e2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
        const double e3 = r[0] * r[1] * r[2];
        const auto roots = cubic_roots(-1.0, e1, -e2, e3);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(roots[static_cast<size_t>(k)] - r[k]) <= 1e-9);
    }
}

TEST_CASE("cubic solver matches eigensolver on 3x3 characteristic polynomials") {
    RandomStream rs(16);
    for (int t = 0; t < 1000; ++t) {
        const CMatrix h = random_hermitian(rs, 3);
        // det(H - x I) expanded: -x^3 + tr x^2 - m2 x + det
        const double tr = (h(0, 0) + h(1, 1) + h(2, 2)).real();
        const Complex det =
            h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) -
            h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
            h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0));
        const Complex m2 = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)) +
                           (h(0, 0) * h(2, 2) - h(0, 2) * h(2, 0)) +
                           (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1));
        const auto roots = cubic_roots(-1.0, tr, -m2.real(), det.real());
        const Spectrum sp = eig_hermitian(h);
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(roots[static_cast<size_t>(k)] - sp[static_cast<size_t>(k)]) <= 1e-8);
    }
}

TEST_CASE("spectrum helpers") {
    const Spectrum sp({0.1, 0.5, 0.3});
    CHECK(sp[0] == doctest::Approx(0.5));
    CHECK(sp[2] == doctest::Approx(0.1));
    CHECK(sp.sum() == doctest::Approx(0.9));
    CHECK(sp.min_gap() == doctest::Approx(0.2));
    const Spectrum sq({0.5, 0.25, 0.15});
    CHECK(sp.distance(sq) == doctest::Approx(0.05));
    CHECK(sq.distance(sp) == doctest::Approx(0.05));
}
