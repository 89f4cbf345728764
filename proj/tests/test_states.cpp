#include <doctest.h>

#include <cmath>

#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

std::array<Complex, 4> matvec4(const CMatrix& m, const std::array<Complex, 4>& v) {
    std::array<Complex, 4> out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out[static_cast<size_t>(r)] += m(r, c) * v[static_cast<size_t>(c)];
    return out;
}

double state_distance(const PureState4& a, const PureState4& b) {
    // up to global phase
    return 1.0 - std::abs(overlap(a, b));
}

}  // namespace

TEST_CASE("pauli matrices are unitary and hermitian") {
    for (int k = 0; k < 4; ++k) {
        CHECK(pauli(k).unitarity_error() <= 1e-15);
        CHECK(pauli(k).hermiticity_error() <= 1e-15);
    }
    CHECK_THROWS_AS(pauli(4), std::invalid_argument);
}

TEST_CASE("bell states are orthonormal") {
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            const Complex ov = overlap(bell_state(j), bell_state(k));
            CHECK(std::abs(ov - (j == k ? Complex(1, 0) : Complex(0, 0))) <= 1e-12);
        }
}

TEST_CASE("from_amplitudes normalizes and rejects the zero vector") {
    const auto psi = PureState4::from_amplitudes(
        {Complex(3, 0), Complex(0, 0), Complex(0, 0), Complex(4, 0)});
    double n = 0.0;
    for (const auto& a : psi.amplitudes()) n += std::norm(a);
    CHECK(std::abs(n - 1.0) <= 1e-14);
    CHECK_THROWS_AS(PureState4::from_amplitudes(
                        {Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)}),
                    std::invalid_argument);
}

TEST_CASE("pauli coefficient round trip") {
    RandomStream rs(21);
    for (int t = 0; t < 1000; ++t) {
        const PureState4 psi = random_pure(rs);
        const PureState4 back = from_pauli(to_pauli(psi));
        double d = 0.0;
        for (size_t i = 0; i < 4; ++i)
            d = std::max(d, std::abs(psi.amplitudes()[i] - back.amplitudes()[i]));
        CHECK(d <= 1e-12);
        CHECK(std::abs(to_pauli(psi).norm_sq() - 1.0) <= 1e-12);
    }
}

TEST_CASE("transpose identity (I (x) A) b0 = (A^T (x) I) b0") {
    RandomStream rs(22);
    const auto b0 = bell_state(0).amplitudes();
    for (int t = 0; t < 200; ++t) {
        CMatrix a(2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) a(r, c) = Complex(rs.next_normal(), rs.next_normal());
        const auto lhs = matvec4(kron(CMatrix::identity(2), a), b0);
        const auto rhs = matvec4(kron(a.transpose(), CMatrix::identity(2)), b0);
        for (size_t i = 0; i < 4; ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12);
    }
}

TEST_CASE("canonical theta states") {
    const PureState4 p0 = canonical_theta_state(0.0);
    CHECK(std::abs(p0.amp(0) - Complex(1, 0)) <= 1e-15);
    CHECK(state_distance(canonical_theta_state(M_PI / 2), bell_state(0)) <= 1e-14);
    CHECK_THROWS_AS(canonical_theta_state(2.0), std::invalid_argument);
}

TEST_CASE("schmidt canonicalization reaches the theta state") {
    RandomStream rs(23);
    for (int t = 0; t < 300; ++t) {
        const PureState4 psi = random_pure(rs);
        const SchmidtForm sf = schmidt_canonicalize(psi);
        CHECK(sf.theta >= 0.0);
        CHECK(sf.theta <= M_PI / 2 + 1e-12);
        const PureState4 moved = apply_local(sf.u, sf.v, psi);
        CHECK(state_distance(moved, canonical_theta_state(sf.theta)) <= 1e-10);
    }
}

TEST_CASE("entanglement invariant under local unitaries") {
    RandomStream rs(24);
    for (int t = 0; t < 300; ++t) {
        const PureState4 psi = random_pure(rs);
        const CMatrix u = random_unitary2(rs);
        const CMatrix v = random_unitary2(rs);
        const PureState4 moved = apply_local(u, v, psi);
        CHECK(std::abs(entanglement(psi, EntanglementKind::linear) -
                       entanglement(moved, EntanglementKind::linear)) <= 1e-10);
        CHECK(std::abs(entanglement(psi, EntanglementKind::von_neumann) -
                       entanglement(moved, EntanglementKind::von_neumann)) <= 1e-10);
    }
}

TEST_CASE("theta state reduction is (I + cos(theta) sigma3)/2") {
    for (double th : {0.0, 0.3, 0.7, 1.1, M_PI / 2}) {
        const CMatrix red = ptrace_second(canonical_theta_state(th).projector());
        CHECK(std::abs(red(0, 0) - 0.5 * (1.0 + std::cos(th))) <= 1e-12);
        CHECK(std::abs(red(1, 1) - 0.5 * (1.0 - std::cos(th))) <= 1e-12);
        CHECK(std::abs(red(0, 1)) <= 1e-12);
        // linear entanglement equals sin^2(theta) on this family
        CHECK(std::abs(entanglement(canonical_theta_state(th), EntanglementKind::linear) -
                       std::sin(th) * std::sin(th)) <= 1e-12);
    }
}

TEST_CASE("maximal entanglement iff imaginary pauli part (a0 real)") {
    auto make = [](Complex a0, Complex a1, Complex a2, Complex a3) {
        PauliCoeffs pc;
        pc.a = {a0, a1, a2, a3};
        return from_pauli(pc);
    };
    // purely imaginary a1..a3 with real a0: maximally entangled
    for (const auto& psi :
         {make(Complex(0.5, 0), Complex(0, 0.5), Complex(0, 0.5), Complex(0, 0.5)),
          make(Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)),
          make(Complex(0.2, 0), Complex(0, 0.7), Complex(0, 0.1), Complex(0, 0.3))}) {
        CHECK(std::abs(entanglement(psi, EntanglementKind::linear) - 1.0) <= 1e-10);
    }
    // any real part in a1..a3 breaks maximality
    for (const auto& psi :
         {make(Complex(0.5, 0), Complex(0.4, 0.3), Complex(0, 0.5), Complex(0, 0.2)),
          make(Complex(0.7, 0), Complex(0, 0), Complex(0.3, 0), Complex(0, 0.4))}) {
        CHECK(entanglement(psi, EntanglementKind::linear) < 1.0 - 1e-10);
    }
}

TEST_CASE("haar mean linear entanglement near 2/5") {
    RandomStream rs(25);
    double sum = 0.0;
    const int n = 4000;
    for (int t = 0; t < n; ++t)
        sum += entanglement(random_pure(rs), EntanglementKind::linear);
    CHECK(std::abs(sum / n - 0.4) <= 0.02);
}

TEST_CASE("haar unitary sampler produces unitaries") {
    RandomStream rs(26);
    for (int t = 0; t < 200; ++t)
        CHECK(random_unitary2(rs).unitarity_error() <= 1e-12);
}

TEST_CASE("partial traces agree with projector structure") {
    RandomStream rs(27);
    for (int t = 0; t < 100; ++t) {
        const PureState4 psi = random_pure(rs);
        const CMatrix rho = psi.projector();
        const CMatrix r1 = ptrace_first(rho);
        const CMatrix r2 = ptrace_second(rho);
        CHECK(std::abs(r1.trace() - Complex(1, 0)) <= 1e-12);
        CHECK(std::abs(r2.trace() - Complex(1, 0)) <= 1e-12);
        // both reductions of a pure state share their spectrum
        CHECK(eig_hermitian(r1).distance(eig_hermitian(r2)) <= 1e-10);
    }
}
