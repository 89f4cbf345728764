#include "qcorr/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcorr {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

CMatrix pauli(int k) {
    switch (k) {
        case 0: return CMatrix::identity(2);
        case 1: return CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
        case 2: return CMatrix::from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}});
        case 3: return CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
        default: throw std::invalid_argument("pauli: index out of range");
    }
}

PureState4 PureState4::from_amplitudes(const std::array<Complex, 4>& amps) {
    double n2 = 0.0;
    for (const auto& z : amps) n2 += std::norm(z);
    if (n2 < 1e-24) {
        std::ostringstream os;
        os << "PureState4: norm " << std::sqrt(n2) << " too small to normalize";
        throw std::invalid_argument(os.str());
    }
    PureState4 s;
    const double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < 4; ++i) s.a_[i] = amps[static_cast<size_t>(i)] * inv;
    return s;
}

CMatrix PureState4::projector() const {
    CMatrix p(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) p(r, c) = a_[static_cast<size_t>(r)] * std::conj(a_[static_cast<size_t>(c)]);
    return p;
}

Complex overlap(const PureState4& a, const PureState4& b) {
    Complex s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(a.amp(i)) * b.amp(i);
    return s;
}

double PauliCoeffs::norm_sq() const {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return s;
}

PauliCoeffs to_pauli(const PureState4& psi) {
    const Complex p00 = psi.amp(0), p01 = psi.amp(1), p10 = psi.amp(2), p11 = psi.amp(3);
    PauliCoeffs pc;
    pc.a[0] = (p00 + p11) * kInvSqrt2;
    pc.a[1] = (p01 + p10) * kInvSqrt2;
    pc.a[2] = Complex(0.0, -1.0) * (p01 - p10) * kInvSqrt2;
    pc.a[3] = (p00 - p11) * kInvSqrt2;
    return pc;
}

PureState4 from_pauli(const PauliCoeffs& pc) {
    const Complex a0 = pc.a[0], a1 = pc.a[1], a2 = pc.a[2], a3 = pc.a[3];
    std::array<Complex, 4> amps = {
        (a0 + a3) * kInvSqrt2,
        (a1 + Complex(0.0, 1.0) * a2) * kInvSqrt2,
        (a1 - Complex(0.0, 1.0) * a2) * kInvSqrt2,
        (a0 - a3) * kInvSqrt2,
    };
    return PureState4::from_amplitudes(amps);
}

CMatrix pauli_matrix_of(const PauliCoeffs& pc) {
    CMatrix m(2);
    for (int k = 0; k < 4; ++k) {
        CMatrix s = pauli(k);
        s *= pc.a[static_cast<size_t>(k)];
        m += s;
    }
    return m;
}

PureState4 bell_state(int k) {
    if (k < 0 || k > 3) throw std::invalid_argument("bell_state: index out of range");
    PauliCoeffs pc;
    pc.a[static_cast<size_t>(k)] = 1.0;
    return from_pauli(pc);
}

PureState4 canonical_theta_state(double theta) {
    if (theta < -1e-12 || theta > M_PI / 2 + 1e-12)
        throw std::invalid_argument("canonical_theta_state: theta outside [0, pi/2]");
    return PureState4::from_amplitudes(
        {std::cos(theta / 2), 0.0, 0.0, std::sin(theta / 2)});
}

PureState4 apply_local(const CMatrix& u, const CMatrix& v, const PureState4& psi) {
    if (u.dim() != 2 || v.dim() != 2)
        throw std::invalid_argument("apply_local: factors must be 2x2");
    std::array<Complex, 4> out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex z = 0.0;
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) z += u(i, k) * v(j, l) * psi.amp(2 * k + l);
            out[static_cast<size_t>(2 * i + j)] = z;
        }
    return PureState4::from_amplitudes(out);
}

SchmidtForm schmidt_canonicalize(const PureState4& psi) {
    // matrix picture: psi_{ij} = A_{ji}/sqrt(2)
    CMatrix a(2);
    a(0, 0) = psi.amp(0) * std::sqrt(2.0);
    a(1, 0) = psi.amp(1) * std::sqrt(2.0);
    a(0, 1) = psi.amp(2) * std::sqrt(2.0);
    a(1, 1) = psi.amp(3) * std::sqrt(2.0);
    Svd2 sv = svd2(a);  // v a u^T = diag(s0, s1), s0^2 + s1^2 = 2
    SchmidtForm sf;
    sf.theta = 2.0 * std::atan2(sv.d(1, 1).real(), sv.d(0, 0).real());
    sf.u = sv.u;
    sf.v = sv.v;
    return sf;
}

double entanglement(const PureState4& psi, EntanglementKind kind) {
    const SchmidtForm sf = schmidt_canonicalize(psi);
    const double c = std::cos(sf.theta / 2), s = std::sin(sf.theta / 2);
    const double e0 = c * c, e1 = s * s;
    if (kind == EntanglementKind::linear) return 2.0 * (1.0 - e0 * e0 - e1 * e1);
    double h = 0.0;
    if (e0 > 0.0) h -= e0 * std::log(e0);
    if (e1 > 0.0) h -= e1 * std::log(e1);
    return h;
}

PureState4 random_pure(RandomStream& rs) {
    std::array<Complex, 4> amps{};
    for (auto& z : amps) {
        const double re = rs.next_normal();
        const double im = rs.next_normal();
        z = Complex(re, im);
    }
    return PureState4::from_amplitudes(amps);
}

CMatrix random_unitary2(RandomStream& rs) {
    Complex g[2][2];
    for (auto& row : g)
        for (auto& z : row) z = Complex(rs.next_normal(), rs.next_normal());
    // first column normalized, second orthogonalized against it
    double n0 = std::sqrt(std::norm(g[0][0]) + std::norm(g[1][0]));
    const Complex q00 = g[0][0] / n0, q10 = g[1][0] / n0;
    const Complex proj = std::conj(q00) * g[0][1] + std::conj(q10) * g[1][1];
    Complex r01 = g[0][1] - proj * q00;
    Complex r11 = g[1][1] - proj * q10;
    const double n1 = std::sqrt(std::norm(r01) + std::norm(r11));
    CMatrix u(2);
    u(0, 0) = q00;
    u(0, 1) = r01 / n1;
    u(1, 0) = q10;
    u(1, 1) = r11 / n1;
    return u;
}

MaxEntangled::MaxEntangled(const CMatrix& u) : u_(u) {
    if (u.dim() != 2) throw std::invalid_argument("MaxEntangled: unitary must be 2x2");
    const double err = u.unitarity_error();
    if (err > 1e-10) {
        std::ostringstream os;
        os << "MaxEntangled: matrix not unitary, deviation " << err;
        throw std::invalid_argument(os.str());
    }
}

MaxEntangled MaxEntangled::bell0() { return MaxEntangled(CMatrix::identity(2)); }

PureState4 MaxEntangled::state() const {
    return apply_local(CMatrix::identity(2), u_, bell_state(0));
}

PureState4 max_entangled_from_unitary(const CMatrix& u) { return MaxEntangled(u).state(); }

CMatrix ptrace_first(const CMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("ptrace_first: expects 4x4");
    CMatrix g(2);
    for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
            g(c, d) = rho(0 * 2 + c, 0 * 2 + d) + rho(1 * 2 + c, 1 * 2 + d);
    return g;
}

CMatrix ptrace_second(const CMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("ptrace_second: expects 4x4");
    CMatrix g(2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            g(a, b) = rho(a * 2 + 0, b * 2 + 0) + rho(a * 2 + 1, b * 2 + 1);
    return g;
}

}  // namespace qcorr
