#include "qcorr/channels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcorr {

ChannelParams::ChannelParams(double mu_, double lambda_, MaxEntangled beta_)
    : mu(mu_), lambda(lambda_), beta(std::move(beta_)) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
        std::ostringstream os;
        os << "ChannelParams: mu = " << mu << " outside [0, 1]";
        throw std::invalid_argument(os.str());
    }
    if (!(lambda >= -1.0 / 3.0 - 1e-12 && lambda <= 1.0)) {
        std::ostringstream os;
        os << "ChannelParams: lambda = " << lambda << " outside [-1/3, 1]";
        throw std::invalid_argument(os.str());
    }
}

ChannelParams ChannelParams::bell0(double mu, double lambda) {
    return ChannelParams(mu, lambda, MaxEntangled::bell0());
}

bool ChannelParams::beta_is_bell0(double tol) const {
    // identity up to global phase
    const CMatrix& u = beta.unitary();
    const Complex ph = u(0, 0);
    if (std::abs(std::abs(ph) - 1.0) > tol) return false;
    CMatrix d = u;
    d *= std::conj(ph);
    d -= CMatrix::identity(2);
    return d.max_abs() <= tol;
}

DensityMatrix4::DensityMatrix4(const CMatrix& m) : m_(m) {
    if (m.dim() != 4) throw std::invalid_argument("DensityMatrix4: expects 4x4");
    const double he = m.hermiticity_error();
    if (he > 1e-10) {
        std::ostringstream os;
        os << "DensityMatrix4: hermiticity deviation " << he;
        throw std::invalid_argument(os.str());
    }
    const double te = std::abs(m.trace() - Complex(1.0));
    if (te > 1e-10) {
        std::ostringstream os;
        os << "DensityMatrix4: trace deviation " << te;
        throw std::invalid_argument(os.str());
    }
    const Spectrum sp = eig_hermitian(m_);
    if (sp[3] < -1e-10) {
        std::ostringstream os;
        os << "DensityMatrix4: negative eigenvalue " << sp[3];
        throw std::invalid_argument(os.str());
    }
}

CMatrix depolarize(const CMatrix& gamma, double lambda) {
    if (gamma.dim() != 2) throw std::invalid_argument("depolarize: expects 2x2");
    CMatrix out = gamma;
    out *= Complex(lambda);
    const Complex t = gamma.trace() * ((1.0 - lambda) / 2.0);
    out(0, 0) += t;
    out(1, 1) += t;
    return out;
}

CMatrix apply_channel_raw(const ChannelParams& cp, const CMatrix& rho) {
    const double l = cp.lambda;
    const Complex tr = rho.trace();

    // (Psi (x) Psi)(rho) = l^2 rho + l(1-l)[Tr_2(rho) (x) I/2 + I/2 (x) Tr_1(rho)]
    //                      + (1-l)^2 Tr(rho) I/4
    CMatrix out = rho;
    out *= Complex(l * l);

    const CMatrix g1 = ptrace_second(rho);  // first qubit marginal
    const CMatrix g2 = ptrace_first(rho);
    const double w = l * (1.0 - l) / 2.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                out(a * 2 + c, b * 2 + c) += w * g1(a, b);
                out(c * 2 + a, c * 2 + b) += w * g2(a, b);
            }
    const Complex iso = tr * ((1.0 - l) * (1.0 - l) / 4.0);
    for (int i = 0; i < 4; ++i) out(i, i) += iso;

    out *= Complex(1.0 - cp.mu);
    if (cp.mu != 0.0) {
        CMatrix proj = cp.beta.state().projector();
        proj *= cp.mu * tr;
        out += proj;
    }
    return out;
}

DensityMatrix4 apply_channel(const ChannelParams& cp, const DensityMatrix4& rho) {
    return DensityMatrix4(apply_channel_raw(cp, rho.matrix()));
}

DensityMatrix4 apply_channel(const ChannelParams& cp, const PureState4& psi) {
    return DensityMatrix4(apply_channel_raw(cp, psi.projector()));
}

DensityMatrix4 product_output_theta(double lambda, double theta) {
    if (theta < -1e-12 || theta > M_PI / 2 + 1e-12)
        throw std::invalid_argument("product_output_theta: theta outside [0, pi/2]");
    const double C = 2.0 * lambda * std::cos(theta);
    const double S = 2.0 * lambda * std::sin(theta);
    CMatrix m(4);
    m(0, 0) = (1.0 + lambda * lambda + C) / 4.0;
    m(1, 1) = (1.0 - lambda * lambda) / 4.0;
    m(2, 2) = (1.0 - lambda * lambda) / 4.0;
    m(3, 3) = (1.0 + lambda * lambda - C) / 4.0;
    m(0, 3) = lambda * S / 4.0;
    m(3, 0) = lambda * S / 4.0;
    return DensityMatrix4(m);
}

MaxEntangled covariance_transport(const CMatrix& u, const CMatrix& v) {
    return MaxEntangled(v.adjoint() * u.conjugate());
}

}  // namespace qcorr
