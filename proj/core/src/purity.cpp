#include "qcorr/purity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qcorr {

ReducedParams::ReducedParams(double theta_, double phi_, double a_mod_)
    : theta(theta_), phi(phi_), a_mod(a_mod_) {
    if (theta < -1e-9 || theta > M_PI / 2 + 1e-9) {
        std::ostringstream os;
        os << "ReducedParams: theta = " << theta << " outside [0, pi/2]";
        throw std::invalid_argument(os.str());
    }
    if (a_mod < -1e-9 || a_mod > 1.0 + 1e-9) {
        std::ostringstream os;
        os << "ReducedParams: |a| = " << a_mod << " outside [0, 1]";
        throw std::invalid_argument(os.str());
    }
    theta = std::clamp(theta, 0.0, M_PI / 2);
    a_mod = std::clamp(a_mod, 0.0, 1.0);
}

PurityOrder PurityOrder::finite(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        std::ostringstream os;
        os << "PurityOrder: p = " << p << " must be finite and > 1 "
           << "(use the entropy limit for p -> 1)";
        throw std::invalid_argument(os.str());
    }
    return PurityOrder(Kind::finite, p);
}

PurityOrder PurityOrder::parse(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return infinity();
    if (s == "entropy" || s == "vn" || s == "1") return entropy_limit();
    size_t pos = 0;
    double p = 0.0;
    try {
        p = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("PurityOrder: cannot parse '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("PurityOrder: cannot parse '" + s + "'");
    return finite(p);
}

std::string PurityOrder::str() const {
    switch (kind_) {
        case Kind::infinity: return "inf";
        case Kind::entropy: return "entropy";
        default: break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", p_);
    return buf;
}

namespace {

// entries in [-1e-10, 0) are rounding debris and clip to zero;
// anything more negative means a broken spectrum and is a hard error
double checked_positive(double v) {
    if (v < -1e-10) {
        std::ostringstream os;
        os << "spectrum entry " << v << " below -1e-10, not a state spectrum";
        throw std::invalid_argument(os.str());
    }
    return v > 0.0 ? v : 0.0;
}

}  // namespace

double p_norm(const Spectrum& sp, const PurityOrder& order) {
    if (order.is_entropy())
        throw std::invalid_argument("p_norm: undefined at the entropy limit, use renyi_entropy");
    if (order.is_infinity()) return checked_positive(sp[0]);
    double s = 0.0;
    for (size_t i = 0; i < sp.size(); ++i) s += std::pow(checked_positive(sp[i]), order.p());
    return std::pow(s, 1.0 / order.p());
}

double p_norm(const DensityMatrix4& rho, const PurityOrder& order) {
    return p_norm(rho.spectrum(), order);
}

double renyi_entropy(const Spectrum& sp, const PurityOrder& order) {
    if (order.is_infinity()) return -std::log(checked_positive(sp[0]));
    if (order.is_entropy()) {
        double h = 0.0;
        for (size_t i = 0; i < sp.size(); ++i) {
            const double v = checked_positive(sp[i]);
            if (v > 0.0) h -= v * std::log(v);
        }
        return h;
    }
    double s = 0.0;
    for (size_t i = 0; i < sp.size(); ++i) s += std::pow(checked_positive(sp[i]), order.p());
    return std::log(s) / (1.0 - order.p());
}

double renyi_entropy(const DensityMatrix4& rho, const PurityOrder& order) {
    return renyi_entropy(rho.spectrum(), order);
}

namespace {

void require_mu_below_one(double mu, const char* who) {
    if (!(mu >= 0.0 && mu < 1.0)) {
        std::ostringstream os;
        os << who << ": mu = " << mu << " outside [0, 1)";
        throw std::invalid_argument(os.str());
    }
}

void require_reduced_range(double mu, double lambda, const char* who) {
    require_mu_below_one(mu, who);
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        std::ostringstream os;
        os << who << ": lambda = " << lambda << " outside [0, 1)";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

CMatrix delta_matrix(double mu, double lambda, const ReducedParams& rp) {
    require_reduced_range(mu, lambda, "delta_matrix");
    const double u = 1.0 + lambda * lambda;
    const double C = 2.0 * lambda * std::cos(rp.theta);
    const double S = 2.0 * lambda * std::sin(rp.theta);
    const double M = 4.0 * mu / (1.0 - mu);
    const double am = rp.a_mod;
    const double bm = std::sqrt(std::max(0.0, 1.0 - am * am));
    const Complex a = am * std::exp(Complex(0.0, rp.phi / 2.0));

    // coupled block of T + (M/2) v v^dag in the basis {|00>, |11>, u_b} with
    // u_b the direction of v inside the degenerate {|01>, |10>} plane
    CMatrix n(3);
    n(0, 0) = u + C + 0.5 * M * am * am;
    n(1, 1) = u - C + 0.5 * M * am * am;
    n(2, 2) = 1.0 - lambda * lambda + M * bm * bm;
    n(0, 1) = lambda * S + 0.5 * M * a * a;
    n(1, 0) = std::conj(n(0, 1));
    n(0, 2) = (M / std::sqrt(2.0)) * bm * a;
    n(2, 0) = std::conj(n(0, 2));
    n(1, 2) = (M / std::sqrt(2.0)) * bm * std::conj(a);
    n(2, 1) = std::conj(n(1, 2));
    return n;
}

Spectrum output_spectrum_reduced(double mu, double lambda, const ReducedParams& rp) {
    require_reduced_range(mu, lambda, "output_spectrum_reduced");
    const Spectrum coupled = eig_hermitian(delta_matrix(mu, lambda, rp));
    const double f = (1.0 - mu) / 4.0;
    std::vector<double> vals = {f * coupled[0], f * coupled[1], f * coupled[2],
                                f * (1.0 - lambda * lambda)};
    return Spectrum(std::move(vals));
}

DensityMatrix4 reduced_output(double mu, double lambda, const ReducedParams& rp) {
    require_reduced_range(mu, lambda, "reduced_output");
    const CMatrix n = delta_matrix(mu, lambda, rp);
    const double f = (1.0 - mu) / 4.0;
    CMatrix m(4);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = f * n(r, c);
    m(3, 3) = f * (1.0 - lambda * lambda);
    return DensityMatrix4(m);
}

Cubic char_poly_delta(double mu, double lambda, const ReducedParams& rp) {
    require_reduced_range(mu, lambda, "char_poly_delta");
    const double l2 = lambda * lambda;
    const double u = 1.0 + l2;
    const double C = 2.0 * lambda * std::cos(rp.theta);
    const double S = 2.0 * lambda * std::sin(rp.theta);
    const double K = C * C + l2 * S * S;
    const double M = 4.0 * mu / (1.0 - mu);
    const double m = M * rp.a_mod * rp.a_mod;
    const double cphi = std::cos(rp.phi);

    Cubic q{};
    q.c3 = -1.0;
    q.c2 = 3.0 * u + M - 2.0 * l2;
    q.c1 = -3.0 * u * u - 2.0 * u * (M - 2.0 * l2) + K + m * (2.0 * l2 + cphi * lambda * S);
    q.c0 = u * u * u + u * u * (M - 2.0 * l2) - K * u + K * (2.0 * l2 - M) +
           m * (1.0 - l2) * (2.0 * l2 - cphi * lambda * S - S * S);
    return q;
}

double two_norm_sq_closed_form(double mu, double lambda, const ReducedParams& rp) {
    require_reduced_range(mu, lambda, "two_norm_sq_closed_form");
    const double l2 = lambda * lambda;
    const double C = 2.0 * lambda * std::cos(rp.theta);
    const double S = 2.0 * lambda * std::sin(rp.theta);
    const double M = 4.0 * mu / (1.0 - mu);
    const double a2 = rp.a_mod * rp.a_mod;
    const double cphi = std::cos(rp.phi);

    const double bracket = 2.0 * (1.0 + l2) * (1.0 + l2) + 2.0 * (1.0 - l2) * (1.0 - l2) +
                           2.0 * C * C + 2.0 * l2 * S * S + M * M +
                           2.0 * M * ((1.0 - l2) + 2.0 * l2 * a2 + cphi * lambda * S * a2);
    const double f = (1.0 - mu) / 4.0;
    return f * f * bracket;
}

PureState4 witness_state(const ReducedParams& rp) {
    const double am = rp.a_mod;
    const double bm = std::sqrt(std::max(0.0, 1.0 - am * am));
    const Complex a = am * std::exp(Complex(0.0, rp.phi / 2.0));
    // conj(W) for W = [[a, b], [-b, conj(a)]], b real
    CMatrix wc = CMatrix::from_rows({{std::conj(a), bm}, {-bm, a}});
    return apply_local(wc, CMatrix::identity(2), canonical_theta_state(rp.theta));
}

ReducedParams reduce_state(const PureState4& psi) {
    const SchmidtForm sf = schmidt_canonicalize(psi);
    // psi = (U (x) V) psi_theta with U = u^dag, V = v^dag, so W = V^dag conj(U) = v u^T
    CMatrix w = sf.v * sf.u.transpose();
    // strip the global phase so w sits in SU(2) form [[a, conj(b)], [-b, conj(a)]]
    const Complex det = w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0);
    const Complex ph = std::exp(Complex(0.0, -0.5 * std::arg(det)));
    const Complex a = w(0, 0) * ph;
    const double am = std::min(1.0, std::abs(a));
    const double phi = am > 1e-14 ? 2.0 * std::arg(a) : 0.0;
    return ReducedParams(sf.theta, phi, am);
}

}  // namespace qcorr
