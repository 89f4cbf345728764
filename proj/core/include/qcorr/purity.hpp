#pragma once

// Output purity in the reduced parametrization. Any pure input psi can be
// written (U (x) V) psi_theta with psi_theta the canonical Schmidt state, so
// by channel covariance the output spectrum of the bell0-frame channel only
// depends on theta and the frame unitary W = V^dag conj(U). Writing
// W = [[a, conj(b)], [-b, conj(a)]], the spectrum further depends on W only
// through |a| and phi = 2 arg(a); the phase of b drops out entirely.
//
// One output eigenvalue decouples at (1-mu)(1-lambda^2)/4 for every input.
// The remaining three come from a 3x3 Hermitian block scaled by (1-mu)/4.
//
// Shorthands used throughout: S = 2 lambda sin(theta), C = 2 lambda cos(theta),
// M = 4 mu / (1 - mu), c_phi = cos(phi).

#include <string>

#include "qcorr/channels.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct ReducedParams {
    ReducedParams(double theta_, double phi_, double a_mod_);

    double theta;  // [0, pi/2]
    double phi;    // any real, spectrum depends on cos(phi)
    double a_mod;  // [0, 1]
};

// p in (1, inf), the infinity limit, or the entropy limit p -> 1
class PurityOrder {
public:
    enum class Kind { finite, infinity, entropy };

    static PurityOrder finite(double p);
    static PurityOrder infinity() { return PurityOrder(Kind::infinity, 0.0); }
    static PurityOrder entropy_limit() { return PurityOrder(Kind::entropy, 0.0); }
    static PurityOrder parse(const std::string& s);

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_infinity() const { return kind_ == Kind::infinity; }
    bool is_entropy() const { return kind_ == Kind::entropy; }
    std::string str() const;

private:
    PurityOrder(Kind k, double p) : kind_(k), p_(p) {}
    Kind kind_;
    double p_;
};

// Schatten norms of a positive spectrum; entropy orders are rejected here
double p_norm(const Spectrum& sp, const PurityOrder& order);
double p_norm(const DensityMatrix4& rho, const PurityOrder& order);

// Renyi entropy S_p = ln(sum v^p)/(1-p), von Neumann at the entropy limit,
// -ln(v_max) at the infinity limit. Natural logarithm.
double renyi_entropy(const Spectrum& sp, const PurityOrder& order);
double renyi_entropy(const DensityMatrix4& rho, const PurityOrder& order);

// 3x3 coupled block; output spectrum is (1-mu)/4 times its eigenvalues
// together with the decoupled value (1-lambda^2). Requires mu < 1.
CMatrix delta_matrix(double mu, double lambda, const ReducedParams& rp);

Spectrum output_spectrum_reduced(double mu, double lambda, const ReducedParams& rp);

// full 4x4 output (block form) for the reduced parameters
DensityMatrix4 reduced_output(double mu, double lambda, const ReducedParams& rp);

// characteristic polynomial of delta_matrix, coefficients of
// c3 x^3 + c2 x^2 + c1 x + c0 with c3 = -1 (matches det(Delta - x I))
struct Cubic {
    double c3, c2, c1, c0;
    double eval(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
};
Cubic char_poly_delta(double mu, double lambda, const ReducedParams& rp);

// closed form for || Phi(psi) ||_2^2 in the reduced parameters
double two_norm_sq_closed_form(double mu, double lambda, const ReducedParams& rp);

// A concrete input state whose bell0-frame output realizes the reduced
// spectrum: (conj(W) (x) I) psi_theta with a = |a| e^{i phi/2}, b = sqrt(1-|a|^2).
PureState4 witness_state(const ReducedParams& rp);

// reduced parameters of a given input state in the bell0 frame
ReducedParams reduce_state(const PureState4& psi);

}  // namespace qcorr
