#pragma once

// The channel family acting on two qubits:
//
//   Phi(R) = (1 - mu) (Psi_lambda (x) Psi_lambda)(R) + mu Tr[R] |beta><beta|
//
// where Psi_lambda(g) = lambda g + (1 - lambda) Tr[g] I/2 is a qubit
// depolarizing map (complete positivity needs lambda in [-1/3, 1]) and
// |beta> is a maximally entangled state. mu in [0, 1] sets the correlation
// strength between the two uses.

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct ChannelParams {
    ChannelParams(double mu_, double lambda_, MaxEntangled beta_);

    double mu;
    double lambda;
    MaxEntangled beta;

    static ChannelParams bell0(double mu, double lambda);
    bool beta_is_bell0(double tol = 1e-12) const;
};

// Validated two-qubit density matrix: Hermitian and unit trace within 1e-10,
// smallest eigenvalue >= -1e-10. Violations are rejected with the deviation
// in the message.
class DensityMatrix4 {
public:
    explicit DensityMatrix4(const CMatrix& m);

    const CMatrix& matrix() const { return m_; }
    Spectrum spectrum() const { return eig_hermitian(m_); }

private:
    CMatrix m_;
};

// single-qubit depolarizing action, trace preserved for any trace
CMatrix depolarize(const CMatrix& gamma, double lambda);

// channel action without the density-matrix validation pass, for hot loops
CMatrix apply_channel_raw(const ChannelParams& cp, const CMatrix& rho);

DensityMatrix4 apply_channel(const ChannelParams& cp, const DensityMatrix4& rho);
DensityMatrix4 apply_channel(const ChannelParams& cp, const PureState4& psi);

// (Psi_lambda (x) Psi_lambda) on cos(theta/2)|00> + sin(theta/2)|11> in
// closed form: diagonal (1 + lambda^2 +- C, 1 - lambda^2, 1 - lambda^2)/4
// plus corners lambda S / 4, with C = 2 lambda cos(theta), S = 2 lambda sin(theta).
DensityMatrix4 product_output_theta(double lambda, double theta);

// Local rotations move between channels of the family:
//   Phi_b0((U (x) V) rho (U (x) V)^dag) = (U (x) V) Phi_b(rho) (U (x) V)^dag
// with b the maximally entangled state returned here (frame V^dag conj(U)).
MaxEntangled covariance_transport(const CMatrix& u, const CMatrix& v);

}  // namespace qcorr
