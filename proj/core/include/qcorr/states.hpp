#pragma once

// Two-qubit pure states, the Pauli-coefficient picture and Schmidt reduction.
//
// A state psi in C^4 is identified with a 2x2 matrix A through
//   psi = (I (x) A) |b0>,  |b0> = (|00> + |11>)/sqrt(2),
// so psi_{ij} = A_{ji}/sqrt(2) and normalization reads Tr(A^dagger A) = 2.
// Writing A = sum_k a_k sigma_k gives the PauliCoeffs form with
// sum |a_k|^2 = 1. Local rotations act by (U (x) V) psi = (I (x) V A U^T)|b0>,
// which is why the svd2 convention V a U^T = D diagonalizes Schmidt form.

#include <array>

#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

CMatrix pauli(int k);  // k = 0..3, sigma_0 = I

class PureState4 {
public:
    // normalizes; rejects vectors with norm below 1e-12
    static PureState4 from_amplitudes(const std::array<Complex, 4>& amps);

    const std::array<Complex, 4>& amplitudes() const { return a_; }
    Complex amp(int i) const { return a_[static_cast<size_t>(i)]; }

    CMatrix projector() const;  // 4x4 rank-1 density matrix

private:
    PureState4() = default;
    std::array<Complex, 4> a_{};
};

Complex overlap(const PureState4& a, const PureState4& b);  // <a|b>

struct PauliCoeffs {
    std::array<Complex, 4> a{};  // coefficients of sigma_0..sigma_3
    double norm_sq() const;
};

PauliCoeffs to_pauli(const PureState4& psi);
PureState4 from_pauli(const PauliCoeffs& pc);
CMatrix pauli_matrix_of(const PauliCoeffs& pc);  // A = sum a_k sigma_k

// Bell basis |b_k> = (I (x) sigma_k) |b0>
PureState4 bell_state(int k);

// cos(theta/2)|00> + sin(theta/2)|11>, theta in [0, pi/2]
PureState4 canonical_theta_state(double theta);

// (u (x) v) psi with 2x2 unitaries u, v
PureState4 apply_local(const CMatrix& u, const CMatrix& v, const PureState4& psi);

// (u (x) v) psi = canonical_theta_state(theta) up to global phase
struct SchmidtForm {
    double theta = 0.0;
    CMatrix u, v;
};
SchmidtForm schmidt_canonicalize(const PureState4& psi);

enum class EntanglementKind { von_neumann, linear };

// von Neumann entropy (natural log) or linear entropy 2(1 - Tr gamma^2)
// of the one-qubit reduction
double entanglement(const PureState4& psi, EntanglementKind kind);

// Haar random state from 8 iid normals
PureState4 random_pure(RandomStream& rs);

// Haar random 2x2 unitary: Gram-Schmidt of a complex Gaussian matrix
CMatrix random_unitary2(RandomStream& rs);

// Maximally entangled state (I (x) u)|b0> for a 2x2 unitary u.
// Construction rejects non-unitary u with the deviation in the message.
class MaxEntangled {
public:
    explicit MaxEntangled(const CMatrix& u);
    static MaxEntangled bell0();

    const CMatrix& unitary() const { return u_; }
    PureState4 state() const;

private:
    CMatrix u_;
};

PureState4 max_entangled_from_unitary(const CMatrix& u);

// partial traces of a 4x4 matrix over the first or second tensor factor
CMatrix ptrace_first(const CMatrix& rho);   // leaves qubit 2
CMatrix ptrace_second(const CMatrix& rho);  // leaves qubit 1

}  // namespace qcorr
