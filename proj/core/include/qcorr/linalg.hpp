#pragma once

// Small dense complex linear algebra for 2x2 and 4x4 problems.
// Everything here is exact-size, allocation-light and deterministic;
// no external matrix library is used.

#include <array>
#include <complex>
#include <initializer_list>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

    static CMatrix identity(int dim);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    int dim() const { return dim_; }

    Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
    const Complex& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;
    Complex trace() const;
    double frobenius() const;
    double max_abs() const;

    // largest |entry| of M - M^dagger, zero for an exactly Hermitian matrix
    double hermiticity_error() const;
    bool is_hermitian(double tol = 1e-10) const { return hermiticity_error() <= tol; }

    double unitarity_error() const;  // ||M^dagger M - I||_max
    bool is_unitary(double tol = 1e-10) const { return unitarity_error() <= tol; }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(Complex s);

private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(double s, CMatrix a);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Real eigenvalues sorted descending.
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<double> vals);  // sorts descending

    size_t size() const { return v_.size(); }
    double operator[](size_t i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }

    double sum() const;
    double min_gap() const;  // smallest adjacent gap, guards degeneracy checks
    double distance(const Spectrum& o) const;  // max |v_i - o_i|, same size required

private:
    std::vector<double> v_;
};

// Eigenvalues of a Hermitian matrix via cyclic complex Jacobi rotations.
// Rejects inputs whose hermiticity error exceeds herm_tol (the error value
// is included in the exception message). Each returned eigenpair satisfies
// ||M v - lambda v|| <= 1e-10 or the routine throws.
Spectrum eig_hermitian(const CMatrix& m, double herm_tol = 1e-10);

struct EigenSystem {
    std::vector<double> values;  // descending
    CMatrix vectors;             // column k pairs with values[k]
};
EigenSystem eig_hermitian_full(const CMatrix& m, double herm_tol = 1e-10);

// Singular value decomposition of a 2x2 complex matrix in the convention
//   v * a * u^T = d,  d real diagonal, d(0,0) >= d(1,1) >= 0, u and v unitary.
struct Svd2 {
    CMatrix u, d, v;
};
Svd2 svd2(const CMatrix& a);

// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 (c3 != 0), descending.
// Trigonometric method for the three real root case, one Newton polish per
// root. Throws if the discriminant indicates a conjugate complex pair.
std::array<double, 3> cubic_roots(double c3, double c2, double c1, double c0);

}  // namespace qcorr
