#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcorr {

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const int n = static_cast<int>(rows.size());
    CMatrix m(n);
    int r = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("from_rows: ragged rows");
        int c = 0;
        for (const auto& z : row) m(r, c++) = z;
        ++r;
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

CMatrix CMatrix::conjugate() const {
    CMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(r, c));
    return m;
}

Complex CMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::hermiticity_error() const {
    double m = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return m;
}

double CMatrix::unitarity_error() const {
    CMatrix g = adjoint() * (*this);
    double m = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            m = std::max(m, std::abs(g(r, c) - (r == c ? 1.0 : 0.0)));
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& z : a_) z *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    const int n = a.dim();
    if (n != b.dim()) throw std::invalid_argument("matmul: dimension mismatch");
    CMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const Complex arc = a(r, k);
            if (arc == Complex{}) continue;
            for (int c = 0; c < n; ++c) m(r, c) += arc * b(k, c);
        }
    return m;
}

CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(double s, CMatrix a) { return a *= Complex(s, 0.0); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    CMatrix m(na * nb);
    for (int ra = 0; ra < na; ++ra)
        for (int ca = 0; ca < na; ++ca) {
            const Complex z = a(ra, ca);
            if (z == Complex{}) continue;
            for (int rb = 0; rb < nb; ++rb)
                for (int cb = 0; cb < nb; ++cb)
                    m(ra * nb + rb, ca * nb + cb) = z * b(rb, cb);
        }
    return m;
}

Spectrum::Spectrum(std::vector<double> vals) : v_(std::move(vals)) {
    std::sort(v_.begin(), v_.end(), std::greater<double>());
}

double Spectrum::sum() const { return std::accumulate(v_.begin(), v_.end(), 0.0); }

double Spectrum::min_gap() const {
    if (v_.size() < 2) return 0.0;
    double g = v_[0] - v_[1];
    for (size_t i = 2; i < v_.size(); ++i) g = std::min(g, v_[i - 1] - v_[i]);
    return g;
}

double Spectrum::distance(const Spectrum& o) const {
    if (o.size() != size()) throw std::invalid_argument("Spectrum::distance: size mismatch");
    double d = 0.0;
    for (size_t i = 0; i < v_.size(); ++i) d = std::max(d, std::abs(v_[i] - o.v_[i]));
    return d;
}

namespace {

// One cyclic Jacobi pass annihilating entry (p,q) of Hermitian a in place,
// accumulating the rotation into v (columns end up as eigenvectors).
void jacobi_rotate(CMatrix& a, CMatrix& v, int p, int q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const Complex phase = apq / r;
    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const int n = a.dim();
    // a <- G^dagger a G with G(p,p)=G(q,q)=c, G(p,q)=s*phase, G(q,p)=-s*conj(phase)
    for (int k = 0; k < n; ++k) {
        const Complex akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - s * std::conj(phase) * akq;
        a(k, q) = s * phase * akp + c * akq;
    }
    for (int k = 0; k < n; ++k) {
        const Complex apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * phase * aqk;
        a(q, k) = s * std::conj(phase) * apk + c * aqk;
    }
    a(p, q) = 0.0;  // annihilated by construction, clear rounding residue
    a(q, p) = 0.0;
    for (int k = 0; k < n; ++k) {
        const Complex vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - s * std::conj(phase) * vkq;
        v(k, q) = s * phase * vkp + c * vkq;
    }
}

double offdiag_frobenius(const CMatrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

}  // namespace

EigenSystem eig_hermitian_full(const CMatrix& m, double herm_tol) {
    const double herr = m.hermiticity_error();
    if (herr > herm_tol) {
        std::ostringstream os;
        os << "eig_hermitian: matrix not Hermitian, max deviation " << herr;
        throw std::invalid_argument(os.str());
    }
    const int n = m.dim();
    // symmetrize exactly so rounding in the input cannot bias rotations
    CMatrix a(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

    CMatrix v = CMatrix::identity(n);
    const double stop = 1e-14 * std::max(1.0, a.frobenius());
    bool converged = false;
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (offdiag_frobenius(a) < stop) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
    if (!converged && offdiag_frobenius(a) >= stop)
        throw std::runtime_error("eig_hermitian: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = CMatrix(n);
    for (int k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (int r = 0; r < n; ++r) es.vectors(r, k) = v(r, order[k]);
    }

    // residual guard on every eigenpair, against the caller's matrix
    for (int k = 0; k < n; ++k) {
        double res = 0.0;
        for (int r = 0; r < n; ++r) {
            Complex mv = 0.0;
            for (int c = 0; c < n; ++c) mv += m(r, c) * es.vectors(c, k);
            res += std::norm(mv - es.values[k] * es.vectors(r, k));
        }
        if (std::sqrt(res) > 1e-10) {
            std::ostringstream os;
            os << "eig_hermitian: eigenpair residual " << std::sqrt(res) << " exceeds 1e-10";
            throw std::runtime_error(os.str());
        }
    }
    return es;
}

Spectrum eig_hermitian(const CMatrix& m, double herm_tol) {
    return Spectrum(eig_hermitian_full(m, herm_tol).values);
}

Svd2 svd2(const CMatrix& a) {
    if (a.dim() != 2) throw std::invalid_argument("svd2: expects a 2x2 matrix");
    const CMatrix h = a.adjoint() * a;  // Hermitian PSD
    EigenSystem es = eig_hermitian_full(h, 1e-9);

    // canonical phases: largest component of each right singular vector real positive
    CMatrix y = es.vectors;
    for (int k = 0; k < 2; ++k) {
        const int imax = std::abs(y(0, k)) >= std::abs(y(1, k)) ? 0 : 1;
        const double mag = std::abs(y(imax, k));
        if (mag > 0.0) {
            const Complex ph = std::conj(y(imax, k)) / mag;
            y(0, k) *= ph;
            y(1, k) *= ph;
        }
    }

    const double s0 = std::sqrt(std::max(0.0, es.values[0]));
    const double s1 = std::sqrt(std::max(0.0, es.values[1]));

    CMatrix x(2);
    const double tiny = 1e-13 * std::max(1.0, a.frobenius());
    if (s0 <= tiny) {
        x = CMatrix::identity(2);
    } else {
        for (int r = 0; r < 2; ++r) x(r, 0) = (a(r, 0) * y(0, 0) + a(r, 1) * y(1, 0)) / s0;
        if (s1 > s0 * 1e-13) {
            for (int r = 0; r < 2; ++r) x(r, 1) = (a(r, 0) * y(0, 1) + a(r, 1) * y(1, 1)) / s1;
            // re-orthogonalize defensively for nearly degenerate inputs
            Complex ip = std::conj(x(0, 0)) * x(0, 1) + std::conj(x(1, 0)) * x(1, 1);
            x(0, 1) -= ip * x(0, 0);
            x(1, 1) -= ip * x(1, 0);
            double nn = std::sqrt(std::norm(x(0, 1)) + std::norm(x(1, 1)));
            x(0, 1) /= nn;
            x(1, 1) /= nn;
        } else {
            x(0, 1) = -std::conj(x(1, 0));
            x(1, 1) = std::conj(x(0, 0));
        }
    }

    Svd2 out;
    out.d = CMatrix(2);
    out.d(0, 0) = s0;
    out.d(1, 1) = s1;
    out.u = y.transpose();  // a = x diag y^dagger, so v a u^T = d with v = x^dagger, u = y^T
    out.v = x.adjoint();
    return out;
}

std::array<double, 3> cubic_roots(double c3, double c2, double c1, double c0) {
    if (c3 == 0.0) throw std::invalid_argument("cubic_roots: leading coefficient is zero");
    const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    const double scale = std::max({1.0, std::abs(4.0 * p * p * p), 27.0 * q * q});
    if (disc < -1e-11 * scale) {
        std::ostringstream os;
        os << "cubic_roots: complex root pair, discriminant " << disc;
        throw std::invalid_argument(os.str());
    }

    std::array<double, 3> t{};
    if (p < 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double psi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            t[k] = m * std::cos(psi - 2.0 * M_PI * k / 3.0);
    } else {
        // discriminant check forces q ~ 0 here: (near) triple root
        const double r = std::cbrt(-q);
        t = {r, r, r};
    }

    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) {
        double xk = t[k] - a / 3.0;
        const double f = ((c3 * xk + c2) * xk + c1) * xk + c0;
        const double df = (3.0 * c3 * xk + 2.0 * c2) * xk + c1;
        if (std::abs(df) > 1e-300) xk -= f / df;  // single Newton polish
        x[k] = xk;
    }
    std::sort(x.begin(), x.end(), std::greater<double>());
    return x;
}

}  // namespace qcorr
