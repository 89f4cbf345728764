#include "qcorr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qcorr/channels.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// D_k = (r_k - r_m)(r_k - r_n) for the three cyclic choices
std::array<double, 3> pair_denoms(double r1, double r2, double r3) {
    return {(r1 - r2) * (r1 - r3), (r2 - r1) * (r2 - r3), (r3 - r1) * (r3 - r2)};
}

void require_decreasing_positive(const std::array<double, 3>& v, double eps,
                                 const char* who) {
    if (!(v[0] > v[1] && v[1] > v[2] && v[2] > 0.0)) {
        std::ostringstream os;
        os << who << ": need v1 > v2 > v3 > 0, got (" << v[0] << ", " << v[1] << ", "
           << v[2] << ")";
        throw std::invalid_argument(os.str());
    }
    const double g = std::min(v[0] - v[1], v[1] - v[2]);
    if (!(eps > 0.0 && eps <= 1e-3 * g * g)) {
        std::ostringstream os;
        os << who << ": eps = " << eps << " outside (0, 1e-3 * min_gap^2 = "
           << 1e-3 * g * g << "]";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

IdentitySums identity_check_sums(double r1, double r2, double r3) {
    if (!(r1 > r2 && r2 > r3 && r3 > 0.0)) {
        std::ostringstream os;
        os << "identity_check_sums: need r1 > r2 > r3 > 0, got (" << r1 << ", " << r2
           << ", " << r3 << ")";
        throw std::invalid_argument(os.str());
    }
    const auto d = pair_denoms(r1, r2, r3);
    return IdentitySums{1.0 / d[0] + 1.0 / d[1] + 1.0 / d[2],
                        r1 / d[0] + r2 / d[1] + r3 / d[2]};
}

RootShift root_shift_predict(const std::array<double, 3>& r, double delta1,
                             double delta2) {
    const double g = std::min({std::abs(r[0] - r[1]), std::abs(r[1] - r[2]),
                               std::abs(r[0] - r[2])});
    if (!(g > 0.0))
        throw std::invalid_argument("root_shift_predict: roots must be distinct");
    const auto d = pair_denoms(r[0], r[1], r[2]);
    RootShift out;
    for (int k = 0; k < 3; ++k)
        out.roots[static_cast<size_t>(k)] =
            r[static_cast<size_t>(k)] +
            (r[static_cast<size_t>(k)] * delta1 + delta2) / d[static_cast<size_t>(k)];
    out.reliable = g >= 1e3 * std::max(std::abs(delta1), std::abs(delta2));
    return out;
}

std::array<double, 3> lemma_p_shift(const std::array<double, 3>& v, double eps) {
    require_decreasing_positive(v, eps, "lemma_p_shift");
    const auto d = pair_denoms(v[0], v[1], v[2]);
    return {v[0] + eps * v[0] / d[0], v[1] + eps * v[1] / d[1],
            v[2] + eps * v[2] / d[2]};
}

std::array<double, 3> lemma_q_shift(const std::array<double, 3>& v, double eps) {
    require_decreasing_positive(v, eps, "lemma_q_shift");
    const auto d = pair_denoms(v[0], v[1], v[2]);
    return {v[0] + eps / d[0], v[1] + eps / d[1], v[2] + eps / d[2]};
}

int p_norm_change_sign(const std::array<double, 3>& v, const std::array<double, 3>& w,
                       double p) {
    // sum of w_k^p - v_k^p, each term expanded around v_k so the difference
    // survives when the shifts are far below the norm scale
    double change = 0.0, scale = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double vk = v[static_cast<size_t>(k)];
        const double dk = w[static_cast<size_t>(k)] - vk;
        if (!(vk > 0.0))
            throw std::invalid_argument("p_norm_change_sign: entries must be positive");
        const double vp = std::pow(vk, p);
        change += vp * std::expm1(p * std::log1p(dk / vk));
        scale += vp;
    }
    if (std::abs(change) <= 1e-15 * scale) return 0;
    return change > 0.0 ? 1 : -1;
}

namespace {

int sign_with_tol(double x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }

// x with x^{p-1} equal to the mean slope of t^p on [lo, hi]
double mvt_point_pow(double hi, double lo, double p) {
    const double slope = (std::pow(hi, p) - std::pow(lo, p)) / (p * (hi - lo));
    return std::pow(slope, 1.0 / (p - 1.0));
}

// x with x^{p-2} equal to the mean slope of t^{p-1} on [lo, hi]; NaN at p = 2
double mvt_point_pow2(double hi, double lo, double p) {
    if (std::abs(p - 2.0) < 1e-12) return kNan;
    const double slope =
        (std::pow(hi, p - 1.0) - std::pow(lo, p - 1.0)) / ((p - 1.0) * (hi - lo));
    return std::pow(slope, 1.0 / (p - 2.0));
}

}  // namespace

PerturbationReport perturb_point(double mu, double lambda, const ReducedParams& rp,
                                 ShiftDirection dir, double eps,
                                 const std::vector<double>& ps) {
    if (!(mu > 0.0 && mu < 1.0 && lambda > 0.0 && lambda < 1.0)) {
        std::ostringstream os;
        os << "perturb_point: need mu, lambda in (0, 1), got mu = " << mu
           << ", lambda = " << lambda;
        throw std::invalid_argument(os.str());
    }
    if (!(std::abs(eps) > 0.0 && std::abs(eps) < 0.1))
        throw std::invalid_argument("perturb_point: |eps| must be in (0, 0.1)");

    const double s = std::sin(rp.theta);
    const double cphi = std::cos(rp.phi);
    const double a2 = rp.a_mod * rp.a_mod;
    const double l2 = lambda * lambda;
    const double M = 4.0 * mu / (1.0 - mu);
    const double lS = 2.0 * l2 * s;  // lambda * S with S = 2 lambda sin(theta)

    // keep the shifted parameter inside its range, flipping the step if needed
    if (dir == ShiftDirection::c_phi) {
        if (cphi + eps > 1.0) eps = -std::abs(eps);
        if (cphi + eps < -1.0) eps = std::abs(eps);
    } else {
        if (a2 + eps > 1.0) eps = -std::abs(eps);
        if (a2 + eps < 0.0) eps = std::abs(eps);
    }

    // linear response of the characteristic polynomial: R -> R + d1 x + d2
    double d1, d2;
    if (dir == ShiftDirection::c_phi) {
        d1 = eps * M * a2 * lS;
        d2 = -eps * M * a2 * lS * (1.0 - l2);
    } else {
        d1 = eps * 2.0 * M * l2 * (1.0 + cphi * s);
        d2 = eps * 2.0 * M * l2 * (1.0 - l2) * (1.0 - cphi * s - 2.0 * s * s);
    }

    PerturbationReport rep{mu,
                           lambda,
                           rp,
                           dir,
                           eps,
                           {},
                           {kNan, kNan, kNan},
                           {},
                           kNan,
                           false,
                           (1.0 - l2) / (2.0 - l2),
                           (1.0 - l2) / (3.0 - l2),
                           {}};

    const Spectrum base = eig_hermitian(delta_matrix(mu, lambda, rp));
    for (int k = 0; k < 3; ++k) rep.base[static_cast<size_t>(k)] = base[static_cast<size_t>(k)];

    rep.degenerate = !(base.min_gap() > 1e3 * std::max(std::abs(d1), std::abs(d2)));
    const auto den = pair_denoms(rep.base[0], rep.base[1], rep.base[2]);
    if (!rep.degenerate) {
        for (int k = 0; k < 3; ++k)
            rep.predicted_shift[static_cast<size_t>(k)] =
                (rep.base[static_cast<size_t>(k)] * d1 + d2) / den[static_cast<size_t>(k)];
    }

    ReducedParams shifted = rp;
    if (dir == ShiftDirection::c_phi)
        shifted = ReducedParams(rp.theta, std::acos(std::clamp(cphi + eps, -1.0, 1.0)),
                                rp.a_mod);
    else
        shifted = ReducedParams(rp.theta, rp.phi, std::sqrt(a2 + eps));
    const Spectrum moved = eig_hermitian(delta_matrix(mu, lambda, shifted));
    for (int k = 0; k < 3; ++k)
        rep.measured_shift[static_cast<size_t>(k)] =
            moved[static_cast<size_t>(k)] - rep.base[static_cast<size_t>(k)];
    if (!rep.degenerate) {
        double worst = 0.0;
        for (int k = 0; k < 3; ++k)
            worst = std::max(worst, std::abs(rep.predicted_shift[static_cast<size_t>(k)] -
                                             rep.measured_shift[static_cast<size_t>(k)]));
        rep.max_shift_error = worst;
    }

    const double v1 = rep.base[0], v2 = rep.base[1], v3 = rep.base[2];
    const int step_sign = eps > 0.0 ? 1 : -1;

    for (double p : ps) {
        PerturbSignRow row{p,    0,    0,    0.0,  0.0,  kNan, kNan, kNan,
                           kNan, kNan, kNan, kNan, kNan, kNan, false, false};
        if (std::isinf(p)) {
            row.measured_change = rep.measured_shift[0];
            row.first_order = rep.predicted_shift[0];
            row.measured_sign = sign_with_tol(row.measured_change, 1e-13 * std::abs(v1));
            // top-eigenvalue coefficient of the first-order shift
            const double num = dir == ShiftDirection::c_phi
                                   ? M * a2 * lS * (v1 - (1.0 - l2))
                                   : 2.0 * M * l2 *
                                         ((1.0 + cphi * s) * v1 +
                                          (1.0 - l2) * (1.0 - cphi * s - 2.0 * s * s));
            if (num > 1e-12) row.predicted_sign = step_sign;
        } else {
            double change = 0.0, scale = 0.0, first = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double vk = rep.base[static_cast<size_t>(k)];
                const double vp = std::pow(vk, p);
                change += vp * std::expm1(
                                   p * std::log1p(rep.measured_shift[static_cast<size_t>(k)] / vk));
                scale += vp;
                if (!rep.degenerate)
                    first += p * std::pow(vk, p - 1.0) *
                             rep.predicted_shift[static_cast<size_t>(k)];
            }
            row.measured_change = change;
            row.first_order = rep.degenerate ? kNan : first;
            row.measured_sign = sign_with_tol(change, 1e-13 * scale);

            row.acute1 = mvt_point_pow(v1, v2, p);
            row.acute3 = mvt_point_pow(v2, v3, p);
            row.grave1 = mvt_point_pow2(v1, v2, p);
            row.grave3 = mvt_point_pow2(v2, v3, p);
            const double da = std::pow(row.acute1, p - 1.0) - std::pow(row.acute3, p - 1.0);
            const double dg = std::isnan(row.grave1)
                                  ? 0.0
                                  : std::pow(row.grave1, p - 2.0) -
                                        std::pow(row.grave3, p - 2.0);
            if (dir == ShiftDirection::c_phi) {
                row.term_main = p * da;
                row.term_cross = -(p - 1.0) * (1.0 - l2) * dg;
            } else {
                row.term_main = p * (1.0 + cphi * s) * da;
                row.term_cross =
                    (p - 1.0) * (1.0 - l2) * (1.0 - cphi * s - 2.0 * s * s) * dg;
            }
            row.bracket = row.term_main + row.term_cross;

            if (std::abs(p - 2.0) > 1e-12) {
                row.acute2 = std::pow(
                    da / ((p - 1.0) * (row.acute1 - row.acute3)), 1.0 / (p - 2.0));
                if (!std::isnan(row.grave1) && std::abs(p - 3.0) > 1e-12)
                    row.grave2 = std::pow(
                        dg / ((p - 2.0) * (row.grave1 - row.grave3)), 1.0 / (p - 3.0));
            }
            const double spread = v1 - v3;
            row.mvt_close = !std::isnan(row.grave1) &&
                            std::abs(row.acute1 - row.grave1) <= 0.1 * spread &&
                            std::abs(row.acute3 - row.grave3) <= 0.1 * spread;
            row.mid_above = !std::isnan(row.acute2) && row.acute2 >= 1.0 - l2;

            // regimes with a proven first-order sign
            const bool nonzero = M > 0.0 && lS > 0.0;
            if (dir == ShiftDirection::c_phi) {
                if (p > 1.0 && p <= 2.0 && nonzero && a2 > 0.0)
                    row.predicted_sign = step_sign;
            } else {
                const bool small_theta = s < 0.5, big_theta = s >= 0.5;
                const bool cphi_one = cphi >= 1.0 - 1e-9;
                if (p > 1.0 && p < 2.0 && big_theta && cphi_one)
                    row.predicted_sign = step_sign;
                else if (std::abs(p - 2.0) <= 1e-12 && 1.0 + cphi * s > 1e-9)
                    row.predicted_sign = step_sign;
                else if (p > 2.0 && small_theta)
                    row.predicted_sign = step_sign;
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<PerturbationReport> perturb_eigen_scan(const PerturbGrid& grid,
                                                   ShiftDirection dir, double eps,
                                                   const std::vector<double>& ps) {
    if (grid.mus.empty() || grid.lambdas.empty() || grid.thetas.empty() ||
        grid.phis.empty() || grid.a_mods.empty())
        throw std::invalid_argument("perturb_eigen_scan: empty grid axis");
    std::vector<PerturbationReport> out;
    for (double mu : grid.mus)
        for (double lambda : grid.lambdas)
            for (double th : grid.thetas)
                for (double ph : grid.phis)
                    for (double am : grid.a_mods)
                        out.push_back(perturb_point(mu, lambda,
                                                    ReducedParams(th, ph, am), dir, eps,
                                                    ps));
    return out;
}

namespace {

void require_boundary_args(double mu, double lambda, const char* who) {
    if (!(mu >= 0.0 && mu < 1.0 && lambda >= 0.0 && lambda < 1.0)) {
        std::ostringstream os;
        os << who << ": need mu in [0, 1) and lambda in [0, 1), got mu = " << mu
           << ", lambda = " << lambda;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

std::array<double, 3> boundary_column(double mu, double lambda, double theta,
                                      BoundarySide side) {
    require_boundary_args(mu, lambda, "boundary_column");
    ReducedParams(theta, 0.0, 0.0);  // range check on theta
    const double l2 = lambda * lambda;
    const double u = 1.0 + l2;
    const double M = 4.0 * mu / (1.0 - mu);
    const double S = 2.0 * lambda * std::sin(theta);
    const double G = std::max(0.0, 4.0 * l2 - (1.0 - l2) * S * S);
    if (side == BoundarySide::a0) {
        const double r = std::sqrt(G);
        return {u + r, 1.0 - l2 + M, u - r};
    }
    const double r = std::sqrt(std::max(0.0, 0.25 * M * M + G + M * lambda * S));
    return {u + 0.5 * M + r, 1.0 - l2, u + 0.5 * M - r};
}

Spectrum boundary_eigenvalues(double mu, double lambda, double theta,
                              BoundarySide side) {
    const auto c = boundary_column(mu, lambda, theta, side);
    return Spectrum({c[0], c[1], c[2]});
}

Spectrum max_theta_closed_form(double mu, double lambda, double a_mod) {
    require_boundary_args(mu, lambda, "max_theta_closed_form");
    if (!(a_mod >= 0.0 && a_mod <= 1.0))
        throw std::invalid_argument("max_theta_closed_form: |a| must be in [0, 1]");
    const double l2 = lambda * lambda;
    const double M = 4.0 * mu / (1.0 - mu);
    const double a2 = a_mod * a_mod;
    const double rad = 0.25 * M * M + 4.0 * l2 * l2 - 2.0 * l2 * M * (1.0 - 2.0 * a2);
    const double r = std::sqrt(std::max(0.0, rad));
    return Spectrum({1.0 - l2, 1.0 + l2 + 0.5 * M + r, 1.0 + l2 + 0.5 * M - r});
}

std::array<double, 4> optimal_output_closed_form(double mu, double lambda) {
    if (!(mu >= 0.0 && mu < 1.0 && lambda > 0.0 && lambda < 1.0)) {
        std::ostringstream os;
        os << "optimal_output_closed_form: need mu in [0, 1), lambda in (0, 1), got mu = "
           << mu << ", lambda = " << lambda;
        throw std::invalid_argument(os.str());
    }
    const double l2 = lambda * lambda;
    const double side = 0.25 * (1.0 - mu) * (1.0 - l2);
    if (mu < (1.0 - l2) / (2.0 - l2)) {
        const double mid = 0.25 * (1.0 - mu) * (1.0 + l2) + 0.5 * mu;
        const double r =
            0.5 * std::sqrt(mu * mu / (1.0 - l2) + l2 * (1.0 - mu) * (1.0 - mu));
        return {mid + r, side, side, mid - r};
    }
    return {0.25 * (1.0 - mu) * (1.0 + 3.0 * l2) + mu, side, side, side};
}

std::vector<double> dominance_p_grid() {
    return {1.05, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0,
            std::numeric_limits<double>::infinity()};
}

namespace {

std::vector<double> clean_nonnegative(const Spectrum& s, const char* who) {
    std::vector<double> v = s.values();
    for (double& x : v) {
        if (x < -1e-12) {
            std::ostringstream os;
            os << who << ": negative entry " << x;
            throw std::invalid_argument(os.str());
        }
        if (x < 0.0) x = 0.0;
    }
    return v;
}

double vec_p_norm(const std::vector<double>& v, double p) {
    if (std::isinf(p)) return v.empty() ? 0.0 : v.front();
    double s = 0.0;
    for (double x : v) s += std::pow(x, p);
    return std::pow(s, 1.0 / p);
}

// partial-sum comparison of two descending vectors; returns the first 1-based
// index where sum(x) exceeds sum(y) beyond tol, or -1
int first_partial_violation(const std::vector<double>& x, const std::vector<double>& y,
                            double tol, double* xs_out, double* ys_out) {
    double xs = 0.0, ys = 0.0;
    for (size_t k = 0; k < x.size(); ++k) {
        xs += x[k];
        ys += y[k];
        if (xs > ys + tol) {
            *xs_out = xs;
            *ys_out = ys;
            return static_cast<int>(k) + 1;
        }
    }
    return -1;
}

}  // namespace

DominanceReport majorization_check(const Spectrum& x, const Spectrum& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("majorization_check: size mismatch");
    if (x.size() == 0) throw std::invalid_argument("majorization_check: empty input");
    const std::vector<double> xv = clean_nonnegative(x, "majorization_check");
    const std::vector<double> yv = clean_nonnegative(y, "majorization_check");
    const double tol = 1e-12;

    DominanceReport rep{x,    y,    false, false, false,
                        -1,   0.0,  0.0,   kNan};
    double xs = 0.0, ys = 0.0;
    rep.first_violation_index = first_partial_violation(xv, yv, tol, &xs, &ys);
    rep.weakly_majorized = rep.first_violation_index < 0;
    if (rep.first_violation_index > 0) {
        rep.x_partial = xs;
        rep.y_partial = ys;
    }
    double xt = 0.0, yt = 0.0;
    for (double v : xv) xt += v;
    for (double v : yv) yt += v;
    rep.majorized = rep.weakly_majorized && std::abs(xt - yt) <= tol;
    if (rep.weakly_majorized && !rep.majorized) {
        // totals differ: report the full sums as the offending partial sums
        rep.first_violation_index = static_cast<int>(xv.size());
        rep.x_partial = xt;
        rep.y_partial = yt;
    }

    rep.p_dominated = true;
    for (double p : dominance_p_grid()) {
        if (vec_p_norm(xv, p) > vec_p_norm(yv, p) + tol) {
            rep.p_dominated = false;
            rep.first_violation_p = p;
            break;
        }
    }
    return rep;
}

namespace {

// all descending integer tuples of length dim, entries >= 1, summing to total
void gen_partitions(int total, int dim, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (dim == 1) {
        if (total >= 1 && total <= max_part) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = (total + dim - 1) / dim; first <= std::min(max_part, total - (dim - 1));
         ++first) {
        cur.push_back(first);
        gen_partitions(total - first, dim - 1, first, cur, out);
        cur.pop_back();
    }
}

bool catalyzed_majorized(const std::vector<double>& x, const std::vector<double>& y,
                         const std::vector<int>& z) {
    std::vector<double> xz, yz;
    xz.reserve(x.size() * z.size());
    yz.reserve(y.size() * z.size());
    for (double xi : x)
        for (int zi : z) xz.push_back(xi * zi);
    for (double yi : y)
        for (int zi : z) yz.push_back(yi * zi);
    std::sort(xz.begin(), xz.end(), std::greater<double>());
    std::sort(yz.begin(), yz.end(), std::greater<double>());
    double xs, ys;
    return first_partial_violation(xz, yz, 1e-9, &xs, &ys) < 0;
}

}  // namespace

TrumpingResult trumping_scan(const Spectrum& x, const Spectrum& y, int max_catalyst_dim,
                             std::uint64_t seed) {
    if (max_catalyst_dim < 1 || max_catalyst_dim > 6)
        throw std::invalid_argument("trumping_scan: catalyst dimension must be in [1, 6]");
    TrumpingResult res{majorization_check(x, y), false, 0, {}};
    const std::vector<double> xv = clean_nonnegative(x, "trumping_scan");
    const std::vector<double> yv = clean_nonnegative(y, "trumping_scan");
    double xt = 0.0, yt = 0.0;
    for (double v : xv) xt += v;
    for (double v : yv) yt += v;
    if (std::abs(xt - yt) > 1e-9) return res;  // unequal totals, no catalyst exists

    const RandomStream base(seed);
    for (int dim = 1; dim <= max_catalyst_dim && !res.catalyst_found; ++dim) {
        std::vector<std::vector<int>> zs;
        if (dim <= 4) {
            std::vector<int> cur;
            gen_partitions(32, dim, 32, cur, zs);
        } else {
            // sampled lattice points, deduplicated
            RandomStream rs = base.substream(static_cast<std::uint64_t>(dim));
            std::set<std::vector<int>> seen;
            const int budget = 10000;
            for (int t = 0; t < 8 * budget && static_cast<int>(seen.size()) < budget; ++t) {
                std::vector<int> cuts{0, 32};
                for (int c = 0; c < dim - 1; ++c)
                    cuts.push_back(static_cast<int>(rs.next_u64() % 33ull));
                std::sort(cuts.begin(), cuts.end());
                std::vector<int> z;
                bool ok = true;
                for (size_t i = 1; i < cuts.size(); ++i) {
                    const int part = cuts[i] - cuts[i - 1];
                    if (part < 1) {
                        ok = false;
                        break;
                    }
                    z.push_back(part);
                }
                if (!ok) continue;
                std::sort(z.begin(), z.end(), std::greater<int>());
                seen.insert(z);
            }
            zs.assign(seen.begin(), seen.end());
        }
        for (const auto& z : zs) {
            if (catalyzed_majorized(xv, yv, z)) {
                res.catalyst_found = true;
                res.catalyst_dim = dim;
                res.catalyst.clear();
                for (int zi : z) res.catalyst.push_back(zi / 32.0);
                break;
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// verification suites

namespace {

class Claims {
public:
    explicit Claims(std::string name) { rep_.name = std::move(name); }

    void add(const std::string& claim, bool ok, const std::string& detail = {}) {
        std::ostringstream os;
        os << (ok ? "ok: " : "FAIL: ") << claim;
        if (!detail.empty()) os << ": " << detail;
        rep_.messages.push_back(os.str());
        ok ? ++rep_.passes : ++rep_.fails;
    }

    SuiteReport take() { return std::move(rep_); }

private:
    SuiteReport rep_;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

// strictly decreasing positive triple with a floor on the gaps
std::array<double, 3> random_triple(RandomStream& rs, double lo, double hi,
                                    double min_gap) {
    for (;;) {
        std::array<double, 3> v{rs.uniform(lo, hi), rs.uniform(lo, hi),
                                rs.uniform(lo, hi)};
        std::sort(v.begin(), v.end(), std::greater<double>());
        if (v[0] - v[1] >= min_gap && v[1] - v[2] >= min_gap) return v;
    }
}

std::array<double, 3> actual_shift_roots(const std::array<double, 3>& r, double d1,
                                         double d2) {
    // Q(x) = -(x - r1)(x - r2)(x - r3) + d1 x + d2
    const double e1 = r[0] + r[1] + r[2];
    const double e2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
    const double e3 = r[0] * r[1] * r[2];
    return cubic_roots(-1.0, e1, -e2 + d1, e3 + d2);
}

}  // namespace

SuiteReport run_suite_lemmas(std::uint64_t seed, int trials) {
    Claims cl("lemmas");
    const RandomStream base(seed);

    {
        const auto s1 = identity_check_sums(3.0, 2.0, 1.0);
        const auto s2 = identity_check_sums(1.5, 1.0, 0.1);
        const double worst = std::max({std::abs(s1.sum_inv), std::abs(s1.sum_lin),
                                       std::abs(s2.sum_inv), std::abs(s2.sum_lin)});
        cl.add("weighted sum identities at fixed triples", worst <= 1e-12,
               "max |sum| = " + fmt(worst));
    }
    {
        RandomStream rs = base.substream(1);
        const int n = std::min(trials, 1000);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto v = random_triple(rs, 0.1, 5.0, 0.01);
            const auto s = identity_check_sums(v[0], v[1], v[2]);
            worst = std::max({worst, std::abs(s.sum_inv), std::abs(s.sum_lin)});
        }
        cl.add("weighted sum identities on random triples", worst < 1e-9,
               fmt(worst) + " over " + std::to_string(n) + " draws");
    }
    {
        const std::array<double, 3> r{3.0, 2.0, 1.0};
        const auto pred = root_shift_predict(r, 1e-3, 1e-3);
        const auto act = actual_shift_roots(r, 1e-3, 1e-3);
        const bool ok_val = std::abs(pred.roots[0] - 3.002) <= 1e-12;
        double err = 0.0;
        for (int k = 0; k < 3; ++k)
            err = std::max(err, std::abs(pred.roots[static_cast<size_t>(k)] -
                                         act[static_cast<size_t>(k)]));
        cl.add("root shift prediction at (3,2,1), delta = 1e-3",
               ok_val && pred.reliable && err <= 1e-4,
               "s1 = " + fmt(pred.roots[0]) + ", |pred - solved| = " + fmt(err));
    }
    {
        const std::vector<std::array<double, 3>> triples{
            {3.0, 2.0, 1.0}, {2.7, 1.3, 0.4}, {1.9, 1.2, 0.35}};
        const std::vector<std::pair<double, double>> patterns{{1.0, 1.0}, {2.0, -1.0}};
        bool all_ok = true;
        std::string detail;
        for (const auto& r : triples)
            for (const auto& pat : patterns) {
                std::vector<double> lx, ly;
                for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
                    const auto pred =
                        root_shift_predict(r, pat.first * eps, pat.second * eps);
                    const auto act =
                        actual_shift_roots(r, pat.first * eps, pat.second * eps);
                    double err = 0.0;
                    for (int k = 0; k < 3; ++k)
                        err = std::max(err, std::abs(pred.roots[static_cast<size_t>(k)] -
                                                     act[static_cast<size_t>(k)]));
                    lx.push_back(std::log(eps));
                    ly.push_back(std::log(err));
                }
                const double slope = lsq_slope(lx, ly);
                if (detail.empty()) detail = "first slope = " + fmt(slope);
                if (!(slope >= 1.8 && slope <= 2.2)) {
                    all_ok = false;
                    detail = "slope " + fmt(slope) + " out of [1.8, 2.2]";
                }
            }
        cl.add("root shift error scales as eps^2", all_ok, detail);
    }
    {
        const std::array<double, 3> v{3.0, 2.0, 1.0};
        const double eps = 1e-6;
        const auto w = lemma_p_shift(v, eps);
        const std::array<double, 3> want{1.5 * eps, -2.0 * eps, 0.5 * eps};
        double shift_err = 0.0;
        for (int k = 0; k < 3; ++k)
            shift_err = std::max(shift_err,
                                 std::abs((w[static_cast<size_t>(k)] -
                                           v[static_cast<size_t>(k)]) -
                                          want[static_cast<size_t>(k)]));
        const double sum_err =
            std::abs((w[0] + w[1] + w[2]) - (v[0] + v[1] + v[2]));
        double d2 = 0.0;  // exact change of the squared 2-norm
        for (int k = 0; k < 3; ++k)
            d2 += w[static_cast<size_t>(k)] * w[static_cast<size_t>(k)] -
                  v[static_cast<size_t>(k)] * v[static_cast<size_t>(k)];
        cl.add("multiplicative shift at (3,2,1)",
               shift_err <= 1e-15 && sum_err <= 1e-14 &&
                   std::abs(d2 - 2.0 * eps) <= 0.02 * eps + 1e-14,
               "shifts (1.5, -2, 0.5) eps, sum drift " + fmt(sum_err) +
                   ", 2-norm^2 change " + fmt(d2));
    }
    {
        const std::array<double, 3> v{3.0, 2.0, 1.0};
        const auto w = lemma_q_shift(v, 1e-4);
        cl.add("additive shift lowers the 1.5-norm at (3,2,1)",
               p_norm_change_sign(v, w, 1.5) == -1);
    }
    {
        RandomStream rs = base.substream(2);
        int bad = 0, n = trials;
        double worst_sum = 0.0;
        std::string ce;
        for (int i = 0; i < n; ++i) {
            const auto v = random_triple(rs, 0.2, 4.0, 0.05);
            const double g = std::min(v[0] - v[1], v[1] - v[2]);
            const double eps = rs.uniform(0.1, 1.0) * 1e-4 * g * g;
            const double p = rs.uniform(1.05, 10.0);
            const auto w = lemma_p_shift(v, eps);
            worst_sum = std::max(worst_sum,
                                 std::abs((w[0] + w[1] + w[2]) - (v[0] + v[1] + v[2])));
            if (p_norm_change_sign(v, w, p) != 1) {
                ++bad;
                if (ce.empty())
                    ce = "v = (" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) +
                         "), eps = " + fmt(eps) + ", p = " + fmt(p);
            }
        }
        cl.add("multiplicative shift raises every p-norm (p > 1)",
               bad == 0 && worst_sum <= 1e-12,
               bad ? ce
                   : std::to_string(n) + " draws, max sum drift " + fmt(worst_sum));
    }
    {
        RandomStream rs = base.substream(3);
        int bad = 0, n = trials;
        std::string ce;
        for (int i = 0; i < n; ++i) {
            const auto v = random_triple(rs, 0.2, 4.0, 0.05);
            const double g = std::min(v[0] - v[1], v[1] - v[2]);
            const double eps = rs.uniform(0.1, 1.0) * 1e-4 * g * g;
            const double u = rs.next_double();
            const double p = u < 0.5 ? 1.05 + u * 2.0 * 0.85 : 2.1 + (u - 0.5) * 2.0 * 7.9;
            const auto w = lemma_q_shift(v, eps);
            const int want = p > 2.0 ? 1 : -1;
            if (p_norm_change_sign(v, w, p) != want) {
                ++bad;
                if (ce.empty())
                    ce = "v = (" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) +
                         "), eps = " + fmt(eps) + ", p = " + fmt(p);
            }
        }
        cl.add("additive shift: p-norms rise for p > 2, fall for 1 < p < 2", bad == 0,
               bad ? ce : std::to_string(n) + " draws");
    }
    return cl.take();
}

SuiteReport run_suite_covariance(std::uint64_t seed, int trials) {
    Claims cl("covariance");
    const RandomStream base(seed);

    {
        RandomStream rs = base.substream(1);
        double worst = 0.0;
        for (int i = 0; i < trials; ++i) {
            const double mu = rs.uniform(0.02, 0.98);
            const double lambda = rs.uniform(-0.3, 0.98);
            const CMatrix u = random_unitary2(rs);
            const CMatrix v = random_unitary2(rs);
            CMatrix rho = random_pure(rs).projector();
            if (i % 2 == 1) {
                // mix two projectors to also cover non-pure inputs
                const double t = rs.uniform(0.2, 0.8);
                rho = t * rho + (1.0 - t) * random_pure(rs).projector();
            }
            const CMatrix w = kron(u, v);
            const ChannelParams cp0 = ChannelParams::bell0(mu, lambda);
            const ChannelParams cpb(mu, lambda, covariance_transport(u, v));
            const Spectrum s1 =
                eig_hermitian(apply_channel_raw(cp0, w * rho * w.adjoint()));
            const Spectrum s2 = eig_hermitian(apply_channel_raw(cpb, rho));
            worst = std::max(worst, s1.distance(s2));
        }
        cl.add("frame transport preserves output spectra", worst <= 1e-10,
               "max deviation " + fmt(worst) + " over " + std::to_string(trials) +
                   " draws");
    }
    {
        RandomStream rs = base.substream(2);
        double worst = 0.0;
        const ChannelParams cps(0.35, 0.6, MaxEntangled(pauli(2)));
        for (int i = 0; i < trials; ++i) {
            const CMatrix u = random_unitary2(rs);
            const CMatrix w = kron(u, u);
            const CMatrix rho = random_pure(rs).projector();
            const CMatrix lhs = apply_channel_raw(cps, w * rho * w.adjoint());
            const CMatrix rhs = w * apply_channel_raw(cps, rho) * w.adjoint();
            worst = std::max(worst, (lhs - rhs).max_abs());
        }
        cl.add("singlet channel commutes with U (x) U", worst <= 1e-10,
               "max entry deviation " + fmt(worst));
    }
    {
        RandomStream rs = base.substream(3);
        const double mu = 0.3, lambda = 0.45;
        const double want = two_norm_optimum(mu, lambda).value;
        double worst = 0.0;
        for (int i = 0; i < 2; ++i) {
            const ChannelParams cpb(mu, lambda, MaxEntangled(random_unitary2(rs)));
            const Optimum got = numeric_optimize_channel(cpb, PurityOrder::finite(2.0),
                                                         40, rs.next_u64());
            worst = std::max(worst, std::abs(got.value - want));
        }
        cl.add("maximal 2-norm does not depend on the correlation frame",
               worst <= 1e-6, "max |value - bell0 value| = " + fmt(worst));
    }
    {
        RandomStream rs = base.substream(4);
        double worst_dag = 0.0, worst_plain = 0.0;
        for (int i = 0; i < trials; ++i) {
            const double mu = rs.uniform(0.05, 0.95);
            const double lambda = rs.uniform(0.05, 0.95);
            const double th = theta_optimal(mu, lambda);
            const PureState4 psi = canonical_theta_state(th);
            const ChannelParams cp0 = ChannelParams::bell0(mu, lambda);
            const Spectrum want = eig_hermitian(apply_channel_raw(cp0, psi.projector()));
            const CMatrix v = random_unitary2(rs);
            const PureState4 t1 = apply_local(v.transpose(), v.adjoint(), psi);
            const PureState4 t2 = apply_local(v.transpose(), v, psi);
            worst_dag = std::max(
                worst_dag,
                want.distance(eig_hermitian(apply_channel_raw(cp0, t1.projector()))));
            worst_plain = std::max(
                worst_plain,
                want.distance(eig_hermitian(apply_channel_raw(cp0, t2.projector()))));
        }
        cl.add("optimal family V^T (x) V^dag keeps the output spectrum",
               worst_dag <= 1e-10, "max deviation " + fmt(worst_dag));
        // recorded outcome, not an assertion: which printed form is invariant
        cl.add("record: V^T (x) V form deviation measured", true,
               "max deviation " + fmt(worst_plain) + " (V^T (x) V^dag: " +
                   fmt(worst_dag) + ")");
    }
    return cl.take();
}

SuiteReport run_suite_majorization(std::uint64_t seed, int trials) {
    Claims cl("majorization");
    const Spectrum x1({0.611, 0.222, 0.111, 0.056});
    const Spectrum y1({0.667, 0.111, 0.111, 0.111});
    const Spectrum x2({0.422, 0.391, 0.141, 0.047});
    const Spectrum y2({0.596, 0.141, 0.141, 0.123});

    {
        const DominanceReport r = majorization_check(x1, y1);
        cl.add("first example pair is not majorized",
               !r.majorized && r.first_violation_index == 2 &&
                   std::abs(r.x_partial - 0.833) <= 1e-12 &&
                   std::abs(r.y_partial - 0.778) <= 1e-12,
               "partial sums at k = 2: " + fmt(r.x_partial) + " > " + fmt(r.y_partial));
    }
    {
        const DominanceReport r = majorization_check(x2, y2);
        cl.add("second example pair is not majorized",
               !r.majorized && r.first_violation_index == 2,
               "partial sums at k = 2: " + fmt(r.x_partial) + " > " + fmt(r.y_partial));
    }
    {
        const DominanceReport r1 = majorization_check(x1, y1);
        const DominanceReport r2 = majorization_check(x2, y2);
        cl.add("both pairs p-dominated on the sampled grid",
               r1.p_dominated && r2.p_dominated,
               r1.p_dominated && r2.p_dominated
                   ? "all p in {1.05, 1.1, 1.5, 2, 3, 5, 10, inf}"
                   : "violating p = " + fmt(r1.p_dominated ? r2.first_violation_p
                                                           : r1.first_violation_p));
    }
    {
        const DominanceReport r = majorization_check(x1, x1);
        cl.add("a spectrum majorizes itself", r.majorized && r.weakly_majorized &&
                                                  r.p_dominated);
    }
    {
        RandomStream rs = RandomStream(seed).substream(5);
        const int n = std::min(trials, 200);
        int bad = 0;
        std::string ce;
        for (int i = 0; i < n; ++i) {
            std::vector<double> y(4);
            double tot = 0.0;
            for (double& v : y) {
                v = rs.uniform(0.05, 1.0);
                tot += v;
            }
            for (double& v : y) v /= tot;
            std::vector<double> x = y;
            for (int t = 0; t < 3; ++t) {
                // doubly stochastic pinch of a random pair
                const int i1 = static_cast<int>(rs.next_u64() % 4ull);
                int i2 = static_cast<int>(rs.next_u64() % 4ull);
                if (i2 == i1) i2 = (i2 + 1) % 4;
                const double tt = rs.uniform(0.0, 1.0);
                const double a = x[static_cast<size_t>(i1)], b = x[static_cast<size_t>(i2)];
                x[static_cast<size_t>(i1)] = tt * a + (1.0 - tt) * b;
                x[static_cast<size_t>(i2)] = (1.0 - tt) * a + tt * b;
            }
            const DominanceReport r = majorization_check(Spectrum(x), Spectrum(y));
            if (!(r.majorized && r.weakly_majorized && r.p_dominated)) {
                ++bad;
                if (ce.empty())
                    ce = "draw " + std::to_string(i) + ", majorized = " +
                         std::to_string(r.majorized);
            }
        }
        cl.add("pinched spectra are majorized and Ky Fan consistent", bad == 0,
               bad ? ce : std::to_string(n) + " random pairs");
    }
    {
        RandomStream rs = RandomStream(seed).substream(6);
        const Spectrum yy({0.55, 0.25, 0.12, 0.08});
        std::vector<double> xm = yy.values();
        const double a = xm[0], b = xm[1];
        xm[0] = 0.6 * a + 0.4 * b;
        xm[1] = 0.4 * a + 0.6 * b;
        (void)rs;
        const TrumpingResult t = trumping_scan(Spectrum(xm), yy, 1);
        cl.add("majorized pair admits the scalar catalyst",
               t.catalyst_found && t.catalyst_dim == 1);
    }
    {
        // effective three-outcome comparison: |a| = 0 vs |a| = 1 boundary columns
        const double mu = 0.3, lambda = 0.5, theta = 0.9;
        const Spectrum s0 = boundary_eigenvalues(mu, lambda, theta, BoundarySide::a0);
        const Spectrum s1 = boundary_eigenvalues(mu, lambda, theta, BoundarySide::a1);
        const double tr = s0.sum();
        std::vector<double> x3, y3;
        for (size_t k = 0; k < 3; ++k) {
            x3.push_back(s0[k] / tr);
            y3.push_back(s1[k] / tr);
        }
        const TrumpingResult t = trumping_scan(Spectrum(x3), Spectrum(y3), 4);
        cl.add("three-outcome boundary pair: no lattice catalyst up to dim 4",
               !t.p_dominance.majorized && !t.catalyst_found,
               "p-dominated = " + std::to_string(t.p_dominance.p_dominated));
    }
    {
        bool threw = false;
        try {
            majorization_check(Spectrum({0.5, -0.1}), Spectrum({0.3, 0.1}));
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        cl.add("negative entries are rejected", threw);
    }
    return cl.take();
}

SuiteReport run_suite_tables(std::uint64_t seed) {
    Claims cl("tables");
    (void)seed;
    const std::vector<double> mus{0.1, 0.3, 0.5, 0.7, 0.9};
    const std::vector<double> lambdas{0.15, 0.35, 0.55, 0.75, 0.95};
    const std::vector<double> thetas{0.2, 0.6, 1.0, 1.4};

    {
        double worst0 = 0.0, worst1 = 0.0;
        for (double mu : mus)
            for (double l : lambdas)
                for (double th : thetas) {
                    const Spectrum e0 =
                        eig_hermitian(delta_matrix(mu, l, ReducedParams(th, 0.0, 0.0)));
                    const Spectrum e1 =
                        eig_hermitian(delta_matrix(mu, l, ReducedParams(th, 0.0, 1.0)));
                    worst0 = std::max(
                        worst0,
                        boundary_eigenvalues(mu, l, th, BoundarySide::a0).distance(e0));
                    worst1 = std::max(
                        worst1,
                        boundary_eigenvalues(mu, l, th, BoundarySide::a1).distance(e1));
                }
        cl.add("boundary closed forms match the eigensolver at |a| = 0",
               worst0 <= 1e-10, "max deviation " + fmt(worst0));
        cl.add("boundary closed forms match the eigensolver at |a| = 1",
               worst1 <= 1e-10, "max deviation " + fmt(worst1));
    }
    {
        bool ok = true;
        std::string ce;
        for (double mu : mus)
            for (double l : lambdas)
                for (double th : thetas) {
                    const auto c0 = boundary_column(mu, l, th, BoundarySide::a0);
                    const auto c1 = boundary_column(mu, l, th, BoundarySide::a1);
                    const bool here = c1[0] > c0[0] && c1[1] < c0[1] &&
                                      c1[2] >= c0[2] - 1e-12;
                    if (!here && ce.empty())
                        ce = "mu = " + fmt(mu) + ", lambda = " + fmt(l) +
                             ", theta = " + fmt(th);
                    ok = ok && here;
                }
        cl.add("table arrows: top rises, middle falls (bottom also rises)", ok, ce);
    }
    {
        double worst = 0.0;
        const std::vector<double> amods{0.0, 0.25, 0.5, 0.75, 1.0};
        bool mono_ok = true, scan_ok = true;
        for (double mu : mus)
            for (double l : lambdas) {
                double prev_top = -1.0, best_p3 = -1.0, last_p3 = 0.0;
                for (double am : amods) {
                    const Spectrum cf = max_theta_closed_form(mu, l, am);
                    const Spectrum ev = eig_hermitian(
                        delta_matrix(mu, l, ReducedParams(M_PI / 2, 0.0, am)));
                    worst = std::max(worst, cf.distance(ev));
                    if (cf[0] <= prev_top) mono_ok = false;
                    prev_top = cf[0];
                    double p3 = 0.0;
                    for (size_t k = 0; k < 3; ++k) p3 += std::pow(cf[k], 3.0);
                    best_p3 = std::max(best_p3, p3);
                    last_p3 = p3;
                }
                if (last_p3 < best_p3 - 1e-12) scan_ok = false;
            }
        cl.add("maximally entangled closed form matches the eigensolver",
               worst <= 1e-10, "max deviation " + fmt(worst));
        cl.add("its top eigenvalue and 3-norm grow with |a|^2", mono_ok && scan_ok);
    }
    {
        double worst = 0.0;
        for (double mu : mus)
            for (double l : lambdas) {
                const auto cf = optimal_output_closed_form(mu, l);
                const Spectrum sp = output_spectrum_reduced(
                    mu, l, ReducedParams(theta_optimal(mu, l), 0.0, 1.0));
                const Spectrum cfs({cf[0], cf[1], cf[2], cf[3]});
                worst = std::max(worst, cfs.distance(sp));
            }
        cl.add("optimal 2-norm output spectrum matches its closed form",
               worst <= 1e-12, "max deviation " + fmt(worst));
    }
    {
        // reference spectra quoted to three decimals
        const Spectrum got1 = output_spectrum_reduced(
            0.5, 1.0 / 3.0, ReducedParams(theta_optimal(0.5, 1.0 / 3.0), 0.0, 1.0));
        const Spectrum want1({2.0 / 3.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0});
        const Spectrum got2 = output_spectrum_reduced(
            0.25, 0.5, ReducedParams(theta_optimal(0.25, 0.5), 0.0, 1.0));
        const Spectrum want2({0.596, 0.141, 0.141, 0.123});
        cl.add("golden optimal spectra at (mu, lambda) = (1/2, 1/3) and (1/4, 1/2)",
               got1.distance(want1) <= 1e-12 && got2.distance(want2) <= 5e-4,
               "deviations " + fmt(got1.distance(want1)) + ", " +
                   fmt(got2.distance(want2)));
    }
    {
        // monotonicity in |a| between the endpoints, reported rather than asserted
        int mono = 0, total = 0;
        for (double p : {1.5, 3.0})
            for (double mu : mus)
                for (double l : lambdas)
                    for (double th : thetas) {
                        double prev = -1.0;
                        bool up = true;
                        for (int i = 0; i <= 10; ++i) {
                            const Spectrum sp = eig_hermitian(delta_matrix(
                                mu, l, ReducedParams(th, 0.0, i / 10.0)));
                            double np = 0.0;
                            for (size_t k = 0; k < 3; ++k)
                                np += std::pow(sp[k], p);
                            if (np < prev - 1e-12) up = false;
                            prev = np;
                        }
                        ++total;
                        if (up) ++mono;
                    }
        cl.add("interior |a| scan (informational)", true,
               std::to_string(mono) + " of " + std::to_string(total) +
                   " (p, mu, lambda, theta) cells are monotone in |a|");
    }
    return cl.take();
}

namespace {

struct PerturbScans {
    double eps = 1e-6;
    std::vector<PerturbationReport> phase, a_big, a_small;
};

// fixed grids behind the perturbation suite; also serialized by the cli
PerturbScans run_perturb_scans() {
    const double inf = std::numeric_limits<double>::infinity();
    PerturbScans out;

    PerturbGrid cgrid;
    cgrid.mus = {0.2, 0.45, 0.7};
    cgrid.lambdas = {0.3, 0.55, 0.8};
    cgrid.thetas = {0.5, 0.9, 1.3};
    cgrid.phis = {0.6, 1.5, 2.5};
    cgrid.a_mods = {0.5, 0.85};
    out.phase = perturb_eigen_scan(cgrid, ShiftDirection::c_phi, out.eps,
                                   {1.1, 1.5, 2.0, 3.0, inf});

    PerturbGrid abig = cgrid;  // sin(theta) >= 1/2, aligned phase
    abig.thetas = {0.6, 0.9, 1.3};
    abig.phis = {0.0};
    abig.a_mods = {0.45, 0.8};
    out.a_big = perturb_eigen_scan(abig, ShiftDirection::a_sq, out.eps,
                                   {1.1, 1.5, 1.9, 2.0, inf});

    PerturbGrid asmall = abig;  // sin(theta) < 1/2, any phase
    asmall.thetas = {0.25, 0.42};
    asmall.phis = {0.0, 0.8, 1.9, 2.9};
    out.a_small = perturb_eigen_scan(asmall, ShiftDirection::a_sq, out.eps,
                                     {3.0, 5.0, 10.0, inf});
    return out;
}

}  // namespace

std::vector<PerturbationReport> perturbation_scan_reports() {
    PerturbScans s = run_perturb_scans();
    std::vector<PerturbationReport> out = std::move(s.phase);
    out.insert(out.end(), std::make_move_iterator(s.a_big.begin()),
               std::make_move_iterator(s.a_big.end()));
    out.insert(out.end(), std::make_move_iterator(s.a_small.begin()),
               std::make_move_iterator(s.a_small.end()));
    return out;
}

SuiteReport run_suite_perturbation(std::uint64_t seed) {
    Claims cl("perturbation");
    (void)seed;
    const std::vector<double> mus{0.2, 0.45, 0.7};
    const std::vector<double> lambdas{0.3, 0.55, 0.8};
    const PerturbScans scans = run_perturb_scans();
    const double eps = scans.eps;
    const auto& creps = scans.phase;

    {
        int checked = 0, bad = 0, degenerate = 0;
        double worst_ratio = 0.0;
        for (const auto& r : creps) {
            if (r.degenerate) {
                ++degenerate;
                continue;
            }
            for (int k = 0; k < 3; ++k) {
                const double pred = r.predicted_shift[static_cast<size_t>(k)];
                if (std::abs(pred) < 1e4 * eps * eps) continue;
                const double ratio = r.measured_shift[static_cast<size_t>(k)] / pred;
                worst_ratio = std::max(worst_ratio, std::abs(ratio - 1.0));
                ++checked;
                if (std::abs(ratio - 1.0) > 0.05) ++bad;
            }
        }
        cl.add("predicted eigenvalue shifts match re-diagonalization within 5%",
               bad == 0 && checked > 0,
               std::to_string(checked) + " shifts, worst ratio error " +
                   fmt(worst_ratio) + ", degenerate points " +
                   std::to_string(degenerate));
    }
    {
        int bad = 0, n = 0;
        std::string ce;
        for (const auto& r : creps)
            for (const auto& row : r.rows) {
                if (std::isinf(row.p) || !(row.p <= 2.0)) continue;
                if (r.degenerate) continue;
                ++n;
                if (row.predicted_sign == 0 || row.measured_sign != row.predicted_sign) {
                    ++bad;
                    if (ce.empty())
                        ce = "mu = " + fmt(r.mu) + ", lambda = " + fmt(r.lambda) +
                             ", p = " + fmt(row.p) + ", change = " +
                             fmt(row.measured_change);
                }
            }
        cl.add("alignment phase rise proven for 1 < p <= 2 holds", bad == 0,
               bad ? ce : std::to_string(n) + " rows agree");
    }
    {
        int bad = 0, n = 0;
        for (const auto& r : creps)
            for (const auto& row : r.rows) {
                if (!std::isinf(row.p) || r.degenerate) continue;
                ++n;
                if (row.measured_sign != row.predicted_sign || row.predicted_sign == 0)
                    ++bad;
            }
        cl.add("top eigenvalue rises with the alignment phase", bad == 0,
               std::to_string(n) + " points");
    }
    {
        int bad = 0, n = 0, close = 0, mid = 0;
        for (const auto& r : creps)
            for (const auto& row : r.rows) {
                if (std::isinf(row.p) || row.p >= 2.0) continue;
                ++n;
                if (!(row.bracket > 0.0)) ++bad;
                if (row.mvt_close) ++close;
                if (row.mid_above) ++mid;
            }
        cl.add("competing-terms bracket positive for 1 < p < 2", bad == 0,
               std::to_string(n) + " rows; mean-value points close in " +
                   std::to_string(close) + ", midpoint above 1 - lambda^2 in " +
                   std::to_string(mid));
    }
    {
        // second-order error decay, three representative points
        bool ok = true;
        std::string detail;
        for (const auto& pt : std::vector<std::array<double, 5>>{
                 {0.3, 0.5, 0.9, 1.2, 0.7},
                 {0.6, 0.4, 0.6, 2.2, 0.5},
                 {0.2, 0.7, 1.3, 0.4, 0.9}}) {
            std::vector<double> lx, ly;
            // decades chosen so the first-order validity bound holds at
            // every point and the smallest error still clears fp noise
            for (double e : {1e-4, 1e-5, 1e-6}) {
                const auto r = perturb_point(pt[0], pt[1],
                                             ReducedParams(pt[2], pt[3], pt[4]),
                                             ShiftDirection::c_phi, e, {2.0});
                lx.push_back(std::log(e));
                ly.push_back(std::log(r.max_shift_error));
            }
            const double slope = lsq_slope(lx, ly);
            if (detail.empty()) detail = "first slope = " + fmt(slope);
            if (!(slope >= 1.8 && slope <= 2.2)) {
                ok = false;
                detail = "slope " + fmt(slope) + " out of [1.8, 2.2]";
            }
        }
        cl.add("shift prediction error scales as eps^2", ok, detail);
    }

    const auto& abig = scans.a_big;
    {
        int bad = 0, n = 0;
        std::string ce;
        for (const auto& r : abig)
            for (const auto& row : r.rows) {
                if (std::isinf(row.p) || r.degenerate) continue;
                ++n;
                if (row.predicted_sign == 0 || row.measured_sign != row.predicted_sign) {
                    ++bad;
                    if (ce.empty())
                        ce = "mu = " + fmt(r.mu) + ", lambda = " + fmt(r.lambda) +
                             ", theta = " + fmt(r.rp.theta) + ", p = " + fmt(row.p);
                }
            }
        cl.add("|a|^2 rise for 1 < p <= 2 at sin(theta) >= 1/2 holds", bad == 0,
               bad ? ce : std::to_string(n) + " rows agree");
    }

    const auto& asmall = scans.a_small;
    {
        int bad = 0, n = 0;
        std::string ce;
        for (const auto& r : asmall)
            for (const auto& row : r.rows) {
                if (std::isinf(row.p) || r.degenerate) continue;
                ++n;
                if (row.predicted_sign == 0 || row.measured_sign != row.predicted_sign) {
                    ++bad;
                    if (ce.empty())
                        ce = "mu = " + fmt(r.mu) + ", lambda = " + fmt(r.lambda) +
                             ", theta = " + fmt(r.rp.theta) + ", phi = " +
                             fmt(r.rp.phi) + ", p = " + fmt(row.p);
                }
            }
        cl.add("|a|^2 rise for p > 2 at sin(theta) < 1/2 holds", bad == 0,
               bad ? ce : std::to_string(n) + " rows agree");
    }
    {
        int bad = 0, n = 0;
        auto top_rows = [&](const std::vector<PerturbationReport>& reps) {
            for (const auto& r : reps)
                for (const auto& row : r.rows) {
                    if (!std::isinf(row.p) || r.degenerate) continue;
                    ++n;
                    if (row.measured_sign != row.predicted_sign ||
                        row.predicted_sign == 0)
                        ++bad;
                }
        };
        top_rows(abig);
        top_rows(asmall);
        cl.add("top eigenvalue rises with |a|^2", bad == 0,
               std::to_string(n) + " points");
    }
    {
        // heuristic second-pass surrogates, reported with their assumptions
        int pos_small = 0, n_small = 0, pos_big = 0, n_big = 0;
        for (const auto& r : abig) {
            const double s = std::sin(r.rp.theta);
            for (const auto& row : r.rows) {
                if (std::isinf(row.p) || row.p >= 2.0) continue;
                ++n_small;
                if ((row.p - 1.0) * (1.0 - s) + s > 0.0) ++pos_small;
            }
        }
        for (const auto& r : asmall) {
            const double s = std::sin(r.rp.theta);
            const double cphi = std::cos(r.rp.phi);
            for (const auto& row : r.rows) {
                if (std::isinf(row.p)) continue;
                ++n_big;
                if ((row.p - 2.0) * (1.0 - s * s) + (1.0 + cphi * s) > 0.0) ++pos_big;
            }
        }
        cl.add("second-pass surrogate signs (informational)", true,
               "1<p<2 surrogate positive " + std::to_string(pos_small) + "/" +
                   std::to_string(n_small) + ", p>2 surrogate positive " +
                   std::to_string(pos_big) + "/" + std::to_string(n_big));
    }
    {
        // the inner threshold marks where theta* passes sin(theta) = 1/2
        int agree = 0, n = 0;
        for (double mu : mus)
            for (double l : lambdas) {
                const double inner = (1.0 - l * l) / (3.0 - l * l);
                const double st = std::sin(theta_optimal(mu, l));
                ++n;
                if ((mu > inner) == (st > 0.5) || std::abs(st - 0.5) < 1e-9) ++agree;
            }
        cl.add("inner threshold matches sin(theta*) = 1/2 crossing", agree == n,
               std::to_string(agree) + "/" + std::to_string(n) + " grid points");
    }
    return cl.take();
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials) {
    if (name == "lemmas") return run_suite_lemmas(seed, trials);
    if (name == "covariance") return run_suite_covariance(seed, trials);
    if (name == "majorization") return run_suite_majorization(seed, trials);
    if (name == "tables") return run_suite_tables(seed);
    if (name == "perturbation") return run_suite_perturbation(seed);
    throw std::invalid_argument(
        "run_suite: unknown suite '" + name +
        "' (expected lemmas | covariance | majorization | tables | perturbation)");
}

}  // namespace qcorr
