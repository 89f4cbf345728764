#pragma once

// Verification instruments: root-shift lemmas for cubics, first-order
// eigenvalue responses of the reduced 3x3 block under c_phi and |a|^2
// changes, boundary closed forms, and majorization / catalytic dominance.
//
// Notation for a strictly decreasing triple (r1, r2, r3):
//   D_k = (r_k - r_m)(r_k - r_n),  {k, m, n} = {1, 2, 3},
// so D_1 > 0, D_2 < 0, D_3 > 0. Two identities used throughout:
//   sum_k 1 / D_k = 0   and   sum_k r_k / D_k = 0.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/purity.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct IdentitySums {
    double sum_inv;  // sum 1 / D_k
    double sum_lin;  // sum r_k / D_k
};
IdentitySums identity_check_sums(double r1, double r2, double r3);

// First-order roots of Q(x) = -(x - r1)(x - r2)(x - r3) + d1 x + d2:
//   s_k = r_k + (r_k d1 + d2) / D_k.
// reliable drops to false when the smallest root gap is not at least
// 1e3 * max(|d1|, |d2|); the prediction is still returned.
struct RootShift {
    std::array<double, 3> roots;
    bool reliable;
};
RootShift root_shift_predict(const std::array<double, 3>& r, double delta1, double delta2);

// Multiplicative shift w_k = v_k + eps v_k / D_k: the sum is preserved
// identically and every p-norm with p > 1 rises. Requires v1 > v2 > v3 > 0
// and 0 < eps <= 1e-3 * (min gap)^2.
std::array<double, 3> lemma_p_shift(const std::array<double, 3>& v, double eps);

// Additive shift w_k = v_k + eps / D_k: p-norms rise for p > 2 and fall
// for 1 < p < 2 (the 2-norm is unchanged at first order). Same preconditions.
std::array<double, 3> lemma_q_shift(const std::array<double, 3>& v, double eps);

// Sign of ||w||_p^p - ||v||_p^p, evaluated per term with expm1/log1p so the
// sign survives shifts far below the norm scale. Returns +1, -1 or 0.
int p_norm_change_sign(const std::array<double, 3>& v, const std::array<double, 3>& w,
                       double p);

enum class ShiftDirection { c_phi, a_sq };

// Per-order entries of a perturbation report. The mean-value points satisfy
// v1 > acute1 > v2 > acute3 > v3 (and the same for grave), from
//   sum v_k^p / D_k     = p (acute1^{p-1} - acute3^{p-1}) / (v1 - v3)
//   sum v_k^{p-1} / D_k = (p-1) (grave1^{p-2} - grave3^{p-2}) / (v1 - v3).
struct PerturbSignRow {
    double p;               // order; an infinite p tracks the top eigenvalue
    int predicted_sign;     // +1 where the first-order argument proves a rise, else 0
    int measured_sign;
    double measured_change;  // ||v'||_p^p - ||v||_p^p; top-eigenvalue change at p = inf
    double first_order;      // predicted first-order change
    double bracket;          // competing-terms bracket, NaN when undefined
    double term_main;        // its acute (power-sum) piece
    double term_cross;       // its grave (cross) piece
    double acute1, acute3, grave1, grave3;
    double acute2, grave2;  // second-pass mean values, NaN at p = 2 / p = 3
    bool mvt_close;         // acute and grave points agree within 10%
    bool mid_above;         // acute2 >= 1 - lambda^2
};

struct PerturbationReport {
    double mu, lambda;
    ReducedParams rp;
    ShiftDirection direction;
    double epsilon;  // signed step actually applied to c_phi or |a|^2
    std::array<double, 3> base;             // eigenvalues of the 3x3 block, descending
    std::array<double, 3> predicted_shift;  // root-shift route, NaN when degenerate
    std::array<double, 3> measured_shift;   // re-diagonalization
    double max_shift_error;                 // max |predicted - measured|
    bool degenerate;                        // gap below the first-order validity bound
    double mu_c;      // (1 - l^2) / (2 - l^2)
    double mu_inner;  // (1 - l^2) / (3 - l^2); mu above it means sin(theta*) > 1/2
    std::vector<PerturbSignRow> rows;
};

PerturbationReport perturb_point(double mu, double lambda, const ReducedParams& rp,
                                 ShiftDirection dir, double eps,
                                 const std::vector<double>& ps);

struct PerturbGrid {
    std::vector<double> mus, lambdas, thetas, phis, a_mods;
};

std::vector<PerturbationReport> perturb_eigen_scan(const PerturbGrid& grid,
                                                   ShiftDirection dir, double eps,
                                                   const std::vector<double>& ps);

// every grid point behind the perturbation suite, concatenated for export
std::vector<PerturbationReport> perturbation_scan_reports();

enum class BoundarySide { a0, a1 };

// The closed-form table column at |a| = 0 or |a| = 1 (c_phi = 1) in printed
// order (top, middle, bottom); the two smallest entries can switch rank for
// very small M.
std::array<double, 3> boundary_column(double mu, double lambda, double theta,
                                      BoundarySide side);

Spectrum boundary_eigenvalues(double mu, double lambda, double theta, BoundarySide side);

// Closed form at sin(theta) = 1 for any |a| (real a):
//   {1 - l^2,  1 + l^2 + M/2 +- sqrt(M^2/4 + 4 l^4 - 2 l^2 M (1 - 2 a^2))}.
Spectrum max_theta_closed_form(double mu, double lambda, double a_mod);

// Optimal p = 2 output eigenvalues of the full 4x4 output in closed form.
std::array<double, 4> optimal_output_closed_form(double mu, double lambda);

struct DominanceReport {
    Spectrum x, y;
    bool majorized;         // x majorized by y
    bool weakly_majorized;  // partial sums only, no total-equality requirement
    bool p_dominated;       // ||x||_p <= ||y||_p over the sampled p grid
    int first_violation_index;     // 1-based partial-sum index, -1 when majorized
    double x_partial, y_partial;   // partial sums at that index
    double first_violation_p;      // NaN when p_dominated
};

std::vector<double> dominance_p_grid();  // {1.05, 1.1, 1.5, 2, 3, 5, 10, inf}

DominanceReport majorization_check(const Spectrum& x, const Spectrum& y);

// Catalyst search: probability vectors z with entries on a 1/32 lattice,
// exhaustive for dim <= 4, sampled for 5..6, testing x (x) z < y (x) z.
// Absence of a catalyst is a statement about the searched grid only.
struct TrumpingResult {
    DominanceReport p_dominance;
    bool catalyst_found;
    int catalyst_dim;                // 0 when none found
    std::vector<double> catalyst;
};
TrumpingResult trumping_scan(const Spectrum& x, const Spectrum& y, int max_catalyst_dim,
                             std::uint64_t seed = 20260823);

struct SuiteReport {
    std::string name;
    int passes = 0;
    int fails = 0;
    std::vector<std::string> messages;  // one line per check, failures carry detail
    bool ok() const { return fails == 0; }
};

SuiteReport run_suite_lemmas(std::uint64_t seed, int trials);
SuiteReport run_suite_covariance(std::uint64_t seed, int trials);
SuiteReport run_suite_majorization(std::uint64_t seed, int trials);
SuiteReport run_suite_tables(std::uint64_t seed);
SuiteReport run_suite_perturbation(std::uint64_t seed);

// dispatch by name: lemmas | covariance | majorization | tables | perturbation
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials);

}  // namespace qcorr
