// One check per release criterion, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/analysis.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/purity.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s%s%s\n", n, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename F>
void criterion(int n, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(n, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

PureState4 product_yy() {
    return PureState4::from_amplitudes(
        {Complex(0.5, 0), Complex(0, 0.5), Complex(0, 0.5), Complex(-0.5, 0)});
}

double spectrum_gap(const Spectrum& got, const std::vector<double>& want) {
    double d = 0;
    for (size_t i = 0; i < want.size(); ++i) d = std::max(d, std::abs(got[i] - want[i]));
    return d;
}

}  // namespace

int main() {
    const std::uint64_t seed = 20260823;

    criterion(1, [] {
        const double e1 = std::abs(mu_critical(0.5) - 3.0 / 7.0);
        const double e2 = std::abs(mu_critical(1.0 / 3.0) - 8.0 / 17.0);
        report(1, e1 <= 1e-15 && e2 <= 1e-15,
               "mu_c(1/2) err " + fmt(e1) + ", mu_c(1/3) err " + fmt(e2));
    });

    criterion(2, [] {
        const ChannelParams cpa = ChannelParams::bell0(0.5, 1.0 / 3.0);
        const ChannelParams cpb = ChannelParams::bell0(0.25, 0.5);
        double worst = 0;
        worst = std::max(worst, spectrum_gap(apply_channel(cpa, bell_state(0)).spectrum(),
                                             {0.667, 0.111, 0.111, 0.111}));
        worst = std::max(worst, spectrum_gap(apply_channel(cpa, product_yy()).spectrum(),
                                             {0.611, 0.222, 0.111, 0.056}));
        worst = std::max(worst, spectrum_gap(two_norm_optimum(0.25, 0.5).spectrum,
                                             {0.596, 0.141, 0.141, 0.123}));
        worst = std::max(worst, spectrum_gap(apply_channel(cpb, product_yy()).spectrum(),
                                             {0.422, 0.391, 0.141, 0.047}));
        report(2, worst <= 5e-4, "four golden spectra, worst 3-decimal gap " + fmt(worst));
    });

    criterion(3, [] {
        const ChannelParams cpa = ChannelParams::bell0(0.5, 1.0 / 3.0);
        const ChannelParams cpb = ChannelParams::bell0(0.25, 0.5);
        const DominanceReport r1 = majorization_check(
            apply_channel(cpa, product_yy()).spectrum(), apply_channel(cpa, bell_state(0)).spectrum());
        const DominanceReport r2 = majorization_check(
            apply_channel(cpb, product_yy()).spectrum(), two_norm_optimum(0.25, 0.5).spectrum);
        const bool ok = !r1.majorized && r1.first_violation_index == 2 && !r2.majorized &&
                        r2.first_violation_index == 2 && r1.x_partial > r1.y_partial &&
                        r2.x_partial > r2.y_partial;
        std::ostringstream os;
        os << "pair 1 violates at partial sum " << r1.first_violation_index << " ("
           << fmt(r1.x_partial) << " > " << fmt(r1.y_partial) << "), pair 2 at "
           << r2.first_violation_index << " (" << fmt(r2.x_partial) << " > "
           << fmt(r2.y_partial) << ")";
        report(3, ok, os.str());
    });

    criterion(4, [] {
        const PurityOrder two = PurityOrder::finite(2);
        RandomStream rs(4);
        double worst_norm = 0, worst_theta = 0;
        for (int i = 1; i <= 10; ++i)
            for (int j = 1; j <= 10; ++j) {
                const double mu = i / 11.0;
                const double lambda = j / 11.0;
                const Optimum an = two_norm_optimum(mu, lambda);
                const Optimum nu = numeric_optimize(mu, lambda, two, 30, rs.next_u64());
                worst_norm = std::max(worst_norm, std::abs(nu.value - an.value));
                if (mu < mu_critical(lambda)) {
                    const double want =
                        std::asin(mu / ((1 - mu) * (1 - lambda * lambda)));
                    worst_theta = std::max(worst_theta, std::abs(an.theta_opt - want));
                } else if (an.theta_opt != M_PI / 2) {
                    worst_theta = 1.0;
                }
            }
        report(4, worst_norm <= 1e-6 && worst_theta <= 1e-6,
               "10x10 grid, worst norm gap " + fmt(worst_norm) + ", worst angle gap " +
                   fmt(worst_theta));
    });

    criterion(5, [seed] {
        SweepSpec spec;
        spec.cells = 2000;
        spec.trials = 50;
        spec.seed = seed;
        const auto cells = conjecture_sweep(spec);
        int violations = 0;
        double max_gap = -1;
        for (const auto& c : cells) {
            if (c.violation) ++violations;
            max_gap = std::max(max_gap, c.gap);
        }
        std::ostringstream os;
        os << cells.size() << " cells x orders, " << violations
           << " violations, max gap past conjecture " << fmt(max_gap);
        report(5, violations == 0, os.str());
    });

    criterion(6, [seed] {
        RandomStream rs(seed);
        double worst = 0;
        for (int t = 0; t < 1000; ++t) {
            const double mu = rs.uniform(0.0, 0.98);
            const double lambda = rs.uniform(0.02, 0.98);
            const ChannelParams cp(mu, lambda, MaxEntangled(random_unitary2(rs)));
            const Spectrum sp = apply_channel(cp, random_pure(rs)).spectrum();
            const double dec = 0.25 * (1 - mu) * (1 - lambda * lambda);
            double best = 1;
            for (size_t i = 0; i < sp.size(); ++i) best = std::min(best, std::abs(sp[i] - dec));
            worst = std::max(worst, best);
        }
        report(6, worst <= 1e-10,
               "decoupled eigenvalue present for 1000 draws, worst miss " + fmt(worst));
    });

    criterion(7, [seed] {
        RandomStream rs(seed ^ 7);
        double worst = 0;
        for (int t = 0; t < 100; ++t) {
            const double mu = rs.uniform(0.02, 0.98);
            const double lambda = rs.uniform(0.02, 0.98);
            const CMatrix u = random_unitary2(rs);
            const CMatrix v = random_unitary2(rs);
            const CMatrix w = kron(u, v);
            const CMatrix rho = random_pure(rs).projector();
            const CMatrix lhs = apply_channel_raw(ChannelParams::bell0(mu, lambda),
                                                  w * rho * w.adjoint());
            const CMatrix rhs = apply_channel_raw(
                ChannelParams(mu, lambda, covariance_transport(u, v)), rho);
            worst = std::max(worst, eig_hermitian(lhs).distance(eig_hermitian(rhs)));
        }
        // singlet frame: u (x) u commutes with the channel
        const ChannelParams cps(0.35, 0.6, MaxEntangled(pauli(2)));
        for (int t = 0; t < 100; ++t) {
            const CMatrix u = random_unitary2(rs);
            const CMatrix w = kron(u, u);
            const CMatrix rho = random_pure(rs).projector();
            const CMatrix lhs = apply_channel_raw(cps, w * rho * w.adjoint());
            const CMatrix rhs = w * apply_channel_raw(cps, rho) * w.adjoint();
            worst = std::max(worst, (lhs - rhs).max_abs());
        }
        report(7, worst <= 1e-10, "transport + singlet covariance, worst deviation " + fmt(worst));
    });

    criterion(8, [seed] {
        const SuiteReport rep = run_suite_lemmas(seed, 10000);
        std::ostringstream os;
        os << "shift lemma suite: " << rep.passes << " checks passed, " << rep.fails
           << " failed";
        if (!rep.ok())
            for (const auto& m : rep.messages)
                if (m.rfind("FAIL", 0) == 0) {
                    os << "; first: " << m;
                    break;
                }
        report(8, rep.ok(), os.str());
    });

    criterion(9, [seed] {
        const SuiteReport rep = run_suite_tables(seed);
        std::ostringstream os;
        os << "boundary table suite: " << rep.passes << " checks passed, " << rep.fails
           << " failed";
        report(9, rep.ok(), os.str());
    });

    criterion(10, [seed] {
        bool ok = true;
        std::ostringstream os;
        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0})
            if (fig1_value(1.0, lambda) != 1.0) ok = false;
        for (double mu : {0.0, 0.3, 0.6, 1.0})
            if (fig1_value(mu, 1.0) != 1.0) ok = false;
        os << "norm-surface edges at 1: " << (ok ? "yes" : "no");

        std::vector<double> mus;
        for (int i = 0; i <= 100; ++i) mus.push_back(i / 100.0);
        bool mono = true, capped = true;
        for (double lambda : {1.0 / 3.0, 0.5, 0.8}) {
            const auto rows = fig2_rows({lambda}, mus);
            const double mc = mu_critical(lambda);
            for (size_t i = 1; i < rows.size(); ++i) {
                if (rows[i].mu < mc && !(rows[i].linear_entropy > rows[i - 1].linear_entropy))
                    mono = false;
                if (rows[i].mu >= mc && rows[i].linear_entropy != 1.0) capped = false;
            }
        }
        os << "; entanglement strictly rising below threshold: " << (mono ? "yes" : "no")
           << ", maximal above: " << (capped ? "yes" : "no");

        bool fig3_ok = true;
        const std::vector<double> ps = {1.0, 1.3, 1.7, 2.0, 3.0, 5.0, INFINITY};
        for (const auto& panel : {std::pair<double, double>{0.25, 0.5},
                                  std::pair<double, double>{0.5, 1.0 / 3.0}}) {
            const auto rows = fig3_rows(panel.first, panel.second, ps, 200, seed);
            for (const auto& r : rows) {
                if (r.conjectured) continue;
                for (const auto& c : rows)
                    if (c.conjectured && c.p == r.p && c.s_p > r.s_p + 1e-9) fig3_ok = false;
            }
        }
        os << "; conjectured entropy curve under every sampled curve: "
           << (fig3_ok ? "yes" : "no");
        report(10, ok && mono && capped && fig3_ok, os.str());
    });

    criterion(11, [seed] {
        const SuiteReport rep = run_suite_perturbation(seed);
        std::ostringstream os;
        os << "regime sign scans: " << rep.passes << " checks passed, " << rep.fails
           << " failed";
        if (!rep.ok())
            for (const auto& m : rep.messages)
                if (m.rfind("FAIL", 0) == 0) {
                    os << "; first: " << m;
                    break;
                }
        report(11, rep.ok(), os.str());
    });

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures;
}
