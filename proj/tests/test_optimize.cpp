#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcorr/channels.hpp"
#include "qcorr/io.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/purity.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("threshold value and edge cases") {
    CHECK(std::abs(mu_critical(0.5) - 3.0 / 7.0) <= 1e-15);
    CHECK(std::abs(mu_critical(1.0 / 3.0) - 8.0 / 17.0) <= 1e-15);
    CHECK(std::abs(mu_critical(0.0) - 0.5) <= 1e-15);
    CHECK(mu_critical(1.0) == 0.0);
    CHECK_THROWS_AS(mu_critical(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(mu_critical(1.1), std::invalid_argument);
}

TEST_CASE("optimal angle rule") {
    for (double lambda : {0.2, 0.5, 0.8}) {
        const double mc = mu_critical(lambda);
        for (double mu : {0.1 * mc, 0.5 * mc, 0.9 * mc}) {
            const double want =
                std::asin(mu / ((1 - mu) * (1 - lambda * lambda)));
            CHECK(std::abs(theta_optimal(mu, lambda) - want) <= 1e-13);
        }
        CHECK(theta_optimal(mc, lambda) == M_PI / 2);
        CHECK(theta_optimal(0.5 * (mc + 1), lambda) == M_PI / 2);
    }
    CHECK(theta_optimal(0.0, 0.3) == 0.0);
}

TEST_CASE("two norm optimum value and regimes") {
    for (double lambda : {0.25, 0.5, 0.75}) {
        const double mc = mu_critical(lambda);
        const Optimum below = two_norm_optimum(0.6 * mc, lambda);
        CHECK(below.regime == Regime::below_threshold);
        CHECK(below.theta_opt < M_PI / 2);
        const Optimum above = two_norm_optimum(0.5 * (mc + 1), lambda);
        CHECK(above.regime == Regime::at_or_above);
        CHECK(above.theta_opt == M_PI / 2);
        // continuity across the threshold
        const Optimum l = two_norm_optimum(mc - 1e-9, lambda);
        const Optimum r = two_norm_optimum(mc + 1e-9, lambda);
        CHECK(std::abs(l.value - r.value) <= 1e-8);
        CHECK(std::abs(l.theta_opt - r.theta_opt) <= 1e-3);
    }
}

TEST_CASE("golden two norm spectra") {
    // mu = 1/2, lambda = 1/3 sits above its threshold 8/17
    const Optimum a = two_norm_optimum(0.5, 1.0 / 3.0);
    CHECK(a.regime == Regime::at_or_above);
    const Spectrum want_a(std::vector<double>{2.0 / 3.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0});
    CHECK(a.spectrum.distance(want_a) <= 1e-12);
    // mu = 1/4, lambda = 1/2 sits below its threshold 3/7
    const Optimum b = two_norm_optimum(0.25, 0.5);
    CHECK(b.regime == Regime::below_threshold);
    const Spectrum want_b(std::vector<double>{0.596, 0.141, 0.141, 0.123});
    CHECK(b.spectrum.distance(want_b) <= 5e-4);
}

TEST_CASE("numeric search matches the closed form at p = 2") {
    const PurityOrder two = PurityOrder::finite(2);
    RandomStream rs(51);
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j) {
            const double mu = i / 11.0;
            const double lambda = j / 11.0;
            const Optimum an = two_norm_optimum(mu, lambda);
            const Optimum nu = numeric_optimize(mu, lambda, two, 30, rs.next_u64());
            CHECK(nu.value <= an.value + 1e-9);
            CHECK(std::abs(nu.value - an.value) <= 1e-6);
        }
}

TEST_CASE("numeric search matches the conjectured entropy optimum") {
    RandomStream rs(52);
    for (double mu : {0.2, 0.55})
        for (double lambda : {0.35, 0.7}) {
            const Optimum an = conjectured_optimum(mu, lambda, PurityOrder::entropy_limit());
            const Optimum nu =
                numeric_optimize(mu, lambda, PurityOrder::entropy_limit(), 40, rs.next_u64());
            // entropy: smaller is better, numeric should not get below the conjecture
            CHECK(nu.value >= an.value - 1e-9);
            CHECK(std::abs(nu.value - an.value) <= 1e-6);
        }
}

TEST_CASE("witness states realize the reported spectra") {
    for (double mu : {0.15, 0.45, 0.75})
        for (double lambda : {0.3, 0.6, 0.9})
            for (const auto& ord :
                 {PurityOrder::finite(2), PurityOrder::finite(3), PurityOrder::infinity()}) {
                const Optimum opt = conjectured_optimum(mu, lambda, ord);
                const Spectrum direct =
                    apply_channel(ChannelParams::bell0(mu, lambda), opt.witness).spectrum();
                CHECK(direct.distance(opt.spectrum) <= 1e-10);
                CHECK(std::abs(p_norm(direct, ord) - opt.value) <= 1e-12);
            }
}

TEST_CASE("correlation strictly helps below the threshold") {
    // at p = 2 the partially entangled optimizer beats both extreme inputs
    for (double lambda : {0.3, 0.6}) {
        const double mc = mu_critical(lambda);
        const double mu = 0.5 * mc;
        const Optimum opt = two_norm_optimum(mu, lambda);
        const PurityOrder two = PurityOrder::finite(2);
        const ChannelParams cp = ChannelParams::bell0(mu, lambda);
        const double at_product = p_norm(apply_channel(cp, canonical_theta_state(0.0)), two);
        const double at_bell = p_norm(apply_channel(cp, bell_state(0)), two);
        CHECK(opt.value > at_product + 1e-12);
        CHECK(opt.value > at_bell + 1e-12);
    }
}

TEST_CASE("conjecture sweep runs clean and deterministically") {
    SweepSpec spec;
    spec.cells = 40;
    spec.trials = 20;
    spec.seed = 777;
    const auto cells = conjecture_sweep(spec);
    CHECK(cells.size() == 40u * default_sweep_orders().size());
    for (const auto& c : cells) {
        CHECK_FALSE(c.violation);
        CHECK(c.gap <= 1e-9);
        CHECK(c.mu >= 0.0);
        CHECK(c.mu <= 1.0);
    }
    const auto again = conjecture_sweep(spec);
    char path1[] = "/tmp/qcorr_sweep_a.csv";
    char path2[] = "/tmp/qcorr_sweep_b.csv";
    write_sweep_csv(path1, cells);
    write_sweep_csv(path2, again);
    CHECK(slurp(path1) == slurp(path2));
    std::remove(path1);
    std::remove(path2);
}

TEST_CASE("sweep honors pinned parameters") {
    SweepSpec spec;
    spec.cells = 5;
    spec.trials = 5;
    spec.fixed_mu = 0.0;
    spec.orders = {PurityOrder::finite(2)};
    for (const auto& c : conjecture_sweep(spec)) {
        CHECK(c.mu == 0.0);
        CHECK_FALSE(c.violation);
    }
}

TEST_CASE("first figure data hits the exact edges") {
    for (double lambda : {0.0, 0.3, 0.7, 1.0}) CHECK(fig1_value(1.0, lambda) == 1.0);
    for (double mu : {0.0, 0.4, 1.0}) CHECK(fig1_value(mu, 1.0) == 1.0);
    // interior values are genuine norms in (0, 1]
    CHECK(fig1_value(0.3, 0.5) > 0.25);
    CHECK(fig1_value(0.3, 0.5) < 1.0);
    // matches the optimum directly
    CHECK(std::abs(fig1_value(0.3, 0.5) - two_norm_optimum(0.3, 0.5).value) <= 1e-15);
}

TEST_CASE("second figure entanglement profile") {
    std::vector<double> mus;
    for (int i = 0; i <= 50; ++i) mus.push_back(i / 50.0);
    const auto rows = fig2_rows({0.5}, mus);
    REQUIRE(rows.size() == mus.size());
    const double mc = mu_critical(0.5);
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].mu < mc)
            CHECK(rows[i].linear_entropy > rows[i - 1].linear_entropy);
        if (rows[i].mu >= mc) {
            CHECK(rows[i].linear_entropy == 1.0);
            CHECK(std::abs(rows[i].vn_entropy - std::log(2.0)) <= 1e-12);
        }
    }
}

TEST_CASE("third figure conjecture dominates random samples") {
    const auto rows = fig3_rows(0.25, 0.5, {1.5, 2.0, 3.0}, 40, 999);
    size_t n_conj = 0;
    for (const auto& r : rows)
        if (r.conjectured) ++n_conj;
    CHECK(n_conj == 3);
    for (const auto& r : rows) {
        if (r.conjectured) continue;
        for (const auto& c : rows)
            if (c.conjectured && c.p == r.p) CHECK(c.s_p <= r.s_p + 1e-9);
    }
}
