#pragma once

// Output purity optimization over input states.
//
// For the bell0-frame channel the 2-norm maximum is explicit: below the
// threshold mu_c = (1 - lambda^2)/(2 - lambda^2) the optimizer is the
// partially entangled canonical state with sin(theta*) = mu/((1-mu)(1-lambda^2)),
// at or above it the maximally entangled bell0 itself (theta* = pi/2).
// The conjectured optimum evaluates the same family at any order p.

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/purity.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

enum class Regime { below_threshold, at_or_above, trivial };

struct Optimum {
    double value;         // best p-norm, or smallest Renyi entropy for entropy orders
    double theta_opt;
    Regime regime;
    ReducedParams params;
    PureState4 witness;
    Spectrum spectrum;
};

double mu_critical(double lambda);               // lambda in [0, 1]
double theta_optimal(double mu, double lambda);  // mu in [0, 1], lambda in [0, 1)

Optimum two_norm_optimum(double mu, double lambda);
Optimum conjectured_optimum(double mu, double lambda, const PurityOrder& order);

// higher-is-better objective: p-norm, negated entropy for entropy orders
double objective(const Spectrum& sp, const PurityOrder& order);

// Best over n_random Haar states, a lattice in the reduced coordinates
// (theta, phi, |a|) and compass-search refinement of the leading starts.
// Deterministic for fixed arguments, bell0 frame.
Optimum numeric_optimize(double mu, double lambda, const PurityOrder& order,
                         int n_random, std::uint64_t seed);

// Same search over raw state amplitudes for an arbitrary beta frame.
Optimum numeric_optimize_channel(const ChannelParams& cp, const PurityOrder& order,
                                 int n_random, std::uint64_t seed);

struct SweepSpec {
    int cells = 2000;
    int trials = 50;
    std::vector<PurityOrder> orders;  // empty = default grid {1.1, 1.5, 2, 3, 5, inf}
    std::uint64_t seed = 20260823;
    int threads = 0;            // 0 = hardware concurrency
    bool lattice_pass = false;  // also scan a coarse (theta, phi, |a|) lattice per cell
    // NaN = draw per cell; a finite value pins the parameter for every cell
    double fixed_mu = std::numeric_limits<double>::quiet_NaN();
    double fixed_lambda = std::numeric_limits<double>::quiet_NaN();
};

struct SweepCell {
    double mu, lambda;
    PurityOrder order;
    double conjectured;
    double best_random;
    double gap;       // how far the best random input got past the conjectured value
    bool violation;   // gap > 1e-9
    double theta_opt;
    double linear_entropy;  // entanglement of the conjectured optimal input
    double vn_entropy;
    std::array<Complex, 4> best_state;  // the input behind best_random, verbatim
};

// Random (mu, lambda) cells, random inputs pushed through the channel
// directly (not through the reduced forms) and compared against the
// conjectured optimum at each order. Cell results do not depend on the
// thread count.
std::vector<SweepCell> conjecture_sweep(const SweepSpec& spec);

std::vector<PurityOrder> default_sweep_orders();

// figure data
struct Fig1Row {
    double mu, lambda, p2_norm;
};
struct Fig2Row {
    double mu, lambda, mu_c, theta_opt, linear_entropy, vn_entropy;
};
struct Fig3Row {
    double p, s_p;
    bool conjectured;  // false = random input sample
};

double fig1_value(double mu, double lambda);  // handles mu = 1 and lambda = 1 edges
std::vector<Fig1Row> fig1_rows(const std::vector<double>& lambdas,
                               const std::vector<double>& mus);
std::vector<Fig2Row> fig2_rows(const std::vector<double>& lambdas,
                               const std::vector<double>& mus);
std::vector<Fig3Row> fig3_rows(double mu, double lambda, const std::vector<double>& ps,
                               int n_random, std::uint64_t seed);

}  // namespace qcorr
