#pragma once

#include <span>
#include <vector>

#include "pairrank/core.hpp"

namespace pairrank {

// Asymptotic convergence factors of the alpha family at a fitted MLE.
//
// lambda_i(alpha) is the derivative of the single-coordinate update map
// pi_i -> pi_i' with respect to pi_i, all other strengths held at the MLE. It
// lies in (-1, 1) at a valid MLE and can be negative for small alpha, which
// means the coordinate overshoots and oscillates. lambda_max = max_i |lambda_i|
// governs the per-sweep decay of the error.
struct RateReport {
    double alpha = 0.0;
    std::vector<double> lambda;
    double lambda_max = 0.0;
    std::vector<double> at;
};

// Relative stationarity threshold for pi_hat: |pi_i g_i| / sum_j w_ij.
inline constexpr double kRateResidualTolerance = 1e-8;

// Central finite difference of update_alpha in pi_i with step 1e-6 pi_i.
// Throws NotConverged if pi_hat is not stationary.
double convergence_factor(const ComparisonData& data, std::span<const double> pi_hat, Index i,
                          double alpha);

// Closed form at alpha = 1: (1 / sum_j w_ij) sum_j (w_ij + w_ji) (pi_i / (pi_i + pi_j))^2.
double convergence_factor_zermelo(const ComparisonData& data, std::span<const double> pi_hat,
                                  Index i);

double convergence_factor_max(const ComparisonData& data, std::span<const double> pi_hat,
                              double alpha);

// d lambda_i / d alpha
//   = [sum_j w_ij/(pi_i+pi_j)] / [sum_j (alpha w_ij + w_ji)/(pi_i+pi_j)] * (1 - lambda_i(alpha)).
double dlambda_dalpha(const ComparisonData& data, std::span<const double> pi_hat, Index i,
                      double alpha);

RateReport rate_report(const ComparisonData& data, std::span<const double> pi_hat, double alpha);

}  // namespace pairrank
