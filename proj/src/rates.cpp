#include "pairrank/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pairrank/likelihood.hpp"
#include "pairrank/solvers.hpp"

namespace pairrank {

namespace {

constexpr double kRelativeStep = 1e-6;

void require_stationary(const ComparisonData& data, std::span<const double> pi_hat) {
    check_strengths(pi_hat, data.n_players());
    for (Index i = 0; i < data.n_players(); ++i) {
        const double won = data.games_won(i);
        const double scaled = won > 0.0 ? std::fabs(pi_hat[i] * gradient_residual(data, pi_hat, i)) / won
                                        : HUGE_VAL;
        if (!(scaled < kRateResidualTolerance)) {
            throw NotConverged("strengths are not a converged maximum-likelihood solution (player " +
                               data.id(i) + ")");
        }
    }
}

// Finite difference without the stationarity check.
double factor_unchecked(const ComparisonData& data, std::span<const double> pi_hat, Index i,
                        double alpha) {
    std::vector<double> probe(pi_hat.begin(), pi_hat.end());
    const double h = kRelativeStep * pi_hat[i];
    probe[i] = pi_hat[i] + h;
    const double up = update_alpha(data, probe, i, alpha);
    probe[i] = pi_hat[i] - h;
    const double down = update_alpha(data, probe, i, alpha);
    return (up - down) / (2.0 * h);
}

}  // namespace

double convergence_factor(const ComparisonData& data, std::span<const double> pi_hat, Index i,
                          double alpha) {
    require_stationary(data, pi_hat);
    return factor_unchecked(data, pi_hat, i, alpha);
}

double convergence_factor_zermelo(const ComparisonData& data, std::span<const double> pi_hat,
                                  Index i) {
    require_stationary(data, pi_hat);
    double total = 0.0;
    for (const auto& o : data.opponents(i)) {
        const double share = pi_hat[i] / (pi_hat[i] + pi_hat[o.index]);
        total += (o.wins + o.losses) * share * share;
    }
    return total / data.games_won(i);
}

double convergence_factor_max(const ComparisonData& data, std::span<const double> pi_hat,
                              double alpha) {
    return rate_report(data, pi_hat, alpha).lambda_max;
}

double dlambda_dalpha(const ComparisonData& data, std::span<const double> pi_hat, Index i,
                      double alpha) {
    const double lambda = convergence_factor(data, pi_hat, i, alpha);
    double won = 0.0;
    double weighted = 0.0;
    for (const auto& o : data.opponents(i)) {
        const double inv = 1.0 / (pi_hat[i] + pi_hat[o.index]);
        won += o.wins * inv;
        weighted += (alpha * o.wins + o.losses) * inv;
    }
    return won / weighted * (1.0 - lambda);
}

RateReport rate_report(const ComparisonData& data, std::span<const double> pi_hat, double alpha) {
    require_stationary(data, pi_hat);
    RateReport report;
    report.alpha = alpha;
    report.at.assign(pi_hat.begin(), pi_hat.end());
    report.lambda.resize(data.n_players());
    for (Index i = 0; i < data.n_players(); ++i) {
        report.lambda[i] = factor_unchecked(data, pi_hat, i, alpha);
        report.lambda_max = std::max(report.lambda_max, std::fabs(report.lambda[i]));
    }
    return report;
}

}  // namespace pairrank
