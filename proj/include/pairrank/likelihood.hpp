#pragma once

#include <optional>
#include <span>
#include <string>

#include "pairrank/core.hpp"

namespace pairrank {

// log P(W | pi) = sum_ij w_ij [log pi_i - log(pi_i + pi_j)].
double log_likelihood(const ComparisonData& data, std::span<const double> pi);

// d log P / d pi_i = (1/pi_i) sum_j w_ij - sum_j (w_ij + w_ji) / (pi_i + pi_j).
double gradient_residual(const ComparisonData& data, std::span<const double> pi, Index i);

// Log-likelihood plus a logistic prior on every score:
// log_likelihood + sum_i [log pi_i - 2 log(pi_i + 1)].
double log_posterior(const ComparisonData& data, std::span<const double> pi);

double gradient_residual_map(const ComparisonData& data, std::span<const double> pi, Index i);

// Davidson ties model with a_ij = w_ij + t_ij / 2:
//   sum_ij a_ij log pi_i + (1/2) log(2 nu) sum_ij t_ij
//     - sum_ij a_ij log(pi_i + pi_j + 2 nu sqrt(pi_i pi_j)),
// sums over ordered pairs. nu must be positive unless the data hold no ties.
double log_likelihood_ties(const ComparisonData& data, std::span<const double> pi, double nu);

double gradient_residual_ties(const ComparisonData& data, std::span<const double> pi, double nu,
                              Index i);

// d/dnu of log_likelihood_ties.
double nu_residual(const ComparisonData& data, std::span<const double> pi, double nu);

// Adds a player `anchor_id` who wins once against and loses once to every
// other player. With the anchor held at strength 1 the likelihood of the
// augmented data equals the posterior of the original data.
ComparisonData with_fictitious_games(const ComparisonData& data,
                                     const std::string& anchor_id = "~anchor");

enum class ObjectiveKind { mle, map, ties_mle };

class Objective {
public:
    Objective(ObjectiveKind kind, const ComparisonData& data) : kind_(kind), data_(&data) {}

    ObjectiveKind kind() const noexcept { return kind_; }
    const ComparisonData& data() const noexcept { return *data_; }

    // Throws InvalidStrengths if kind is ties_mle and nu is absent.
    double operator()(std::span<const double> pi, std::optional<double> nu = std::nullopt) const;

private:
    ObjectiveKind kind_;
    const ComparisonData* data_;
};

}  // namespace pairrank
