// weights.hpp
// Diversity indices derived from entropy profiles and the portfolio weight
// schemes built from them.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "centropy/entropy.hpp"

namespace centropy {

// ============================================================================
// Diversity indices
// ============================================================================

// Scalar summary of an entropy profile for one asset at one analysis
// configuration.  `value` always equals the profile aggregate; the
// short/long split at tau_m = window is informational.
struct DiversityIndex {
    EntropyKind kind = EntropyKind::kl;
    double value = 0.0;
    double short_side = 0.0; // components with tau <  window
    double long_side = 0.0;  // components with tau >= window
    std::string asset;
    std::size_t horizon_months = 0;
    std::int64_t volatility_window_seconds = 0;
};

// Folds a profile into an index.  `value` is the compensated sum of all
// components in cell order and is therefore independent of the split; the
// split sides are accumulated separately per generating window (tau is
// compared against each cell's own window).
DiversityIndex diversity_index(const EntropyProfile& profile);

// ============================================================================
// Weight vectors
// ============================================================================

enum class WeightScheme { kl, shannon, uniform, sharpe };

std::string to_string(WeightScheme scheme);
WeightScheme weight_scheme_from_string(const std::string& name);

// Portfolio weights in a fixed asset order.  Invariants: weights
// nonnegative and summing to 1 within 1e-9; asset ids unique.
struct WeightVector {
    WeightScheme scheme = WeightScheme::uniform;
    std::vector<std::string> assets;
    std::vector<double> values;

    std::size_t size() const noexcept { return assets.size(); }
};

struct WeightOptions {
    // When > 0, indices are floored at this value instead of raising a
    // degenerate-index error on zeros (relevant to the reciprocal scheme).
    double epsilon_floor = 0.0;
};

// Reciprocal-index weights w_i = (1/I_i) / sum_k (1/I_k): an asset with a
// smaller divergence from the reference receives more weight.  Invariant
// under scaling of all indices.  Preconditions: at least two assets with
// unique ids; every index positive unless an epsilon floor is configured.
// A zero index without a floor raises numeric_error.
WeightVector kl_weights(const std::vector<std::string>& assets,
                        const std::vector<double>& indices,
                        const WeightOptions& opts = {});

// Proportional weights w_i = I_i / sum_k I_k.  Zero indices are allowed;
// an all-zero vector raises numeric_error.  Invariant under scaling.
// Preconditions: at least two assets with unique ids; indices nonnegative.
WeightVector shannon_weights(const std::vector<std::string>& assets,
                             const std::vector<double>& indices);

// Equal weights 1/A.  Precondition: at least one asset, unique ids.
WeightVector uniform_weights(const std::vector<std::string>& assets);

} // namespace centropy
