// entropy.hpp
// Entropy measures on cluster-duration distributions: relative entropy of
// an empirical distribution against a model reference, plus the plain
// Shannon entropy, with per-cell component breakdowns.

#pragma once

#include <cstddef>
#include <map>

#include "centropy/clusters.hpp"

namespace centropy {

enum class EntropyKind { kl, shannon };

// Per-cell breakdown of an entropy measure plus its aggregate.
//
// For kind == kl the component of cell c is p'_c * ln(p'_c / q_c), where p'
// is the input distribution renormalized over the shared support, and the
// aggregate is the compensated sum of the components (Gibbs: >= 0 up to
// rounding).  `dropped_mass` is the input mass removed by the support
// alignment.
//
// For kind == shannon the component is -p_c * ln p_c and the aggregate is
// bounded by ln(number of support cells).
struct EntropyProfile {
    EntropyKind kind = EntropyKind::kl;
    std::map<DurationCell, double> components;
    double aggregate = 0.0;
    double dropped_mass = 0.0;
};

struct KlOptions {
    // Largest input-distribution mass fraction that may fall outside the
    // reference support before the comparison is refused.
    double max_dropped_mass = 0.01;
};

// Single relative-entropy term p * ln(p / q) with the conventions
// 0 * ln(0/q) = 0 and p > 0, q = 0 -> support_error.
// Preconditions: 0 <= p <= 1 and 0 <= q <= 1.
double kl_component(double p, double q);

// Relative entropy of `p` against the reference `q` on their shared
// support.  Mass of `p` on cells absent from `q` is dropped and reported;
// if it exceeds opts.max_dropped_mass a support_error carrying the dropped
// fraction is raised.  The retained part of `p` is renormalized; `q` is
// used as-is.
// Preconditions: both distributions non-empty with masses summing to 1
// within 1e-6.
EntropyProfile kl_cluster_entropy(const DurationDistribution& p,
                                  const DurationDistribution& q,
                                  const KlOptions& opts = {});

// Single surprise term -p ln p with the convention 0 ln 0 = 0.
// Precondition: 0 <= p <= 1.
double shannon_component(double p);

// Shannon entropy of a duration distribution, component -m ln m per cell.
// Precondition: non-empty with masses summing to 1 within 1e-6.
EntropyProfile shannon_cluster_entropy(const DurationDistribution& dist);

// ============================================================================
// Closed forms for power-law duration distributions
// ============================================================================

// Relative entropy rate between two power-law duration densities
// p_i(tau) ~ tau^-alpha_i (tau >= 1):
//     ln((alpha1-1)/(alpha2-1)) - (alpha1-alpha2)/(alpha1-1).
// Preconditions: alpha1 > 1 and alpha2 > 1.
double kl_closed_form_alpha(double alpha1, double alpha2);

// The same quantity parameterized by Hurst exponents through alpha = 2 - H.
// Equal exponents give exactly 0.  Preconditions: 0 < h1 < 1, 0 < h2 < 1.
double kl_closed_form_hurst(double h1, double h2);

// Numerical-quadrature counterpart of kl_closed_form_alpha: integrates
// p1 * ln(p1/p2) over [1, tau_max] plus the analytic continuation of the
// integrand over (tau_max, infinity), without ever simplifying the
// integrand symbolically.  Split point tau_max only partitions the domain.
// Raises numeric_error if the quadrature does not converge.
// Preconditions: alpha1 > 1, alpha2 > 1, tau_max > 1.
double kl_integral_oracle(double alpha1, double alpha2, double tau_max);

} // namespace centropy
