// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_SCALING_HPP
#define MOLLAB_SCALING_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "mollab/field.hpp"
#include "mollab/mollify.hpp"

namespace mollab {

/// Log-log least-squares fit of a measured quantity against epsilon.
/// Exactly-zero measurements are excluded from the regression and listed
/// in `zero_indices`.
struct ScalingFit {
    std::vector<double> epsilons;
    std::vector<double> values;
    std::vector<std::size_t> zero_indices;
    double exponent = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  ///< max |fit - data| in log space
    bool has_fit = false;   ///< at least two nonzero values

    bool all_zero() const { return zero_indices.size() == epsilons.size(); }
    void to_csv(std::ostream& os) const;  ///< columns: epsilon, value
};

ScalingFit fit_loglog(const std::vector<double>& epsilons,
                      const std::vector<double>& values);

/// || grad f^eps ||_p over the epsilon ladder. Bounded domains measure on
/// the interior set Omega_{2 eps_max}.
ScalingFit grad_scaling(const Field& field, double p,
                        const std::vector<double>& epsilons,
                        MollifierKernel::Profile profile =
                            MollifierKernel::Profile::Bump);

/// || (g1 g2)^eps - g1^eps g2^eps ||_p over the ladder. Requires the
/// Holder-compatible direction 1/p >= 1/p1 + 1/p2 (the defect is measured
/// in a norm no stronger than the product pairing). Constant inputs
/// short-circuit to exact zeros.
ScalingFit product_commutator(const Field& g1, const Field& g2, double p,
                              double p1, double p2,
                              const std::vector<double>& epsilons,
                              MollifierKernel::Profile profile =
                                  MollifierKernel::Profile::Bump);

/// Samplewise probe of the Taylor-remainder inequality
/// |(a+b)^g - a^g - g a^(g-1) b|  <=  C (|b|^g + (a+b)^(g-2) b^2).
struct TaylorDefectReport {
    double max_ratio = 0.0;
    std::size_t argmax = 0;
    std::size_t violations = 0;  ///< non-finite left/right sides
    std::size_t count = 0;
};

TaylorDefectReport taylor_defect_check(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       double gamma);

/// || (rho^gamma)^eps - (rho^eps)^gamma ||_inf over the ladder.
ScalingFit power_commutator_scaling(const Field& rho, double gamma,
                                    const std::vector<double>& epsilons,
                                    MollifierKernel::Profile profile =
                                        MollifierKernel::Profile::Bump);

/// Dyadic ladder eps_j = start / 2^j, j = 0..count-1.
std::vector<double> dyadic_epsilons(double start, int count);

}  // namespace mollab

#endif
