// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_SEMINORM_HPP
#define MOLLAB_SEMINORM_HPP

#include <iosfwd>
#include <vector>

#include "mollab/field.hpp"

namespace mollab {

/// Finite family of displacements probing the sup over |h| < delta.
/// Constructors build dyadic magnitude ladders with uniformly spread
/// directions; `full_lattice` enumerates every nonzero lattice offset
/// (minimal-image displacement).
struct ShiftSet {
    std::vector<std::vector<double>> displacements;
    double delta = 0.0;

    static ShiftSet dyadic(const Domain& domain, double delta,
                           int num_magnitudes, int num_directions);
    /// As dyadic but snapped to lattice multiples (required on bounded
    /// domains, and for exact index-rotation shifts on the torus).
    static ShiftSet lattice_dyadic(const Domain& domain,
                                   const std::vector<int>& shape, double delta,
                                   int num_magnitudes, int num_directions);
    static ShiftSet full_lattice(const Domain& domain,
                                 const std::vector<int>& shape);

    /// Subset with |h| < new_delta (new_delta <= delta); keeps ordering.
    ShiftSet restricted(double new_delta) const;

    void validate(int dim) const;
};

struct ShiftRow {
    std::vector<double> h;
    double magnitude;
    double diff_norm;  ///< || f(.+h) - f ||_p
    double ratio;      ///< |h|^(-beta) * diff_norm
};

/// Estimate of V^{beta,p}_delta. The finite shift family makes this a
/// certified lower bound of the continuum sup, never an upper bound.
struct SeminormReport {
    double value = 0.0;
    std::vector<double> argmax_shift;
    std::vector<ShiftRow> per_shift;
    double beta = 0.0, p = 0.0, delta = 0.0;
    bool lower_bound_only = true;
    bool beta_is_one = false;

    /// CSV columns: hx, hy, |h|, diff_norm, ratio.
    void to_csv(std::ostream& os) const;
};

/// max over the shift set of |h|^(-beta) ||f(.+h) - f||_Lp(region).
/// Bounded domains require d(region, boundary) > 2 delta.
SeminormReport seminorm(const Field& field, double beta, double p,
                        const ShiftSet& shifts,
                        const std::vector<std::uint8_t>& region = {});

/// L^q-in-time aggregation of per-frame seminorm values (trapezoid over
/// the sample times, constant-extended to [0, T]); q = inf is the max.
double time_seminorm(const TimeSeriesField& fields, double beta, double p,
                     double q, const ShiftSet& shifts,
                     const std::vector<std::uint8_t>& region = {});

/// The time seminorm restricted to |h| < delta for each delta in a
/// decreasing list. Restriction of one master shift set makes the table
/// monotone by construction.
std::vector<std::pair<double, double>> vanishing_probe(
    const TimeSeriesField& fields, double beta, double p, double q,
    const std::vector<double>& deltas,
    const std::vector<std::uint8_t>& region = {});

/// Log-log slope of a (delta, value) table; zero values are skipped.
/// Returns 0 slope for fewer than two usable rows, +inf if every value
/// is exactly zero (already vanished).
double probe_slope(const std::vector<std::pair<double, double>>& table);

}  // namespace mollab

#endif
