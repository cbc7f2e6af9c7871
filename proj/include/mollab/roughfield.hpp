// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_ROUGHFIELD_HPP
#define MOLLAB_ROUGHFIELD_HPP

#include <cstdint>

#include "mollab/field.hpp"

namespace mollab {

/// Parameters of the lacunary (Weierstrass-type) generator. The series
/// f = amplitude * sum_j 2^(-alpha j) cos(2 pi 2^j k_j . x + phi_j) has
/// Holder exponent exactly alpha, which is what makes the scaling
/// experiments trustworthy. Scaling runs want octaves >= 3.
struct RoughSpec {
    double alpha;
    int octaves;
    std::uint64_t seed = 0;
    double amplitude = 1.0;
};

/// Seed-deterministic rough scalar on a torus lattice. Throws a
/// resolution error when the top octave exceeds the lattice Nyquist.
Field lacunary_scalar(DomainPtr domain, const std::vector<int>& shape,
                      const RoughSpec& spec);

/// Affine squash of `base` into [m, M] (centered so base = 0 maps to the
/// midpoint). Preserves the regularity exponent; output is
/// positive-flagged and clamped to [m, M] against roundoff.
Field bounded_density(const Field& base, double m, double M);

/// Spectral projection onto divergence-free fields (mean mode untouched).
/// Torus, d in {2, 3}.
Field leray_project(const Field& u);

}  // namespace mollab

#endif
