// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_MOLLIFY_HPP
#define MOLLAB_MOLLIFY_HPP

#include <array>
#include <utility>

#include "mollab/field.hpp"

namespace mollab {

/// Compactly supported unit-mass smoothing kernel omega_eps with support
/// radius exactly eps. Two profiles: the classical bump
/// exp(-1/(1-|x|^2)) and a Gaussian truncated at the unit ball.
class MollifierKernel {
public:
    enum class Profile { Bump, TruncatedGaussian };

    MollifierKernel(Profile profile, double epsilon, int dim);

    static Profile profile_from_name(const std::string& name);

    Profile profile() const { return profile_; }
    double epsilon() const { return eps_; }
    int dim() const { return dim_; }

    /// omega_eps(x): continuum normalization, zero outside |x| >= eps.
    double value(const std::array<double, 3>& x) const;
    /// grad omega_eps(x) (analytic).
    std::array<double, 3> gradient(const std::array<double, 3>& x) const;

    /// Unnormalized radial profile and its derivative at unit scale.
    double radial(double r) const;
    double radial_derivative(double r) const;

private:
    Profile profile_;
    double eps_;
    int dim_;
    double norm_;  ///< 1 / integral of the unit-scale profile over R^dim
};

/// f^eps = f * omega_eps. Torus fields convolve spectrally (the discrete
/// kernel is renormalized to unit lattice mass, so constants are fixed
/// points); bounded fields convolve by direct masked summation and the
/// validity mask shrinks by eps.
Field mollify(const Field& field, const MollifierKernel& kernel);

enum class GradPath {
    Auto,               ///< spectral on the torus, kernel samples on bounded
    Spectral,           ///< derivative of f^eps in Fourier space
    KernelConvolution,  ///< convolution with the analytic kernel gradient
};

/// grad(f^eps) as a d-component field.
Field grad_mollified(const Field& field, const MollifierKernel& kernel,
                     GradPath path = GradPath::Auto);

/// For positive rho: the pair ((rho^gamma)^eps, (rho^eps)^gamma) on the
/// common validity region.
std::pair<Field, Field> mollify_power(const Field& rho,
                                      const MollifierKernel& kernel,
                                      double gamma);

}  // namespace mollab

#endif
