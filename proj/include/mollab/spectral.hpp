// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_SPECTRAL_HPP
#define MOLLAB_SPECTRAL_HPP

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "mollab/field.hpp"

namespace mollab::spectral {

using Complex = std::complex<double>;

std::size_t spectrum_size(const std::vector<int>& shape);

/// Real-to-complex DFT of one lattice component (unnormalized, FFTW
/// half-spectrum layout: last axis of extent n/2 + 1).
std::vector<Complex> forward(const std::vector<int>& shape, const double* in);

/// Inverse of forward, normalized by 1/prod(shape). Consumes the spectrum.
void inverse(const std::vector<int>& shape, std::vector<Complex> spec,
             double* out);

/// Per-bin descriptor passed to mode visitors. `m` are integer frequencies
/// (negative on the full axes); `nyquist` marks axes sitting exactly on the
/// half-sampling frequency of an even extent.
struct Mode {
    std::size_t bin;
    std::array<int, 3> m;
    std::array<bool, 3> nyquist;
};

void for_each_mode(const std::vector<int>& shape,
                   const std::function<void(const Mode&)>& fn);

/// d/dx_axis via multiplication by i k. Nyquist modes are zeroed.
Field derivative(const Field& field, int axis);

/// Gradient of a scalar (d components) / divergence of a vector field.
Field gradient(const Field& scalar);
Field divergence(const Field& vec);

/// max over the lattice of |div v| computed spectrally.
double divergence_sup(const Field& vec);

/// Zeroes every mode with an axis frequency above floor(n/3) (2/3 rule).
Field dealias_23(const Field& field);

/// Exact trigonometric translate f(. + h); Nyquist axes pick up the
/// cosine factor so the result stays real.
Field phase_shift(const Field& field, const std::array<double, 3>& h);

/// Multiplies every component's spectrum by a real symbol given per mode.
Field apply_real_symbol(const Field& field,
                        const std::function<double(const Mode&)>& symbol);

/// Solves lap(p) = rhs with zero-mean convention (mean mode set to 0).
Field inverse_laplacian(const Field& rhs);

}  // namespace mollab::spectral

#endif
