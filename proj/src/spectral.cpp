// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mollab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "mollab/errors.hpp"

namespace mollab::spectral {

namespace {

// FFTW planning is not thread-safe; execution through the new-array
// interface is. Plans are created once per shape with FFTW_UNALIGNED so
// they accept any caller buffer.
std::mutex g_plan_mutex;

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

PlanPair& plans_for(const std::vector<int>& shape) {
    static std::map<std::vector<int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find(shape);
    if (it != cache.end()) return it->second;

    std::size_t nreal = 1;
    for (int n : shape) nreal *= std::size_t(n);
    std::size_t nspec = spectrum_size(shape);
    double* rbuf = fftw_alloc_real(nreal);
    fftw_complex* cbuf = fftw_alloc_complex(nspec);
    PlanPair p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.r2c = fftw_plan_dft_r2c(int(shape.size()), shape.data(), rbuf, cbuf, flags);
    p.c2r = fftw_plan_dft_c2r(int(shape.size()), shape.data(), cbuf, rbuf, flags);
    fftw_free(rbuf);
    fftw_free(cbuf);
    if (!p.r2c || !p.c2r) throw SolverError("FFTW plan creation failed");
    return cache.emplace(shape, p).first->second;
}

void require_torus(const Field& field, const char* op) {
    if (!field.domain() || field.domain()->kind() != Domain::Kind::Torus)
        throw DomainKindError(std::string(op) + " requires a torus field");
}

}  // namespace

std::size_t spectrum_size(const std::vector<int>& shape) {
    std::size_t n = 1;
    for (std::size_t a = 0; a + 1 < shape.size(); ++a) n *= std::size_t(shape[a]);
    n *= std::size_t(shape.back() / 2 + 1);
    return n;
}

std::vector<Complex> forward(const std::vector<int>& shape, const double* in) {
    PlanPair& p = plans_for(shape);
    std::size_t nreal = 1;
    for (int n : shape) nreal *= std::size_t(n);
    std::vector<double> copy(in, in + nreal);
    std::vector<Complex> out(spectrum_size(shape));
    fftw_execute_dft_r2c(p.r2c, copy.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

void inverse(const std::vector<int>& shape, std::vector<Complex> spec,
             double* out) {
    PlanPair& p = plans_for(shape);
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(spec.data()), out);
    std::size_t nreal = 1;
    for (int n : shape) nreal *= std::size_t(n);
    double scale = 1.0 / double(nreal);
    for (std::size_t i = 0; i < nreal; ++i) out[i] *= scale;
}

void for_each_mode(const std::vector<int>& shape,
                   const std::function<void(const Mode&)>& fn) {
    const int d = int(shape.size());
    std::array<int, 3> idx{0, 0, 0};
    const int last = d - 1;
    const int nlast = shape[last] / 2 + 1;
    std::size_t bin = 0;
    Mode mode;
    // Iterate C-order: all full axes, then the halved last axis.
    std::function<void(int)> recurse = [&](int axis) {
        if (axis == last) {
            for (int i = 0; i < nlast; ++i) {
                mode.bin = bin++;
                mode.m = {0, 0, 0};
                mode.nyquist = {false, false, false};
                for (int a = 0; a < last; ++a) {
                    int n = shape[a];
                    int ia = idx[a];
                    mode.m[a] = (ia <= n / 2) ? ia : ia - n;
                    mode.nyquist[a] = (n % 2 == 0) && (ia == n / 2);
                }
                mode.m[last] = i;
                mode.nyquist[last] = (shape[last] % 2 == 0) && (i == shape[last] / 2);
                fn(mode);
            }
            return;
        }
        for (idx[axis] = 0; idx[axis] < shape[axis]; ++idx[axis]) recurse(axis + 1);
    };
    recurse(0);
}

namespace {

Field map_spectrum(const Field& field,
                   const std::function<void(const Mode&, const std::vector<double>&,
                                            Complex&)>& apply) {
    require_torus(field, "spectral transform");
    const auto& shape = field.shape();
    const auto& periods = field.domain()->periods();
    Field out(field.domain(), shape, field.components());
    out.set_positive_flag(false);
    for (int c = 0; c < field.components(); ++c) {
        auto spec = forward(shape, field.component(c));
        for_each_mode(shape, [&](const Mode& mode) {
            apply(mode, periods, spec[mode.bin]);
        });
        inverse(shape, std::move(spec), out.component(c));
    }
    return out;
}

}  // namespace

Field derivative(const Field& field, int axis) {
    if (axis < 0 || axis >= int(field.shape().size()))
        throw ParameterError("derivative axis out of range");
    return map_spectrum(field, [axis](const Mode& mode,
                                      const std::vector<double>& periods,
                                      Complex& v) {
        if (mode.nyquist[axis]) {
            v = 0.0;
            return;
        }
        double k = 2.0 * std::numbers::pi * mode.m[axis] / periods[axis];
        v *= Complex(0.0, k);
    });
}

Field gradient(const Field& scalar) {
    if (scalar.components() != 1)
        throw ShapeError("gradient expects a scalar field");
    const int d = int(scalar.shape().size());
    Field out(scalar.domain(), scalar.shape(), d);
    for (int a = 0; a < d; ++a) {
        Field da = derivative(scalar, a);
        std::copy(da.component(0), da.component(0) + scalar.num_points(),
                  out.component(a));
    }
    return out;
}

Field divergence(const Field& vec) {
    const int d = int(vec.shape().size());
    if (vec.components() != d)
        throw ShapeError("divergence expects a d-component field");
    Field out(vec.domain(), vec.shape(), 1);
    for (int a = 0; a < d; ++a) {
        Field da = derivative(field_component(vec, a), a);
        for (std::size_t i = 0; i < out.num_points(); ++i)
            out.at(0, i) += da.at(0, i);
    }
    return out;
}

double divergence_sup(const Field& vec) {
    Field div = divergence(vec);
    double sup = 0.0;
    for (std::size_t i = 0; i < div.num_points(); ++i)
        sup = std::max(sup, std::abs(div.at(0, i)));
    return sup;
}

Field dealias_23(const Field& field) {
    const auto& shape = field.shape();
    return map_spectrum(field, [&shape](const Mode& mode,
                                        const std::vector<double>&, Complex& v) {
        for (std::size_t a = 0; a < shape.size(); ++a) {
            if (std::abs(mode.m[a]) > shape[a] / 3) {
                v = 0.0;
                return;
            }
        }
    });
}

Field phase_shift(const Field& field, const std::array<double, 3>& h) {
    // Trig interpolation may undershoot, so the positivity flag does not
    // survive a non-commensurate shift.
    return map_spectrum(
        field, [&h](const Mode& mode, const std::vector<double>& periods,
                    Complex& v) {
            Complex factor(1.0, 0.0);
            for (std::size_t a = 0; a < periods.size(); ++a) {
                double kh = 2.0 * std::numbers::pi * mode.m[a] / periods[a] * h[a];
                if (mode.nyquist[a])
                    factor *= std::cos(kh);  // keeps the spectrum Hermitian
                else
                    factor *= Complex(std::cos(kh), std::sin(kh));
            }
            v *= factor;
        });
}

Field apply_real_symbol(const Field& field,
                        const std::function<double(const Mode&)>& symbol) {
    return map_spectrum(field, [&symbol](const Mode& mode,
                                         const std::vector<double>&, Complex& v) {
        v *= symbol(mode);
    });
}

Field inverse_laplacian(const Field& rhs) {
    return map_spectrum(rhs, [](const Mode& mode,
                                const std::vector<double>& periods, Complex& v) {
        double k2 = 0.0;
        for (std::size_t a = 0; a < periods.size(); ++a) {
            double k = 2.0 * std::numbers::pi * mode.m[a] / periods[a];
            k2 += k * k;
        }
        v = (k2 == 0.0) ? Complex(0.0, 0.0) : v / (-k2);
    });
}

}  // namespace mollab::spectral
