// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mollab/roughfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mollab/errors.hpp"
#include "mollab/spectral.hpp"

namespace mollab {

Field lacunary_scalar(DomainPtr domain, const std::vector<int>& shape,
                      const RoughSpec& spec) {
    if (!domain || domain->kind() != Domain::Kind::Torus)
        throw DomainKindError("lacunary generator is a torus construct");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw ParameterError("alpha must lie in (0, 1)");
    if (spec.octaves < 0) throw ParameterError("octaves must be >= 0");

    const int d = domain->dim();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> uang(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> ucos(-1.0, 1.0);

    struct Wave {
        std::array<int, 3> m;
        double phase;
        double amp;
    };
    std::vector<Wave> waves;
    for (int j = 0; j <= spec.octaves; ++j) {
        const int freq = 1 << j;
        Wave w;
        w.phase = uphase(rng);
        w.amp = spec.amplitude * std::pow(2.0, -spec.alpha * j);
        w.m = {0, 0, 0};
        if (d == 1) {
            w.m[0] = freq;
        } else {
            for (int attempt = 0;; ++attempt) {
                if (attempt > 64)
                    throw ParameterError("failed to draw a lacunary direction");
                if (d == 2) {
                    double a = uang(rng);
                    w.m[0] = int(std::lround(freq * std::cos(a)));
                    w.m[1] = int(std::lround(freq * std::sin(a)));
                } else {
                    double z = ucos(rng);
                    double a = uang(rng);
                    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                    w.m[0] = int(std::lround(freq * r * std::cos(a)));
                    w.m[1] = int(std::lround(freq * r * std::sin(a)));
                    w.m[2] = int(std::lround(freq * z));
                }
                if (w.m[0] != 0 || w.m[1] != 0 || w.m[2] != 0) break;
            }
        }
        for (int a = 0; a < d; ++a)
            if (std::abs(w.m[a]) >= shape[a] / 2)
                throw ResolutionError(
                    "lacunary octave exceeds the lattice Nyquist frequency");
        waves.push_back(w);
    }

    const auto& L = domain->periods();
    Field out(domain, shape, 1);
    for (std::size_t i = 0; i < out.num_points(); ++i) {
        auto x = out.point(i);
        double v = 0.0;
        for (const auto& w : waves) {
            double arg = w.phase;
            for (int a = 0; a < d; ++a)
                arg += 2.0 * std::numbers::pi * w.m[a] * x[a] / L[a];
            v += w.amp * std::cos(arg);
        }
        out.at(0, i) = v;
    }
    return out;
}

Field bounded_density(const Field& base, double m, double M) {
    if (!(m > 0.0)) throw ParameterError("lower bound m must be positive");
    if (!(M > m)) throw ParameterError("upper bound M must exceed m");
    base.check_finite("bounded_density");

    double sup = 0.0;
    for (std::size_t i = 0; i < base.num_points(); ++i)
        if (base.valid_at(i))
            for (int c = 0; c < base.components(); ++c)
                sup = std::max(sup, std::abs(base.at(c, i)));

    const double mid = 0.5 * (m + M);
    const double scale = sup == 0.0 ? 0.0 : 0.5 * (M - m) / sup;
    Field out = base;
    for (int c = 0; c < base.components(); ++c)
        for (std::size_t i = 0; i < base.num_points(); ++i)
            out.at(c, i) = std::clamp(mid + scale * base.at(c, i), m, M);
    out.set_positive_flag(true);
    return out;
}

Field leray_project(const Field& u) {
    if (!u.domain() || u.domain()->kind() != Domain::Kind::Torus)
        throw DomainKindError("Leray projection is a torus construct");
    const int d = u.domain()->dim();
    if (d < 2 || d > 3)
        throw ParameterError("Leray projection needs a 2D or 3D torus");
    if (u.components() != d)
        throw ShapeError("Leray projection expects a d-component field");

    const auto& shape = u.shape();
    const auto& L = u.domain()->periods();
    std::vector<std::vector<spectral::Complex>> spec(d);
    for (int c = 0; c < d; ++c)
        spec[c] = spectral::forward(shape, u.component(c));

    spectral::for_each_mode(shape, [&](const spectral::Mode& mode) {
        double k[3] = {0.0, 0.0, 0.0};
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) {
            k[a] = 2.0 * std::numbers::pi * mode.m[a] / L[a];
            k2 += k[a] * k[a];
        }
        if (k2 == 0.0) return;  // mean mode untouched
        spectral::Complex kdotu(0.0, 0.0);
        for (int a = 0; a < d; ++a) kdotu += k[a] * spec[a][mode.bin];
        for (int a = 0; a < d; ++a) spec[a][mode.bin] -= k[a] * kdotu / k2;
    });

    Field out(u.domain(), shape, d);
    for (int c = 0; c < d; ++c)
        spectral::inverse(shape, std::move(spec[c]), out.component(c));
    return out;
}

}  // namespace mollab
