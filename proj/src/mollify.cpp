// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mollab/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mollab/errors.hpp"
#include "mollab/spectral.hpp"

namespace mollab {

namespace {

// Composite Simpson of fn over [0, 1]; the integrands are smooth and
// vanish at r = 1, so a fixed fine rule reaches ~1e-13.
double simpson01(const std::function<double(double)>& fn) {
    const int n = 4096;
    const double h = 1.0 / n;
    double s = fn(0.0) + fn(1.0);
    for (int i = 1; i < n; ++i) s += fn(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

bool all_samples_equal(const Field& f) {
    const double v0 = f.data()[0];
    const std::size_t n = f.num_points() * std::size_t(f.components());
    for (std::size_t i = 1; i < n; ++i)
        if (f.data()[i] != v0) return false;
    return true;
}

}  // namespace

MollifierKernel::MollifierKernel(Profile profile, double epsilon, int dim)
    : profile_(profile), eps_(epsilon), dim_(dim) {
    if (!(epsilon > 0.0)) throw ParameterError("kernel scale must be positive");
    if (dim < 1 || dim > 3) throw ParameterError("kernel dimension must be 1..3");
    auto shell = [dim](double r) {
        if (dim == 1) return 2.0;
        if (dim == 2) return 2.0 * std::numbers::pi * r;
        return 4.0 * std::numbers::pi * r * r;
    };
    double mass = simpson01([&](double r) { return radial(r) * shell(r); });
    norm_ = 1.0 / mass;
}

MollifierKernel::Profile MollifierKernel::profile_from_name(
    const std::string& name) {
    if (name == "bump") return Profile::Bump;
    if (name == "truncated_gaussian") return Profile::TruncatedGaussian;
    throw ParameterError("unknown kernel profile '" + name + "'");
}

double MollifierKernel::radial(double r) const {
    if (r >= 1.0) return 0.0;
    if (profile_ == Profile::Bump) return std::exp(-1.0 / (1.0 - r * r));
    const double sigma2 = 1.0 / 9.0;
    return std::exp(-r * r / (2.0 * sigma2));
}

double MollifierKernel::radial_derivative(double r) const {
    if (r >= 1.0) return 0.0;
    if (profile_ == Profile::Bump) {
        double om = 1.0 - r * r;
        return radial(r) * (-2.0 * r / (om * om));
    }
    const double sigma2 = 1.0 / 9.0;
    return radial(r) * (-r / sigma2);
}

double MollifierKernel::value(const std::array<double, 3>& x) const {
    double r2 = 0.0;
    for (int a = 0; a < dim_; ++a) r2 += x[a] * x[a];
    double r = std::sqrt(r2) / eps_;
    if (r >= 1.0) return 0.0;
    return norm_ * radial(r) / std::pow(eps_, dim_);
}

std::array<double, 3> MollifierKernel::gradient(
    const std::array<double, 3>& x) const {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    double r2 = 0.0;
    for (int a = 0; a < dim_; ++a) r2 += x[a] * x[a];
    double rad = std::sqrt(r2);
    double r = rad / eps_;
    if (r >= 1.0 || rad == 0.0) return g;
    double dp = norm_ * radial_derivative(r) / std::pow(eps_, dim_ + 1);
    for (int a = 0; a < dim_; ++a) g[a] = dp * x[a] / rad;
    return g;
}

namespace {

void check_resolvable(const Field& field, const MollifierKernel& kernel) {
    if (kernel.dim() != int(field.shape().size()))
        throw ShapeError("kernel dimension does not match the lattice");
    auto h = field.domain()->spacing(field.shape());
    double hmax = *std::max_element(h.begin(), h.end());
    if (kernel.epsilon() < 2.0 * hmax)
        throw UnderResolutionError(
            "kernel scale below two lattice spacings is unresolvable");
    if (field.domain()->kind() == Domain::Kind::Torus) {
        const auto& L = field.domain()->periods();
        double lmin = *std::min_element(L.begin(), L.end());
        if (!(kernel.epsilon() < 0.5 * lmin))
            throw ParameterError("kernel scale must be below half the period");
    }
}

// Kernel sampled on the (wrapped) torus lattice, renormalized to exact
// unit lattice mass. Returns the sample array and the rescale factor
// applied (also used for the analytic-gradient samples so both stay
// consistent).
std::pair<std::vector<double>, double> torus_kernel_samples(
    const Field& field, const MollifierKernel& kernel) {
    const auto& shape = field.shape();
    const auto& L = field.domain()->periods();
    const int d = int(shape.size());
    std::vector<double> w(field.num_points());
    double cellv = field.domain()->cell_volume(shape);
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto x = field.point(i);
        std::array<double, 3> y{0.0, 0.0, 0.0};
        for (int a = 0; a < d; ++a) {
            double v = x[a];
            if (v > 0.5 * L[a]) v -= L[a];  // minimal image
            y[a] = v;
        }
        w[i] = kernel.value(y);
        sum += w[i];
    }
    double scale = 1.0 / (sum * cellv);
    for (double& v : w) v *= scale;
    return {std::move(w), scale};
}

// Stencil of lattice offsets covering the kernel support, with quadrature
// weights normalized so they sum exactly to one.
struct Stencil {
    std::vector<std::array<int, 2>> offsets;
    std::vector<double> weights;        // for mollify
    std::vector<std::array<double, 2>> grad_weights;  // for grad_mollified
};

Stencil bounded_stencil(const Field& field, const MollifierKernel& kernel) {
    auto h = field.domain()->spacing(field.shape());
    const double eps = kernel.epsilon();
    int rx = int(std::ceil(eps / h[0]));
    int ry = int(std::ceil(eps / h[1]));
    Stencil st;
    double cellv = h[0] * h[1];
    double sum = 0.0;
    for (int di = -rx; di <= rx; ++di) {
        for (int dj = -ry; dj <= ry; ++dj) {
            std::array<double, 3> y{di * h[0], dj * h[1], 0.0};
            double w = kernel.value(y) * cellv;
            if (w <= 0.0) continue;
            st.offsets.push_back({di, dj});
            st.weights.push_back(w);
            auto g = kernel.gradient(y);
            st.grad_weights.push_back({g[0] * cellv, g[1] * cellv});
        }
    }
    if (st.weights.empty())
        throw UnderResolutionError("kernel support holds no lattice points");
    for (double w : st.weights) sum += w;
    for (std::size_t k = 0; k < st.weights.size(); ++k) {
        st.weights[k] /= sum;
        st.grad_weights[k][0] /= sum;
        st.grad_weights[k][1] /= sum;
    }
    return st;
}

Field bounded_convolve(const Field& field, const Stencil& st, bool use_grad) {
    const auto& shape = field.shape();
    const int n0 = shape[0], n1 = shape[1];
    const int comps = field.components();
    const int out_comps = use_grad ? 2 * comps : comps;
    Field out(field.domain(), shape, out_comps);
    std::vector<std::uint8_t> mask(field.num_points(), 0);

    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
            std::size_t idx = std::size_t(i) * n1 + j;
            bool ok = true;
            for (std::size_t k = 0; k < st.offsets.size() && ok; ++k) {
                int si = i - st.offsets[k][0];
                int sj = j - st.offsets[k][1];
                ok = si >= 0 && si < n0 && sj >= 0 && sj < n1 &&
                     field.valid_at(std::size_t(si) * n1 + sj);
            }
            if (!ok) continue;
            mask[idx] = 1;
            for (int c = 0; c < comps; ++c) {
                if (!use_grad) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < st.offsets.size(); ++k) {
                        int si = i - st.offsets[k][0];
                        int sj = j - st.offsets[k][1];
                        acc += st.weights[k] * field.at(c, std::size_t(si) * n1 + sj);
                    }
                    out.at(c, idx) = acc;
                } else {
                    double gx = 0.0, gy = 0.0;
                    for (std::size_t k = 0; k < st.offsets.size(); ++k) {
                        int si = i - st.offsets[k][0];
                        int sj = j - st.offsets[k][1];
                        double v = field.at(c, std::size_t(si) * n1 + sj);
                        gx += st.grad_weights[k][0] * v;
                        gy += st.grad_weights[k][1] * v;
                    }
                    out.at(2 * c, idx) = gx;
                    out.at(2 * c + 1, idx) = gy;
                }
            }
        }
    }
    out.set_validity(std::move(mask));
    return out;
}

}  // namespace

Field mollify(const Field& field, const MollifierKernel& kernel) {
    check_resolvable(field, kernel);

    // A constant is a fixed point of any unit-mass kernel; returning it
    // unchanged keeps that identity exact instead of FFT-roundoff close.
    if (all_samples_equal(field)) return field;

    if (field.domain()->kind() == Domain::Kind::Torus) {
        auto [w, scale] = torus_kernel_samples(field, kernel);
        (void)scale;
        const auto& shape = field.shape();
        auto wspec = spectral::forward(shape, w.data());
        const double cellv = field.domain()->cell_volume(shape);
        Field out(field.domain(), shape, field.components());
        for (int c = 0; c < field.components(); ++c) {
            auto spec = spectral::forward(shape, field.component(c));
            for (std::size_t b = 0; b < spec.size(); ++b)
                spec[b] *= wspec[b].real() * cellv;
            spectral::inverse(shape, std::move(spec), out.component(c));
        }
        out.set_positive_flag(field.positive_flag());
        return out;
    }

    Stencil st = bounded_stencil(field, kernel);
    Field out = bounded_convolve(field, st, /*use_grad=*/false);
    out.set_positive_flag(field.positive_flag());
    return out;
}

Field grad_mollified(const Field& field, const MollifierKernel& kernel,
                     GradPath path) {
    check_resolvable(field, kernel);
    const bool torus = field.domain()->kind() == Domain::Kind::Torus;
    if (path == GradPath::Auto)
        path = torus ? GradPath::Spectral : GradPath::KernelConvolution;

    if (field.components() != 1)
        throw ShapeError("grad_mollified expects a scalar field");

    if (path == GradPath::Spectral) {
        if (!torus)
            throw DomainKindError("spectral gradient path needs a torus");
        return spectral::gradient(mollify(field, kernel));
    }

    if (torus) {
        // Circular convolution with the sampled analytic kernel gradient,
        // rescaled by the same factor that renormalizes the kernel mass.
        auto [w, scale] = torus_kernel_samples(field, kernel);
        (void)w;
        const auto& shape = field.shape();
        const auto& L = field.domain()->periods();
        const int d = int(shape.size());
        const double cellv = field.domain()->cell_volume(shape);
        Field out(field.domain(), shape, d);
        auto fspec = spectral::forward(shape, field.component(0));
        for (int a = 0; a < d; ++a) {
            std::vector<double> gw(field.num_points());
            for (std::size_t i = 0; i < gw.size(); ++i) {
                auto x = field.point(i);
                std::array<double, 3> y{0.0, 0.0, 0.0};
                for (int b = 0; b < d; ++b) {
                    double v = x[b];
                    if (v > 0.5 * L[b]) v -= L[b];
                    y[b] = v;
                }
                gw[i] = kernel.gradient(y)[a] * scale;
            }
            auto gspec = spectral::forward(shape, gw.data());
            auto spec = fspec;
            for (std::size_t b = 0; b < spec.size(); ++b)
                spec[b] *= gspec[b] * cellv;
            spectral::inverse(shape, std::move(spec), out.component(a));
        }
        return out;
    }

    Stencil st = bounded_stencil(field, kernel);
    return bounded_convolve(field, st, /*use_grad=*/true);
}

std::pair<Field, Field> mollify_power(const Field& rho,
                                      const MollifierKernel& kernel,
                                      double gamma) {
    if (!(gamma > 1.0)) throw ParameterError("gamma must exceed 1");
    if (!rho.positive_flag())
        throw PositivityError("mollify_power needs a positive-flagged density");
    rho.check_finite("mollify_power");

    Field rho_gamma = field_power(rho, gamma);
    Field lhs = mollify(rho_gamma, kernel);   // (rho^gamma)^eps
    Field reps = mollify(rho, kernel);        // rho^eps
    Field rhs = field_power(reps, gamma);     // (rho^eps)^gamma

    auto common = mask_intersection(lhs, rhs);
    lhs.set_validity(common);
    rhs.set_validity(common);
    return {std::move(lhs), std::move(rhs)};
}

}  // namespace mollab
