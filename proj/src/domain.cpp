// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mollab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "mollab/errors.hpp"
#include "mollab/field.hpp"

namespace mollab {

namespace {

constexpr double kNormalFdStep = 1e-6;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Fraction of a cell of width w lying in {phi < c}, from the 1D
// linearization of the SDF across the cell center.
double cell_fraction_below(double phi, double c, double w) {
    return clamp01(0.5 + (c - phi) / w);
}

void verify_unit_gradient(const Domain& d) {
    const auto& bb = d.bbox();
    const int n = 48;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double x = bb[0] + (i + 0.5) * (bb[1] - bb[0]) / n;
            double y = bb[2] + (j + 0.5) * (bb[3] - bb[2]) / n;
            double phi = d.sdf(x, y);
            // Stay off the cut locus at depth r0: sample the middle of
            // the collar only.
            if (phi >= -0.95 * d.collar_radius() && phi <= -0.05 * d.collar_radius()) {
                auto g = d.sdf_gradient(x, y);
                double mag = std::hypot(g[0], g[1]);
                if (std::abs(mag - 1.0) > 1e-6)
                    throw ParameterError(
                        "signed-distance gradient is not unit length in the collar");
            }
        }
    }
}

}  // namespace

std::shared_ptr<const Domain> Domain::torus(std::vector<double> periods) {
    if (periods.empty() || periods.size() > 3)
        throw ParameterError("torus dimension must be 1, 2 or 3");
    for (double L : periods)
        if (!(L > 0.0)) throw ParameterError("torus periods must be positive");
    auto d = std::make_shared<Domain>();
    d->kind_ = Kind::Torus;
    d->dim_ = int(periods.size());
    d->id_ = "torus" + std::to_string(d->dim_);
    d->periods_ = std::move(periods);
    return d;
}

std::shared_ptr<const Domain> Domain::bounded2d(std::string id, SdfFn phi,
                                                Box2 bbox, double collar_radius) {
    if (!(collar_radius > 0.0)) throw ParameterError("collar radius must be positive");
    if (!(bbox[1] > bbox[0] && bbox[3] > bbox[2]))
        throw ParameterError("degenerate bounding box");
    auto d = std::make_shared<Domain>();
    d->kind_ = Kind::Bounded2D;
    d->dim_ = 2;
    d->id_ = std::move(id);
    d->phi_ = std::move(phi);
    d->bbox_ = bbox;
    d->r0_ = collar_radius;
    verify_unit_gradient(*d);
    return d;
}

std::shared_ptr<const Domain> Domain::disk() {
    return bounded2d(
        "disk", [](double x, double y) { return std::hypot(x, y) - 1.0; },
        Box2{-1.0, 1.0, -1.0, 1.0}, 0.5);
}

std::shared_ptr<const Domain> Domain::rounded_square() {
    // Square of half-width 0.8 with fillet radius 0.3: exact SDF of the
    // Minkowski sum of the inner box and a disk.
    const double half = 0.8;
    const double fillet = 0.3;
    const double inner = half - fillet;
    return bounded2d(
        "rounded_square",
        [inner, fillet](double x, double y) {
            double qx = std::abs(x) - inner;
            double qy = std::abs(y) - inner;
            double ox = std::max(qx, 0.0);
            double oy = std::max(qy, 0.0);
            return std::hypot(ox, oy) + std::min(std::max(qx, qy), 0.0) - fillet;
        },
        Box2{-1.0, 1.0, -1.0, 1.0}, fillet);
}

std::shared_ptr<const Domain> Domain::from_id(const std::string& id) {
    if (id == "torus1") return torus({1.0});
    if (id == "torus2") return torus({1.0, 1.0});
    if (id == "torus3") return torus({1.0, 1.0, 1.0});
    if (id == "disk") return disk();
    if (id == "rounded_square") return rounded_square();
    throw ParameterError("unknown domain id '" + id + "'");
}

double Domain::sdf(double x, double y) const {
    if (kind_ != Kind::Bounded2D)
        throw DomainKindError("sdf is defined for bounded domains only");
    return phi_(x, y);
}

std::array<double, 2> Domain::sdf_gradient(double x, double y) const {
    const double h = kNormalFdStep;
    double gx = (sdf(x + h, y) - sdf(x - h, y)) / (2.0 * h);
    double gy = (sdf(x, y + h) - sdf(x, y - h)) / (2.0 * h);
    return {gx, gy};
}

std::vector<double> Domain::spacing(const std::vector<int>& shape) const {
    if (int(shape.size()) != dim_)
        throw ShapeError("lattice rank does not match domain dimension");
    std::vector<double> h(shape.size());
    for (std::size_t a = 0; a < shape.size(); ++a) {
        if (shape[a] < 2) throw ParameterError("lattice extent must be >= 2");
        double extent = (kind_ == Kind::Torus) ? periods_[a]
                                               : bbox_[2 * a + 1] - bbox_[2 * a];
        h[a] = extent / shape[a];
    }
    return h;
}

double Domain::cell_volume(const std::vector<int>& shape) const {
    auto h = spacing(shape);
    double v = 1.0;
    for (double x : h) v *= x;
    return v;
}

std::vector<double> Domain::point(const std::vector<int>& shape,
                                  const std::vector<int>& index) const {
    auto h = spacing(shape);
    std::vector<double> x(shape.size());
    for (std::size_t a = 0; a < shape.size(); ++a) {
        x[a] = (kind_ == Kind::Torus) ? index[a] * h[a]
                                      : bbox_[2 * a] + (index[a] + 0.5) * h[a];
    }
    return x;
}

std::vector<std::uint8_t> interior_mask(const Domain& domain, double r,
                                        const std::vector<int>& shape) {
    if (r < 0.0) throw ParameterError("interior offset r must be nonnegative");
    std::size_t n = 1;
    for (int s : shape) n *= std::size_t(s);
    if (domain.kind() == Domain::Kind::Torus) {
        if (r != 0.0)
            throw ParameterError("torus has no boundary; interior_mask needs r = 0");
        return std::vector<std::uint8_t>(n, 1);
    }
    auto h = domain.spacing(shape);
    const auto& bb = domain.bbox();
    std::vector<std::uint8_t> mask(n, 0);
    std::size_t count = 0;
    for (int i = 0; i < shape[0]; ++i) {
        double x = bb[0] + (i + 0.5) * h[0];
        for (int j = 0; j < shape[1]; ++j) {
            double y = bb[2] + (j + 0.5) * h[1];
            bool inside = domain.sdf(x, y) < -r;
            mask[std::size_t(i) * shape[1] + j] = inside;
            count += inside;
        }
    }
    if (count == 0)
        throw EmptyRegionError("interior set Omega_r contains no lattice points");
    return mask;
}

std::array<double, 2> normal_field(const Domain& domain, double x, double y) {
    if (domain.kind() != Domain::Kind::Bounded2D)
        throw DomainKindError("normal_field is defined for bounded domains only");
    double phi = domain.sdf(x, y);
    if (!(phi > -domain.collar_radius() && phi < 0.0))
        throw OutOfCollarError("point is not inside the boundary collar");
    auto g = domain.sdf_gradient(x, y);
    double mag = std::hypot(g[0], g[1]);
    if (mag == 0.0) throw OutOfCollarError("vanishing SDF gradient");
    return {g[0] / mag, g[1] / mag};
}

namespace {

double point_magnitude(const Field& f, std::size_t i) {
    if (f.components() == 1) return std::abs(f.at(0, i));
    double s = 0.0;
    for (int c = 0; c < f.components(); ++c) s += f.at(c, i) * f.at(c, i);
    return std::sqrt(s);
}

}  // namespace

LayerAverage layer_average(const Domain& domain, const Field& field,
                           const LayerSpec& layer, double p) {
    if (domain.kind() != Domain::Kind::Bounded2D)
        throw DomainKindError("layer_average needs a bounded domain");
    if (!(layer.epsilon > 0.0 && layer.epsilon < domain.collar_radius()))
        throw ParameterError("layer width must satisfy 0 < eps < r0");
    if (!(p >= 1.0)) throw ParameterError("exponent p must be >= 1");
    if (field.domain().get() != &domain && field.domain()->id() != domain.id())
        throw InputError("field lattice belongs to a different domain");

    const auto& shape = field.shape();
    auto h = domain.spacing(shape);
    const double w = std::sqrt(h[0] * h[1]);
    const double cellv = h[0] * h[1];
    const auto& bb = domain.bbox();

    double integral = 0.0, area = 0.0;
    for (int i = 0; i < shape[0]; ++i) {
        double x = bb[0] + (i + 0.5) * h[0];
        for (int j = 0; j < shape[1]; ++j) {
            double y = bb[2] + (j + 0.5) * h[1];
            double phi = domain.sdf(x, y);
            double weight = cell_fraction_below(phi, 0.0, w) -
                            cell_fraction_below(phi, -layer.epsilon, w);
            if (weight <= 0.0) continue;
            std::size_t idx = std::size_t(i) * shape[1] + j;
            if (!field.valid_at(idx))
                throw InputError("field is not valid inside the boundary layer");
            integral += weight * std::pow(point_magnitude(field, idx), p) * cellv;
            area += weight * cellv;
        }
    }
    if (area == 0.0)
        throw EmptyRegionError("boundary layer is empty at this resolution");
    return {integral / area, integral, area};
}

namespace {

// Bilinear interpolation of a scalar field sampled at cell centers.
double interp_scalar(const Field& f, double x, double y) {
    const auto& shape = f.shape();
    const auto& bb = f.domain()->bbox();
    auto h = f.domain()->spacing(shape);
    double fx = (x - bb[0]) / h[0] - 0.5;
    double fy = (y - bb[2]) / h[1] - 0.5;
    fx = std::min(std::max(fx, 0.0), double(shape[0] - 1));
    fy = std::min(std::max(fy, 0.0), double(shape[1] - 1));
    int i0 = std::min(int(fx), shape[0] - 2);
    int j0 = std::min(int(fy), shape[1] - 2);
    double tx = fx - i0, ty = fy - j0;
    auto v = [&](int i, int j) { return f.at(0, std::size_t(i) * shape[1] + j); };
    return (1 - tx) * (1 - ty) * v(i0, j0) + tx * (1 - ty) * v(i0 + 1, j0) +
           (1 - tx) * ty * v(i0, j0 + 1) + tx * ty * v(i0 + 1, j0 + 1);
}

// Line integral of g over the level set {phi = level} by marching squares
// with linear edge interpolation. `phi_samples` holds the SDF at lattice
// points.
double level_set_integral(const Domain& domain, const Field& g,
                          const std::vector<double>& phi_samples, double level) {
    const auto& shape = g.shape();
    const auto& bb = domain.bbox();
    auto h = domain.spacing(shape);
    double total = 0.0;

    auto corner = [&](int i, int j) {
        return phi_samples[std::size_t(i) * shape[1] + j] - level;
    };
    auto px = [&](int i) { return bb[0] + (i + 0.5) * h[0]; };
    auto py = [&](int j) { return bb[2] + (j + 0.5) * h[1]; };

    for (int i = 0; i + 1 < shape[0]; ++i) {
        for (int j = 0; j + 1 < shape[1]; ++j) {
            double v00 = corner(i, j), v10 = corner(i + 1, j);
            double v01 = corner(i, j + 1), v11 = corner(i + 1, j + 1);
            int idx = (v00 < 0) | ((v10 < 0) << 1) | ((v11 < 0) << 2) |
                      ((v01 < 0) << 3);
            if (idx == 0 || idx == 15) continue;

            // Edge crossing points (linear interpolation).
            std::array<std::array<double, 2>, 4> pt;
            std::array<bool, 4> cut{};
            auto edge = [&](int e, double a, double b, double xa, double ya,
                            double xb, double yb) {
                if ((a < 0) != (b < 0)) {
                    double t = a / (a - b);
                    pt[e] = {xa + t * (xb - xa), ya + t * (yb - ya)};
                    cut[e] = true;
                }
            };
            edge(0, v00, v10, px(i), py(j), px(i + 1), py(j));          // bottom
            edge(1, v10, v11, px(i + 1), py(j), px(i + 1), py(j + 1));  // right
            edge(2, v01, v11, px(i), py(j + 1), px(i + 1), py(j + 1));  // top
            edge(3, v00, v01, px(i), py(j), px(i), py(j + 1));          // left

            auto add_segment = [&](int e1, int e2) {
                double dx = pt[e2][0] - pt[e1][0];
                double dy = pt[e2][1] - pt[e1][1];
                double len = std::hypot(dx, dy);
                if (len == 0.0) return;
                double mx = 0.5 * (pt[e1][0] + pt[e2][0]);
                double my = 0.5 * (pt[e1][1] + pt[e2][1]);
                total += len * interp_scalar(g, mx, my);
            };

            int ncut = cut[0] + cut[1] + cut[2] + cut[3];
            if (ncut == 2) {
                int first = -1, second = -1;
                for (int e = 0; e < 4; ++e)
                    if (cut[e]) (first < 0 ? first : second) = e;
                add_segment(first, second);
            } else if (ncut == 4) {
                // Saddle: resolve by the cell-center sign.
                double center = 0.25 * (v00 + v10 + v01 + v11);
                if ((center < 0) == (v00 < 0)) {
                    add_segment(0, 1);
                    add_segment(2, 3);
                } else {
                    add_segment(0, 3);
                    add_segment(1, 2);
                }
            }
        }
    }
    return total;
}

}  // namespace

std::pair<double, double> coarea_check(const Domain& domain, const Field& field,
                                       double r1, double r2) {
    if (domain.kind() != Domain::Kind::Bounded2D)
        throw DomainKindError("coarea_check needs a bounded domain");
    if (!(0.0 < r1 && r1 < r2 && r2 < domain.collar_radius()))
        throw ParameterError("coarea_check needs 0 < r1 < r2 < r0");
    if (field.components() != 1)
        throw ShapeError("coarea_check integrand must be scalar");

    const auto& shape = field.shape();
    auto h = domain.spacing(shape);
    const auto& bb = domain.bbox();
    const double w = std::sqrt(h[0] * h[1]);
    const double cellv = h[0] * h[1];

    std::vector<double> phi(field.num_points());
    double area_route = 0.0;
    for (int i = 0; i < shape[0]; ++i) {
        double x = bb[0] + (i + 0.5) * h[0];
        for (int j = 0; j < shape[1]; ++j) {
            double y = bb[2] + (j + 0.5) * h[1];
            std::size_t idx = std::size_t(i) * shape[1] + j;
            phi[idx] = domain.sdf(x, y);
            double weight = cell_fraction_below(phi[idx], -r1, w) -
                            cell_fraction_below(phi[idx], -r2, w);
            if (weight > 0.0) area_route += weight * field.at(0, idx) * cellv;
        }
    }

    int nshells = int(std::floor((r2 - r1) / std::min(h[0], h[1])));
    if (nshells < 4)
        throw ResolutionError("shell quadrature needs at least 4 shells");
    double dnu = (r2 - r1) / nshells;
    double shell_route = 0.0;
    for (int k = 0; k < nshells; ++k) {
        double nu = r1 + (k + 0.5) * dnu;
        shell_route += level_set_integral(domain, field, phi, -nu) * dnu;
    }
    return {area_route, shell_route};
}

}  // namespace mollab
