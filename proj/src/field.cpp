// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mollab/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mollab/errors.hpp"
#include "mollab/spectral.hpp"

namespace mollab {

Field::Field(DomainPtr domain, std::vector<int> shape, int components,
             double fill)
    : domain_(std::move(domain)), shape_(std::move(shape)),
      components_(components) {
    if (!domain_) throw ParameterError("field needs a domain");
    if (int(shape_.size()) != domain_->dim())
        throw ShapeError("lattice rank does not match domain dimension");
    if (components_ < 1) throw ShapeError("component count must be >= 1");
    npoints_ = 1;
    for (int n : shape_) {
        if (n < 2) throw ParameterError("lattice extent must be >= 2");
        npoints_ *= std::size_t(n);
    }
    data_.assign(npoints_ * std::size_t(components_), fill);
}

void Field::set_validity(std::vector<std::uint8_t> mask) {
    if (!mask.empty() && mask.size() != npoints_)
        throw ShapeError("validity mask size mismatch");
    validity_ = std::move(mask);
}

std::size_t Field::num_valid() const {
    if (validity_.empty()) return npoints_;
    return std::size_t(std::count(validity_.begin(), validity_.end(), 1));
}

std::array<double, 3> Field::point(std::size_t i) const {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    const int d = int(shape_.size());
    std::size_t rem = i;
    for (int a = d - 1; a >= 0; --a) {
        int idx = int(rem % std::size_t(shape_[a]));
        rem /= std::size_t(shape_[a]);
        if (domain_->kind() == Domain::Kind::Torus) {
            x[a] = idx * (domain_->periods()[a] / shape_[a]);
        } else {
            const auto& bb = domain_->bbox();
            x[a] = bb[2 * a] + (idx + 0.5) * (bb[2 * a + 1] - bb[2 * a]) / shape_[a];
        }
    }
    return x;
}

std::vector<int> Field::unflatten(std::size_t i) const {
    std::vector<int> idx(shape_.size());
    for (int a = int(shape_.size()) - 1; a >= 0; --a) {
        idx[a] = int(i % std::size_t(shape_[a]));
        i /= std::size_t(shape_[a]);
    }
    return idx;
}

std::size_t Field::flatten(const std::vector<int>& idx) const {
    std::size_t i = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a)
        i = i * std::size_t(shape_[a]) + std::size_t(idx[a]);
    return i;
}

void Field::check_finite(const std::string& context) const {
    for (double v : data_)
        if (!std::isfinite(v))
            throw ParameterError(context + ": non-finite sample");
    if (positive_) {
        for (std::size_t i = 0; i < npoints_; ++i) {
            if (!valid_at(i)) continue;
            for (int c = 0; c < components_; ++c)
                if (!(at(c, i) > 0.0))
                    throw PositivityError(context + ": positive-flagged field has a"
                                          " non-positive sample");
        }
    }
}

Field make_field(DomainPtr domain, std::vector<int> shape, int components,
                 const std::function<double(int, const std::array<double, 3>&)>& fn) {
    Field f(std::move(domain), std::move(shape), components);
    for (int c = 0; c < components; ++c)
        for (std::size_t i = 0; i < f.num_points(); ++i)
            f.at(c, i) = fn(c, f.point(i));
    return f;
}

Field make_scalar(DomainPtr domain, std::vector<int> shape,
                  const std::function<double(const std::array<double, 3>&)>& fn) {
    return make_field(std::move(domain), std::move(shape), 1,
                      [&fn](int, const std::array<double, 3>& x) { return fn(x); });
}

void TimeSeriesField::validate() const {
    if (times.size() != frames.size())
        throw InputError("time series: times/frames length mismatch");
    if (frames.empty()) throw InputError("time series has no frames");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (k > 0 && !(times[k] > times[k - 1]))
            throw InputError("time series times must be strictly increasing");
        if (times[k] < 0.0 || times[k] > t_final)
            throw InputError("time series times must lie in [0, T]");
        if (frames[k].shape() != frames[0].shape() ||
            frames[k].components() != frames[0].components())
            throw ShapeError("time series frames disagree on lattice or components");
    }
}

namespace {

// Classifies h against the lattice: integer offsets per axis or nothing.
bool commensurate_offsets(const Field& f, const std::vector<double>& h,
                          std::vector<long>& off) {
    auto spacing = f.domain()->spacing(f.shape());
    off.assign(h.size(), 0);
    for (std::size_t a = 0; a < h.size(); ++a) {
        double s = h[a] / spacing[a];
        double r = std::round(s);
        if (std::abs(s - r) > 1e-9 * std::max(1.0, std::abs(s))) return false;
        off[a] = long(r);
    }
    return true;
}

}  // namespace

Field shift(const Field& field, const std::vector<double>& h) {
    const int d = int(field.shape().size());
    if (int(h.size()) != d) throw ShapeError("shift displacement rank mismatch");

    std::vector<long> off;
    bool commensurate = commensurate_offsets(field, h, off);
    const bool torus = field.domain()->kind() == Domain::Kind::Torus;

    if (!commensurate) {
        if (!torus)
            throw UnsupportedShiftError(
                "bounded domains accept lattice-commensurate shifts only");
        std::array<double, 3> hh{0.0, 0.0, 0.0};
        for (int a = 0; a < d; ++a) hh[a] = h[a];
        return spectral::phase_shift(field, hh);
    }

    double hmag = 0.0;
    for (double v : h) hmag += v * v;
    hmag = std::sqrt(hmag);
    if (!torus && hmag >= field.domain()->collar_radius())
        throw MarginError("shift exceeds the validity margin of the mask");

    const auto& shape = field.shape();
    Field out(field.domain(), shape, field.components());
    out.set_positive_flag(field.positive_flag());
    std::vector<std::uint8_t> mask;
    if (!torus) mask.assign(field.num_points(), 0);

    std::vector<int> idx(d), src(d);
    for (std::size_t i = 0; i < field.num_points(); ++i) {
        idx = field.unflatten(i);
        bool in_range = true;
        for (int a = 0; a < d; ++a) {
            long s = idx[a] + off[a];
            if (torus) {
                s %= shape[a];
                if (s < 0) s += shape[a];
            } else if (s < 0 || s >= shape[a]) {
                in_range = false;
                break;
            }
            src[a] = int(s);
        }
        if (!in_range) continue;
        std::size_t j = field.flatten(src);
        if (!torus) {
            if (!field.valid_at(j)) continue;
            mask[i] = 1;
        }
        for (int c = 0; c < field.components(); ++c) out.at(c, i) = field.at(c, j);
    }
    if (!torus) {
        bool any = std::any_of(mask.begin(), mask.end(),
                               [](std::uint8_t m) { return m != 0; });
        if (!any) throw MarginError("shift leaves no valid samples");
        out.set_validity(std::move(mask));
    }
    return out;
}

double lp_norm(const Field& field, double p,
               const std::vector<std::uint8_t>& region) {
    if (!(p >= 1.0)) throw ParameterError("lp_norm needs p >= 1");
    if (!region.empty() && region.size() != field.num_points())
        throw ShapeError("region mask size mismatch");

    const double cellv = field.domain()->cell_volume(field.shape());
    const bool use_region = !region.empty();
    double acc = 0.0, sup = 0.0;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < field.num_points(); ++i) {
        if (use_region) {
            if (!region[i]) continue;
            if (!field.valid_at(i))
                throw InputError("region includes points outside field validity");
        } else if (!field.valid_at(i)) {
            continue;
        }
        ++counted;
        double mag;
        if (field.components() == 1) {
            mag = std::abs(field.at(0, i));
        } else {
            double s = 0.0;
            for (int c = 0; c < field.components(); ++c)
                s += field.at(c, i) * field.at(c, i);
            mag = std::sqrt(s);
        }
        if (std::isinf(p))
            sup = std::max(sup, mag);
        else
            acc += std::pow(mag, p) * cellv;
    }
    if (counted == 0) throw EmptyRegionError("lp_norm over an empty region");
    return std::isinf(p) ? sup : std::pow(acc, 1.0 / p);
}

double TestFunctionSpec::space(const std::array<double, 3>& x,
                               const Domain& domain) const {
    double v = 1.0;
    for (std::size_t a = 0; a < modes.size(); ++a) {
        double arg = 2.0 * std::numbers::pi * modes[a] * x[a] / domain.periods()[a];
        v *= use_sin[a] ? std::sin(arg) : std::cos(arg);
    }
    return v;
}

std::array<double, 3> TestFunctionSpec::space_gradient(
    const std::array<double, 3>& x, const Domain& domain) const {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    for (std::size_t a = 0; a < modes.size(); ++a) {
        double v = 1.0;
        for (std::size_t b = 0; b < modes.size(); ++b) {
            double k = 2.0 * std::numbers::pi * modes[b] / domain.periods()[b];
            double arg = k * x[b];
            if (a == b)
                v *= k * (use_sin[b] ? std::cos(arg) : -std::sin(arg));
            else
                v *= use_sin[b] ? std::sin(arg) : std::cos(arg);
        }
        g[a] = v;
    }
    return g;
}

double TestFunctionSpec::bump(double t) const {
    double s = (2.0 * t - (t0 + t1)) / (t1 - t0);
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

double TestFunctionSpec::bump_dt(double t) const {
    double s = (2.0 * t - (t0 + t1)) / (t1 - t0);
    if (std::abs(s) >= 1.0) return 0.0;
    double om = 1.0 - s * s;
    return bump(t) * (-2.0 * s / (om * om)) * (2.0 / (t1 - t0));
}

std::pair<double, double> weak_form_residual(const TimeSeriesField& rho,
                                             const TimeSeriesField& u,
                                             const TimeSeriesField& P,
                                             const TestFunctionSpec& test) {
    rho.validate();
    u.validate();
    P.validate();
    const Field& r0f = rho.frames[0];
    if (r0f.domain()->kind() != Domain::Kind::Torus)
        throw DomainKindError("weak_form_residual is a torus operation");
    if (!(test.t0 > 0.0 && test.t1 < rho.t_final && test.t0 < test.t1))
        throw SupportError("test function support must lie inside (0, T)");
    const Domain& dom = *r0f.domain();
    const int d = dom.dim();
    if (int(test.modes.size()) != d || int(test.use_sin.size()) != d)
        throw ShapeError("test function rank mismatch");

    const double cellv = dom.cell_volume(r0f.shape());
    const std::size_t n = r0f.num_points();

    std::vector<double> mass_t(rho.times.size()), mom_t(rho.times.size());
    for (std::size_t k = 0; k < rho.times.size(); ++k) {
        const double t = rho.times[k];
        const Field& rf = rho.frames[k];
        const Field& uf = u.frames[k];
        const Field& pf = P.frames[k];
        double bt = test.bump(t), bdt = test.bump_dt(t);
        double mass = 0.0, mom = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto x = rf.point(i);
            double sp = test.space(x, dom);
            auto gr = test.space_gradient(x, dom);
            double rv = rf.at(0, i);
            double ugrad = 0.0, ue = 0.0, egrad = 0.0;
            for (int a = 0; a < d; ++a) {
                ugrad += uf.at(a, i) * gr[a];
                ue += uf.at(a, i) * test.direction[a];
                egrad += test.direction[a] * gr[a];
            }
            mass += rv * (sp * bdt + ugrad * bt);
            mom += rv * ue * sp * bdt + rv * ue * ugrad * bt +
                   pf.at(0, i) * egrad * bt;
        }
        mass_t[k] = mass * cellv;
        mom_t[k] = mom * cellv;
    }

    auto trapz = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t k = 0; k + 1 < v.size(); ++k)
            s += 0.5 * (v[k] + v[k + 1]) * (rho.times[k + 1] - rho.times[k]);
        return s;
    };
    return {trapz(mass_t), trapz(mom_t)};
}

namespace {

void require_pair_shapes(const Field& rho, const Field& u) {
    if (rho.components() != 1) throw ShapeError("density must be scalar");
    if (u.components() != int(u.shape().size()))
        throw ShapeError("velocity must have one component per axis");
    if (rho.shape() != u.shape())
        throw ShapeError("density and velocity lattice mismatch");
}

}  // namespace

double energy_incompressible(const Field& rho, const Field& u) {
    require_pair_shapes(rho, u);
    if (!rho.positive_flag())
        throw PositivityError("density must be positive-flagged");
    const double cellv = rho.domain()->cell_volume(rho.shape());
    double e = 0.0;
    for (std::size_t i = 0; i < rho.num_points(); ++i) {
        if (!rho.valid_at(i) || !u.valid_at(i)) continue;
        double u2 = 0.0;
        for (int c = 0; c < u.components(); ++c) u2 += u.at(c, i) * u.at(c, i);
        e += rho.at(0, i) * u2;
    }
    return e * cellv;
}

double energy_compressible(const Field& rho, const Field& u, double gamma) {
    require_pair_shapes(rho, u);
    if (!rho.positive_flag())
        throw PositivityError("density must be positive-flagged");
    if (!(gamma > 1.0)) throw ParameterError("gamma must exceed 1");
    const double cellv = rho.domain()->cell_volume(rho.shape());
    double e = 0.0;
    for (std::size_t i = 0; i < rho.num_points(); ++i) {
        if (!rho.valid_at(i) || !u.valid_at(i)) continue;
        double u2 = 0.0;
        for (int c = 0; c < u.components(); ++c) u2 += u.at(c, i) * u.at(c, i);
        double r = rho.at(0, i);
        e += 0.5 * r * u2 + std::pow(r, gamma) / (gamma - 1.0);
    }
    return e * cellv;
}

std::vector<std::uint8_t> mask_intersection(const Field& a, const Field& b) {
    if (!a.has_mask() && !b.has_mask()) return {};
    std::vector<std::uint8_t> m(a.num_points());
    for (std::size_t i = 0; i < a.num_points(); ++i)
        m[i] = a.valid_at(i) && b.valid_at(i);
    return m;
}

namespace {

Field binary_op(const Field& a, const Field& b,
                const std::function<double(double, double)>& op) {
    if (a.shape() != b.shape() || a.components() != b.components())
        throw ShapeError("field shape mismatch");
    Field out(a.domain(), a.shape(), a.components());
    for (int c = 0; c < a.components(); ++c)
        for (std::size_t i = 0; i < a.num_points(); ++i)
            out.at(c, i) = op(a.at(c, i), b.at(c, i));
    out.set_validity(mask_intersection(a, b));
    return out;
}

}  // namespace

Field field_add(const Field& a, const Field& b) {
    return binary_op(a, b, [](double x, double y) { return x + y; });
}

Field field_sub(const Field& a, const Field& b) {
    return binary_op(a, b, [](double x, double y) { return x - y; });
}

Field field_scale(const Field& a, double c) {
    Field out = a;
    for (std::size_t i = 0; i < out.num_points() * std::size_t(out.components());
         ++i)
        out.data()[i] *= c;
    out.set_positive_flag(a.positive_flag() && c > 0.0);
    return out;
}

Field field_multiply(const Field& a, const Field& b) {
    if (a.components() != 1 || b.components() != 1)
        throw ShapeError("field_multiply expects scalar fields");
    Field out = binary_op(a, b, [](double x, double y) { return x * y; });
    out.set_positive_flag(a.positive_flag() && b.positive_flag());
    return out;
}

Field field_power(const Field& a, double gamma) {
    if (a.components() != 1) throw ShapeError("field_power expects a scalar field");
    Field out(a.domain(), a.shape(), 1);
    for (std::size_t i = 0; i < a.num_points(); ++i) {
        double v = a.at(0, i);
        if (a.valid_at(i) && !(v > 0.0))
            throw PositivityError("field_power needs positive samples");
        out.at(0, i) = a.valid_at(i) ? std::pow(v, gamma) : 0.0;
    }
    out.set_validity(a.validity());
    out.set_positive_flag(true);
    return out;
}

Field field_component(const Field& a, int c) {
    if (c < 0 || c >= a.components()) throw ShapeError("component out of range");
    Field out(a.domain(), a.shape(), 1);
    std::copy(a.component(c), a.component(c) + a.num_points(), out.component(0));
    out.set_validity(a.validity());
    return out;
}

}  // namespace mollab
