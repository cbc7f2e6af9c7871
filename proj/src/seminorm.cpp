// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mollab/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>

#include "mollab/errors.hpp"
#include "mollab/parallel.hpp"

namespace mollab {

namespace {

double magnitude(const std::vector<double>& h) {
    double s = 0.0;
    for (double v : h) s += v * v;
    return std::sqrt(s);
}

std::vector<std::vector<double>> unit_directions(int dim, int n) {
    std::vector<std::vector<double>> dirs;
    if (dim == 1) {
        dirs = {{1.0}, {-1.0}};
    } else if (dim == 2) {
        for (int k = 0; k < n; ++k) {
            double a = 2.0 * std::numbers::pi * k / n;
            dirs.push_back({std::cos(a), std::sin(a)});
        }
    } else {
        // Fibonacci sphere
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < n; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / n;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            dirs.push_back({r * std::cos(ga * k), r * std::sin(ga * k), z});
        }
    }
    return dirs;
}

}  // namespace

ShiftSet ShiftSet::dyadic(const Domain& domain, double delta,
                          int num_magnitudes, int num_directions) {
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    if (num_magnitudes < 2)
        throw ParameterError("shift set needs at least 2 magnitudes");
    const int d = domain.dim();
    int min_dirs = d == 1 ? 2 : 4;
    if (d > 1 && num_directions < min_dirs)
        throw ParameterError("shift set needs at least 4 directions in 2D/3D");
    ShiftSet s;
    s.delta = delta;
    auto dirs = unit_directions(d, d == 1 ? 2 : num_directions);
    const double top = delta * (1.0 - 1e-12);  // keep |h| strictly below delta
    for (int j = 0; j < num_magnitudes; ++j) {
        double mag = top / double(1 << j);
        for (const auto& dir : dirs) {
            std::vector<double> h(d);
            for (int a = 0; a < d; ++a) h[a] = mag * dir[a];
            s.displacements.push_back(std::move(h));
        }
    }
    s.validate(d);
    return s;
}

ShiftSet ShiftSet::lattice_dyadic(const Domain& domain,
                                  const std::vector<int>& shape, double delta,
                                  int num_magnitudes, int num_directions) {
    ShiftSet raw = dyadic(domain, delta, num_magnitudes, num_directions);
    auto spacing = domain.spacing(shape);
    ShiftSet s;
    s.delta = delta;
    std::set<std::vector<long>> seen;
    for (const auto& h : raw.displacements) {
        std::vector<long> off(h.size());
        std::vector<double> snapped(h.size());
        bool zero = true;
        for (std::size_t a = 0; a < h.size(); ++a) {
            off[a] = long(std::round(h[a] / spacing[a]));
            snapped[a] = off[a] * spacing[a];
            zero = zero && off[a] == 0;
        }
        if (zero || magnitude(snapped) >= delta) continue;
        if (seen.insert(off).second) s.displacements.push_back(std::move(snapped));
    }
    s.validate(domain.dim());
    return s;
}

ShiftSet ShiftSet::full_lattice(const Domain& domain,
                                const std::vector<int>& shape) {
    if (domain.kind() != Domain::Kind::Torus)
        throw DomainKindError("full_lattice shift set is a torus construct");
    auto spacing = domain.spacing(shape);
    const int d = domain.dim();
    ShiftSet s;
    std::vector<int> idx(d, 0);
    double maxmag = 0.0;
    for (;;) {
        bool zero = std::all_of(idx.begin(), idx.end(), [](int i) { return i == 0; });
        if (!zero) {
            std::vector<double> h(d);
            for (int a = 0; a < d; ++a) {
                int m = idx[a] * 2 > shape[a] ? idx[a] - shape[a] : idx[a];
                h[a] = m * spacing[a];  // minimal image
            }
            maxmag = std::max(maxmag, magnitude(h));
            s.displacements.push_back(std::move(h));
        }
        int a = d - 1;
        while (a >= 0 && ++idx[a] == shape[a]) idx[a--] = 0;
        if (a < 0) break;
    }
    s.delta = maxmag * (1.0 + 1e-9);
    s.validate(d);
    return s;
}

ShiftSet ShiftSet::restricted(double new_delta) const {
    if (!(new_delta > 0.0 && new_delta <= delta))
        throw ParameterError("restriction window must satisfy 0 < d <= delta");
    ShiftSet s;
    s.delta = new_delta;
    for (const auto& h : displacements)
        if (magnitude(h) < new_delta) s.displacements.push_back(h);
    return s;
}

void ShiftSet::validate(int dim) const {
    if (displacements.empty()) throw ParameterError("empty shift set");
    std::set<long> mags;
    std::set<std::vector<long>> dirs;
    for (const auto& h : displacements) {
        if (int(h.size()) != dim) throw ShapeError("shift rank mismatch");
        double m = magnitude(h);
        if (!(m > 0.0 && m < delta))
            throw ParameterError("shift magnitudes must satisfy 0 < |h| < delta");
        mags.insert(std::lround(std::log2(m) * 1024.0));
        std::vector<long> dir(h.size());
        for (std::size_t a = 0; a < h.size(); ++a)
            dir[a] = std::lround(h[a] / m * 4096.0);
        dirs.insert(std::move(dir));
    }
    std::size_t min_dirs = dim == 1 ? 2 : 4;
    if (mags.size() < 2 || dirs.size() < min_dirs)
        throw ParameterError(
            "shift set coverage too small (needs 2 magnitudes and enough directions)");
}

void SeminormReport::to_csv(std::ostream& os) const {
    os << "hx,hy,habs,diff_norm,ratio\n";
    for (const auto& row : per_shift) {
        os << row.h[0] << "," << (row.h.size() > 1 ? row.h[1] : 0.0) << ","
           << row.magnitude << "," << row.diff_norm << "," << row.ratio << "\n";
    }
}

SeminormReport seminorm(const Field& field, double beta, double p,
                        const ShiftSet& shifts,
                        const std::vector<std::uint8_t>& region) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw ParameterError("beta must lie in (0, 1]");
    shifts.validate(int(field.shape().size()));

    if (field.domain()->kind() == Domain::Kind::Bounded2D) {
        // Enforce d(region, boundary) > 2 delta literally via the SDF.
        const auto& reg = region.empty() ? field.validity() : region;
        if (reg.empty())
            throw MarginError("bounded-domain seminorm needs a masked region");
        for (std::size_t i = 0; i < reg.size(); ++i) {
            if (!reg[i]) continue;
            auto x = field.point(i);
            if (field.domain()->sdf(x[0], x[1]) > -2.0 * shifts.delta)
                throw MarginError("region violates the 2*delta boundary margin");
        }
    }

    SeminormReport report;
    report.beta = beta;
    report.p = p;
    report.delta = shifts.delta;
    report.beta_is_one = beta == 1.0;
    report.per_shift.resize(shifts.displacements.size());

    parallel_for(shifts.displacements.size(), [&](std::size_t k) {
        const auto& h = shifts.displacements[k];
        Field diff = field_sub(shift(field, h), field);
        double m = magnitude(h);
        double norm = lp_norm(diff, p, region);
        report.per_shift[k] = {h, m, norm, std::pow(m, -beta) * norm};
    });

    report.value = 0.0;
    report.argmax_shift.assign(field.shape().size(), 0.0);
    for (const auto& row : report.per_shift) {
        if (row.ratio > report.value) {
            report.value = row.ratio;
            report.argmax_shift = row.h;
        }
    }
    return report;
}

double time_seminorm(const TimeSeriesField& fields, double beta, double p,
                     double q, const ShiftSet& shifts,
                     const std::vector<std::uint8_t>& region) {
    fields.validate();
    const bool qinf = std::isinf(q);
    if (!qinf && !(q >= 1.0)) throw ParameterError("q must be >= 1 or inf");
    if (!qinf && fields.frames.size() < 2)
        throw ResolutionError("finite-q time seminorm needs at least 2 frames");

    std::vector<double> values(fields.frames.size());
    for (std::size_t k = 0; k < fields.frames.size(); ++k)
        values[k] = seminorm(fields.frames[k], beta, p, shifts, region).value;

    if (qinf) return *std::max_element(values.begin(), values.end());

    // Trapezoid over the sample times, constant-extended to [0, T].
    const auto& t = fields.times;
    double acc = std::pow(values.front(), q) * (t.front() - 0.0);
    for (std::size_t k = 0; k + 1 < values.size(); ++k)
        acc += 0.5 * (std::pow(values[k], q) + std::pow(values[k + 1], q)) *
               (t[k + 1] - t[k]);
    acc += std::pow(values.back(), q) * (fields.t_final - t.back());
    return std::pow(acc, 1.0 / q);
}

std::vector<std::pair<double, double>> vanishing_probe(
    const TimeSeriesField& fields, double beta, double p, double q,
    const std::vector<double>& deltas,
    const std::vector<std::uint8_t>& region) {
    if (deltas.size() < 2)
        throw ParameterError("vanishing probe needs at least two deltas");
    for (std::size_t k = 0; k + 1 < deltas.size(); ++k)
        if (!(deltas[k] > deltas[k + 1]))
            throw ParameterError("deltas must be strictly decreasing");
    const Field& f0 = fields.frames.at(0);
    auto spacing = f0.domain()->spacing(f0.shape());
    double hmax = *std::max_element(spacing.begin(), spacing.end());
    if (deltas.back() < 2.0 * hmax)
        throw ResolutionError("smallest delta is below two lattice spacings");

    // One master family; each window is a restriction, so the table is
    // monotone by construction.
    int levels = 2 + int(std::ceil(std::log2(deltas.front() / deltas.back())));
    levels = std::max(levels, 3);
    const Domain& dom = *f0.domain();
    ShiftSet master =
        dom.kind() == Domain::Kind::Torus
            ? ShiftSet::dyadic(dom, deltas.front(), levels, 8)
            : ShiftSet::lattice_dyadic(dom, f0.shape(), deltas.front(), levels, 8);

    std::vector<std::pair<double, double>> table;
    table.reserve(deltas.size());
    for (double d : deltas) {
        ShiftSet sub = master.restricted(d);
        table.emplace_back(d, time_seminorm(fields, beta, p, q, sub, region));
    }
    return table;
}

double probe_slope(const std::vector<std::pair<double, double>>& table) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& [d, v] : table) {
        if (v <= 0.0) continue;
        double x = std::log(d), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n == 0) return std::numeric_limits<double>::infinity();
    if (n < 2) return 0.0;
    double denom = double(n) * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (double(n) * sxy - sx * sy) / denom;
}

}  // namespace mollab
