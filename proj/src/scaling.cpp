// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mollab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mollab/domain.hpp"
#include "mollab/errors.hpp"
#include "mollab/parallel.hpp"

namespace mollab {

void ScalingFit::to_csv(std::ostream& os) const {
    os << "epsilon,value\n";
    for (std::size_t i = 0; i < epsilons.size(); ++i)
        os << epsilons[i] << "," << values[i] << "\n";
}

ScalingFit fit_loglog(const std::vector<double>& epsilons,
                      const std::vector<double>& values) {
    if (epsilons.size() != values.size() || epsilons.empty())
        throw ParameterError("fit needs matching nonempty epsilon/value lists");
    for (std::size_t i = 0; i + 1 < epsilons.size(); ++i)
        if (!(epsilons[i] > epsilons[i + 1]))
            throw ParameterError("epsilons must be strictly decreasing");

    ScalingFit fit;
    fit.epsilons = epsilons;
    fit.values = values;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0) throw ParameterError("fit values must be >= 0");
        if (values[i] == 0.0) {
            fit.zero_indices.push_back(i);
            continue;
        }
        double x = std::log(epsilons[i]), y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) {
        double denom = double(n) * sxx - sx * sx;
        fit.exponent = (double(n) * sxy - sx * sy) / denom;
        fit.intercept = (sy - fit.exponent * sx) / double(n);
        fit.has_fit = true;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] == 0.0) continue;
            double pred = fit.intercept + fit.exponent * std::log(epsilons[i]);
            fit.residual = std::max(fit.residual,
                                    std::abs(pred - std::log(values[i])));
        }
    }
    return fit;
}

std::vector<double> dyadic_epsilons(double start, int count) {
    if (!(start > 0.0) || count < 1) throw ParameterError("bad epsilon ladder");
    std::vector<double> eps(count);
    for (int j = 0; j < count; ++j) eps[j] = start / double(1 << j);
    return eps;
}

namespace {

// Region the norms are measured on: whole torus, or the interior set
// Omega_{2 eps_max} on bounded domains (the lemma's Omega_delta with
// delta = 2 eps).
std::vector<std::uint8_t> measurement_region(const Field& field,
                                             const std::vector<double>& eps) {
    if (field.domain()->kind() == Domain::Kind::Torus) return {};
    double emax = *std::max_element(eps.begin(), eps.end());
    return interior_mask(*field.domain(), 2.0 * emax, field.shape());
}

bool is_constant(const Field& f) {
    const double v0 = f.data()[0];
    const std::size_t n = f.num_points() * std::size_t(f.components());
    for (std::size_t i = 1; i < n; ++i)
        if (f.data()[i] != v0) return false;
    return true;
}

}  // namespace

ScalingFit grad_scaling(const Field& field, double p,
                        const std::vector<double>& epsilons,
                        MollifierKernel::Profile profile) {
    auto region = measurement_region(field, epsilons);
    const int d = int(field.shape().size());
    std::vector<double> vals(epsilons.size());
    parallel_for(epsilons.size(), [&](std::size_t i) {
        MollifierKernel kernel(profile, epsilons[i], d);
        Field g = grad_mollified(field, kernel);
        vals[i] = lp_norm(g, p, region);
    });
    return fit_loglog(epsilons, vals);
}

ScalingFit product_commutator(const Field& g1, const Field& g2, double p,
                              double p1, double p2,
                              const std::vector<double>& epsilons,
                              MollifierKernel::Profile profile) {
    if (g1.shape() != g2.shape())
        throw ShapeError("commutator inputs need a common lattice");
    if (g1.components() != 1 || g2.components() != 1)
        throw ShapeError("commutator inputs must be scalar");
    double lhs = std::isinf(p) ? 0.0 : 1.0 / p;
    double rhs = (std::isinf(p1) ? 0.0 : 1.0 / p1) +
                 (std::isinf(p2) ? 0.0 : 1.0 / p2);
    if (lhs + 1e-12 < rhs)
        throw ParameterError(
            "exponents must satisfy 1/p >= 1/p1 + 1/p2 (Holder pairing)");

    // The commutator of a constant vanishes identically; skip the
    // quadrature noise and report exact zeros.
    if (is_constant(g1) || is_constant(g2)) {
        std::vector<double> zeros(epsilons.size(), 0.0);
        return fit_loglog(epsilons, zeros);
    }

    auto region = measurement_region(g1, epsilons);
    Field prod = field_multiply(g1, g2);
    const int d = int(g1.shape().size());
    std::vector<double> vals(epsilons.size());
    parallel_for(epsilons.size(), [&](std::size_t i) {
        MollifierKernel kernel(profile, epsilons[i], d);
        Field defect = field_sub(mollify(prod, kernel),
                                 field_multiply(mollify(g1, kernel),
                                                mollify(g2, kernel)));
        std::vector<std::uint8_t> reg = region;
        if (defect.has_mask() && reg.empty()) reg = defect.validity();
        vals[i] = lp_norm(defect, p, reg);
    });
    return fit_loglog(epsilons, vals);
}

TaylorDefectReport taylor_defect_check(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       double gamma) {
    if (a.size() != b.size() || a.empty())
        throw ParameterError("sample lists must match and be nonempty");
    if (!(gamma > 1.0)) throw ParameterError("gamma must exceed 1");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0.0)) throw ParameterError("samples need a > 0");
        if (!(a[i] + b[i] > 0.0)) throw ParameterError("samples need a + b > 0");
    }

    TaylorDefectReport report;
    report.count = a.size();
    const bool quadratic = gamma == 2.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] == 0.0) continue;  // remainder is exactly zero
        double L, R;
        if (quadratic) {
            // (a+b)^2 - a^2 - 2ab == b^2 identically; the direct form
            // loses the identity to cancellation.
            L = b[i] * b[i];
            R = L + L;
        } else {
            double ab = a[i] + b[i];
            L = std::abs(std::pow(ab, gamma) -
                         (std::pow(a[i], gamma) +
                          gamma * std::pow(a[i], gamma - 1.0) * b[i]));
            R = std::pow(std::abs(b[i]), gamma) +
                std::pow(ab, gamma - 2.0) * b[i] * b[i];
        }
        if (!std::isfinite(L) || !std::isfinite(R) || R == 0.0) {
            ++report.violations;
            continue;
        }
        double ratio = L / R;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.argmax = i;
        }
    }
    return report;
}

ScalingFit power_commutator_scaling(const Field& rho, double gamma,
                                    const std::vector<double>& epsilons,
                                    MollifierKernel::Profile profile) {
    const int d = int(rho.shape().size());
    auto region = measurement_region(rho, epsilons);
    std::vector<double> vals(epsilons.size());
    parallel_for(epsilons.size(), [&](std::size_t i) {
        MollifierKernel kernel(profile, epsilons[i], d);
        auto [lhs, rhs] = mollify_power(rho, kernel, gamma);
        Field defect = field_sub(lhs, rhs);
        std::vector<std::uint8_t> reg = region;
        if (defect.has_mask() && reg.empty()) reg = defect.validity();
        vals[i] = lp_norm(defect, kInfExponent, reg);
    });
    return fit_loglog(epsilons, vals);
}

}  // namespace mollab
