// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_FIELD_HPP
#define MOLLAB_FIELD_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mollab/domain.hpp"

namespace mollab {

/// Scalar or vector samples on a uniform lattice over a Domain. Data is
/// component-major: data()[c * num_points() + i]. An empty validity mask
/// means every lattice point is valid. Fields are value types; operations
/// never mutate their inputs.
class Field {
public:
    Field() = default;
    Field(DomainPtr domain, std::vector<int> shape, int components,
          double fill = 0.0);

    const DomainPtr& domain() const { return domain_; }
    const std::vector<int>& shape() const { return shape_; }
    int components() const { return components_; }
    std::size_t num_points() const { return npoints_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* component(int c) { return data_.data() + std::size_t(c) * npoints_; }
    const double* component(int c) const {
        return data_.data() + std::size_t(c) * npoints_;
    }

    double& at(int c, std::size_t i) { return data_[std::size_t(c) * npoints_ + i]; }
    double at(int c, std::size_t i) const {
        return data_[std::size_t(c) * npoints_ + i];
    }

    bool has_mask() const { return !validity_.empty(); }
    const std::vector<std::uint8_t>& validity() const { return validity_; }
    void set_validity(std::vector<std::uint8_t> mask);
    bool valid_at(std::size_t i) const {
        return validity_.empty() || validity_[i] != 0;
    }
    std::size_t num_valid() const;

    bool positive_flag() const { return positive_; }
    void set_positive_flag(bool flag) { positive_ = flag; }

    /// Coordinates of flattened lattice point i (C order, axis 0 slowest).
    std::array<double, 3> point(std::size_t i) const;
    std::vector<int> unflatten(std::size_t i) const;
    std::size_t flatten(const std::vector<int>& idx) const;

    /// Throws if any sample is NaN/Inf, or non-positive on a
    /// positive-flagged field.
    void check_finite(const std::string& context) const;

private:
    DomainPtr domain_;
    std::vector<int> shape_;
    int components_ = 1;
    std::size_t npoints_ = 0;
    std::vector<double> data_;
    std::vector<std::uint8_t> validity_;
    bool positive_ = false;
};

/// Builds a field by evaluating fn(x, y, z) at every lattice point.
/// fn receives zeros for axes beyond the domain dimension.
Field make_field(DomainPtr domain, std::vector<int> shape, int components,
                 const std::function<double(int, const std::array<double, 3>&)>& fn);

Field make_scalar(DomainPtr domain, std::vector<int> shape,
                  const std::function<double(const std::array<double, 3>&)>& fn);

/// Time-stamped frames of a common lattice field. `t_final` is the length
/// of the time interval the series samples; times are increasing within
/// [0, t_final].
struct TimeSeriesField {
    std::vector<double> times;
    std::vector<Field> frames;
    double t_final = 0.0;

    void validate() const;
};

/// f(. + h). Torus: lattice-commensurate h is an exact index rotation,
/// other h use trigonometric interpolation. Bounded domains accept
/// commensurate h only; result validity shrinks to points whose source
/// sample exists and is valid.
Field shift(const Field& field, const std::vector<double>& h);

/// (integral over region of |f|^p)^(1/p) by midpoint quadrature; p = inf
/// is the max of |f| over the region. Vector fields use the pointwise
/// Euclidean magnitude. An empty `region` means the field's own validity.
double lp_norm(const Field& field, double p,
               const std::vector<std::uint8_t>& region = {});

constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Smooth space-time test function: product of per-axis trig waves and a
/// compactly supported C-infinity time bump on [t0, t1] in (0, T).
struct TestFunctionSpec {
    std::vector<int> modes;        ///< integer wavenumber per axis
    std::vector<bool> use_sin;     ///< sin vs cos per axis
    double t0 = 0.1;
    double t1 = 0.9;
    std::array<double, 3> direction{1.0, 0.0, 0.0};  ///< vector test direction

    double space(const std::array<double, 3>& x, const Domain& domain) const;
    std::array<double, 3> space_gradient(const std::array<double, 3>& x,
                                         const Domain& domain) const;
    double bump(double t) const;
    double bump_dt(double t) const;
};

/// Weak-form residuals of the mass and momentum equations against the test
/// pair (phi, psi = phi * direction): quadrature in space, trapezoid in
/// time. Both vanish (to quadrature accuracy) on weak solutions.
std::pair<double, double> weak_form_residual(const TimeSeriesField& rho,
                                             const TimeSeriesField& u,
                                             const TimeSeriesField& P,
                                             const TestFunctionSpec& test);

/// integral of rho |u|^2 (the conserved quantity of the incompressible
/// system).
double energy_incompressible(const Field& rho, const Field& u);

/// integral of rho |u|^2 / 2 + rho^gamma / (gamma - 1).
double energy_compressible(const Field& rho, const Field& u, double gamma);

// Pointwise algebra helpers. Shapes must match; validity intersects.
Field field_add(const Field& a, const Field& b);
Field field_sub(const Field& a, const Field& b);
Field field_scale(const Field& a, double c);
Field field_multiply(const Field& a, const Field& b);  ///< scalar * scalar
Field field_power(const Field& a, double gamma);       ///< positive scalar only
Field field_component(const Field& a, int c);
std::vector<std::uint8_t> mask_intersection(const Field& a, const Field& b);

}  // namespace mollab

#endif
