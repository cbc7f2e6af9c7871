// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_DOMAIN_HPP
#define MOLLAB_DOMAIN_HPP

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mollab {

class Field;

/// Signed distance to the boundary: negative inside, positive outside,
/// |grad| = 1 near the boundary.
using SdfFn = std::function<double(double, double)>;

/// Axis-aligned bounding box {xlo, xhi, ylo, yhi}.
using Box2 = std::array<double, 4>;

/// Computational domain: a flat torus in d = 1..3 dimensions, or a smooth
/// bounded 2D region described by a signed-distance function. Bounded
/// domains carry a collar radius r0 inside which the normal field
/// n(x) = grad phi / |grad phi| is well defined.
class Domain {
public:
    enum class Kind { Torus, Bounded2D };

    static std::shared_ptr<const Domain> torus(std::vector<double> periods);
    static std::shared_ptr<const Domain> disk();
    static std::shared_ptr<const Domain> rounded_square();
    static std::shared_ptr<const Domain> bounded2d(std::string id, SdfFn phi,
                                                   Box2 bbox, double collar_radius);
    /// Named lookup used by configs: "torus1", "torus2", "torus3",
    /// "disk", "rounded_square".
    static std::shared_ptr<const Domain> from_id(const std::string& id);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::string& id() const { return id_; }

    // Torus accessors.
    const std::vector<double>& periods() const { return periods_; }

    // Bounded accessors.
    const Box2& bbox() const { return bbox_; }
    double collar_radius() const { return r0_; }
    double sdf(double x, double y) const;
    /// Central finite-difference gradient of the SDF.
    std::array<double, 2> sdf_gradient(double x, double y) const;

    /// Lattice spacing per axis for a given shape. Torus lattices are
    /// x_i = i L/N; bounded lattices are cell-centered over the bbox.
    std::vector<double> spacing(const std::vector<int>& shape) const;
    double cell_volume(const std::vector<int>& shape) const;
    /// Coordinates of lattice point (multi-index given axis by axis).
    std::vector<double> point(const std::vector<int>& shape,
                              const std::vector<int>& index) const;

private:
    Kind kind_;
    int dim_ = 0;
    std::string id_;
    std::vector<double> periods_;
    SdfFn phi_;
    Box2 bbox_{};
    double r0_ = 0.0;
};

using DomainPtr = std::shared_ptr<const Domain>;

/// Width-epsilon boundary layer Omega \ Omega_eps with the lattice
/// resolution used for shell quadrature.
struct LayerSpec {
    double epsilon;
    int points_per_unit = 256;
};

/// Mask of lattice points in the interior subset Omega_r (phi < -r).
/// Torus domains only admit r = 0 (all-true mask).
std::vector<std::uint8_t> interior_mask(const Domain& domain, double r,
                                        const std::vector<int>& shape);

/// Outward unit normal n(x) at a collar point (-r0 < phi(x) < 0).
std::array<double, 2> normal_field(const Domain& domain, double x, double y);

struct LayerAverage {
    double average;   ///< (1/|layer|) * integral of |f|^p
    double integral;  ///< plain layer integral of |f|^p
    double area;      ///< measure of the layer
};

/// Layer quadrature of |field|^p over Omega \ Omega_eps. Midpoint rule on
/// the masked lattice with subcell weights from the SDF linearization.
LayerAverage layer_average(const Domain& domain, const Field& field,
                           const LayerSpec& layer, double p);

/// Self-consistency probe of the coarea formula: integral of the field
/// over Omega_r1 \ Omega_r2 computed (a) by area quadrature and (b) by
/// integrating marching-squares level-set line integrals over the shell
/// parameter. The two values should agree for smooth integrands.
std::pair<double, double> coarea_check(const Domain& domain, const Field& field,
                                       double r1, double r2);

}  // namespace mollab

#endif
