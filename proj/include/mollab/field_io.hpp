// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_FIELD_IO_HPP
#define MOLLAB_FIELD_IO_HPP

#include <iosfwd>
#include <string>

#include "mollab/field.hpp"

namespace mollab {

/// Writes `base`.f64 (flat little-endian 64-bit reals, component-major)
/// and `base`.json (domain id, shape, components, time, flags, optional
/// validity run-length encoding).
void save_field(const Field& field, const std::string& base, double time = 0.0);

/// Loads a field written by save_field. Only built-in domain ids round-trip.
Field load_field(const std::string& base, double* time = nullptr);

/// CSV slice: 1D lattices emit x,<components>; 2D lattices x,y,<components>.
void export_csv(const Field& field, std::ostream& os);

}  // namespace mollab

#endif
