// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MOLLAB_ERRORS_HPP
#define MOLLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mollab {

/// Base class for all library errors. `condition()` is a stable machine
/// readable tag surfaced by the CLI next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string condition, const std::string& message)
        : std::runtime_error(condition + ": " + message),
          condition_(std::move(condition)) {}

    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

#define MOLLAB_DEFINE_ERROR(ClassName, tag)                      \
    class ClassName : public Error {                             \
    public:                                                      \
        explicit ClassName(const std::string& message)           \
            : Error(tag, message) {}                             \
    }

MOLLAB_DEFINE_ERROR(EmptyRegionError, "empty-region");
MOLLAB_DEFINE_ERROR(OutOfCollarError, "out-of-collar");
MOLLAB_DEFINE_ERROR(MarginError, "margin");
MOLLAB_DEFINE_ERROR(UnsupportedShiftError, "unsupported-shift");
MOLLAB_DEFINE_ERROR(ResolutionError, "resolution");
MOLLAB_DEFINE_ERROR(UnderResolutionError, "under-resolution");
MOLLAB_DEFINE_ERROR(ParameterError, "parameter");
MOLLAB_DEFINE_ERROR(ShapeError, "shape");
MOLLAB_DEFINE_ERROR(PositivityError, "positivity");
MOLLAB_DEFINE_ERROR(SupportError, "support");
MOLLAB_DEFINE_ERROR(SolverError, "solver");
MOLLAB_DEFINE_ERROR(StepSizeError, "step-size");
MOLLAB_DEFINE_ERROR(SmoothnessLostError, "smoothness-lost");
MOLLAB_DEFINE_ERROR(DomainKindError, "domain-kind");
MOLLAB_DEFINE_ERROR(InputError, "input");
MOLLAB_DEFINE_ERROR(IoError, "io");

#undef MOLLAB_DEFINE_ERROR

}  // namespace mollab

#endif
