// errors.hpp
// Exception types thrown on invalid inputs. The CLI maps spec_format_error
// to exit code 2 and every other phasest::error to exit code 3.

#pragma once

#include <stdexcept>
#include <string>

namespace phasest {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem-spec file could not be parsed (syntax, missing or mistyped fields).
struct spec_format_error : error {
    using error::error;
};

struct empty_spec_error : error {
    using error::error;
};

struct zero_norm_error : error {
    using error::error;
};

struct not_normalized_error : error {
    using error::error;
};

// An operation that divides by A_J met an amplitude at (numerical) zero.
struct zero_amplitude_error : error {
    using error::error;
};

struct dimension_mismatch_error : error {
    using error::error;
};

struct length_mismatch_error : error {
    using error::error;
};

// Circuit pipelines exist for N = 2, 3, 4 only.
struct unsupported_copies_error : error {
    using error::error;
};

// Circuit pipelines require real nonnegative single-copy amplitudes.
struct non_real_spec_error : error {
    using error::error;
};

}  // namespace phasest
