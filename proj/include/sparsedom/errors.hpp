#pragma once

#include <stdexcept>

namespace sparsedom {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad parameters or malformed specs.
struct invalid_argument_error : error {
  using error::error;
};

// A region that contains no sample cells.
struct empty_cube_error : error {
  using error::error;
};

// File or serialization problems.
struct io_error : error {
  using error::error;
};

// A structural invariant that should hold by construction was found broken.
struct invariant_error : error {
  using error::error;
};

}  // namespace sparsedom
