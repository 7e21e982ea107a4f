#pragma once

#include <stdexcept>

namespace golden_gaps {

/// An internal consistency check failed (for example no zone matched a
/// point of the section). Maps to exit code 3 in the CLI.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace golden_gaps
