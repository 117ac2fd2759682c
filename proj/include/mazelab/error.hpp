#ifndef MAZELAB_ERROR_HPP
#define MAZELAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mazelab {

// World/instance generation could not satisfy its constraints.
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// API misuse: acting on a finished game, force_max before 2/3 progress, ...
struct UsageError : std::logic_error {
  using std::logic_error::logic_error;
};

// Observation cannot be encoded (offset outside window, too many infos, OOV).
struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite values in a forward pass, gradient or optimizer step.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad checkpoint file: wrong magic, version or vocabulary hash.
struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad run configuration (unknown key, missing required field, bad value).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mazelab

#endif  // MAZELAB_ERROR_HPP
