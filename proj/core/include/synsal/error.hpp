#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synsal {

/// Base class for all domain errors raised by this library. Precondition
/// violations use std::invalid_argument directly.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A pasted object does not intersect the background canvas.
struct InvalidPlacementError : Error {
  using Error::Error;
};

/// Fewer backgrounds than foregrounds when unique matching is required.
struct InsufficientBackgroundsError : Error {
  using Error::Error;
};

/// An FDA augmentation references a style id that is not in the pool.
struct MissingStyleError : Error {
  using Error::Error;
};

/// Malformed PNG byte stream; carries the offset at which decoding stopped.
struct PngDecodeError : Error {
  std::size_t offset;
  PngDecodeError(const std::string& msg, std::size_t byte_offset)
      : Error(msg + " (at byte offset " + std::to_string(byte_offset) + ")"),
        offset(byte_offset) {}
};

/// Non-finite value produced inside the predictor; names the layer.
struct NumericalFailure : Error {
  std::string layer;
  NumericalFailure(const std::string& layer_name, const std::string& msg)
      : Error("numerical failure in layer '" + layer_name + "': " + msg),
        layer(layer_name) {}
};

/// Run-config validation failure; message names the offending field.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace synsal
