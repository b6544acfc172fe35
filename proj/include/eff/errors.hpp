#pragma once

#include <stdexcept>
#include <string>

namespace eff {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Manifest could not be parsed or violates the schema/invariants.
class ManifestError : public Error {
public:
    using Error::Error;
};

/// A quad clips to zero area or lies fully outside the image.
class DegenerateRegionError : public Error {
public:
    using Error::Error;
};

/// Image or field file could not be read or written.
class ImageIoError : public Error {
public:
    using Error::Error;
};

/// External OCR/editor command failed, timed out, or produced bad output.
class BackendError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration (CLI flags, FieldConfig ranges, sweep grids).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace eff
