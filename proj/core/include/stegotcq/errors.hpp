#pragma once

#include <stdexcept>
#include <string>

namespace stegotcq {

/// Invalid argument values (lengths, ranges, malformed parameter sets).
class InvalidParameterError : public std::invalid_argument {
   public:
    explicit InvalidParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input data that is structurally valid but unusable (empty sets, degenerate statistics).
class InvalidDataError : public std::runtime_error {
   public:
    explicit InvalidDataError(const std::string& what) : std::runtime_error(what) {}
};

/// Carrier too short for the requested payload. Carries required vs available element counts.
class CapacityError : public std::runtime_error {
   public:
    CapacityError(std::size_t required, std::size_t available)
        : std::runtime_error("insufficient capacity: need " + std::to_string(required) +
                             " elements, have " + std::to_string(available)),
          required_elements(required),
          available_elements(available) {}

    std::size_t required_elements;
    std::size_t available_elements;
};

/// Payload framing or checksum failure: distinguishes "no/garbled message" from success.
class IntegrityError : public std::runtime_error {
   public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed file contents (WAV headers, serialized trellis/session forms).
class FormatError : public std::runtime_error {
   public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stegotcq
