#pragma once

#include <stdexcept>
#include <string>

namespace fl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct DivergenceError : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct ToleranceError : Error { using Error::Error; };
struct ConstructionError : Error { using Error::Error; };
struct DegenerateConstruction : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

}  // namespace fl
