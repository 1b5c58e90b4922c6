#pragma once

#include <stdexcept>
#include <string>

namespace gsp {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// dynamics
struct SolverFailure : Error { using Error::Error; };

// tomography
struct DegenerateCovariance : Error { using Error::Error; };
struct NonPositiveLineVariance : Error { using Error::Error; };
struct NonPositiveValue : Error { using Error::Error; };
struct NonConcaveFit : Error { using Error::Error; };

// integral reconstruction
struct VanishingComponent : Error { using Error::Error; };
struct InconsistentComponents : Error { using Error::Error; };

// differential reconstruction
struct BothDenominatorsVanish : Error { using Error::Error; };

// sampling
struct NoBandwidth : Error { using Error::Error; };
struct EmptySpectrum : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct UnknownCharacteristicFunction : Error { using Error::Error; };

// harness
struct PilotTooSparse : Error { using Error::Error; };

} // namespace gsp
