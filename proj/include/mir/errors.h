#ifndef MIR_ERRORS_H
#define MIR_ERRORS_H

#include <stdexcept>
#include <string>

namespace mir {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// signal-io
struct MalformedContainer : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct EmptyAudio : Error { using Error::Error; };
struct IoFailure : Error { using Error::Error; };
struct AliasedFrequency : Error { using Error::Error; };

// spectral
struct NonPowerOfTwoLength : Error { using Error::Error; };
struct NonPositiveFrequency : Error { using Error::Error; };
struct BinOutOfRange : Error { using Error::Error; };

// features
struct InvalidBandCount : Error { using Error::Error; };

// pitch
struct BlockTooShort : Error { using Error::Error; };
struct InvalidOrder : Error { using Error::Error; };

// fingerprint
struct AudioTooShort : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };

// ml
struct EmptyTrainingSet : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct KTooLarge : Error { using Error::Error; };
struct DegenerateData : Error { using Error::Error; };
struct TooFewObservations : Error { using Error::Error; };
struct NegativeInput : Error { using Error::Error; };
struct RankTooLarge : Error { using Error::Error; };

// sequence
struct EmptyMatrix : Error { using Error::Error; };
struct NegativeCost : Error { using Error::Error; };
struct AllPathsImpossible : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };

}  // namespace mir

#endif  // MIR_ERRORS_H
