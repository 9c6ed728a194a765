#pragma once

#include <stdexcept>
#include <string>

namespace ginv {

/// Base class for all library errors. Subclasses exist so callers can
/// distinguish failure modes without parsing messages.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// group_core
struct NotABijection : Error { using Error::Error; };
struct ClosureCapExceeded : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NotTransitive : Error { using Error::Error; };

// orbit_engine
struct TupleSpaceCapExceeded : Error { using Error::Error; };
struct UnknownOrbit : Error { using Error::Error; };
struct NonIntegerBurnside : Error { using Error::Error; };

// invariant
struct ZeroDifference : Error { using Error::Error; };

// embed
struct EpsilonNotAboveDelta : Error { using Error::Error; };
struct DegenerateK : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DuplicatePoints : Error { using Error::Error; };
struct NotDiscriminable : Error { using Error::Error; };

// discrim
struct TooFewPoints : Error { using Error::Error; };
struct DegenerateLadder : Error { using Error::Error; };

// spectral
struct FactorizationMismatch : Error { using Error::Error; };
struct ConditionViolated : Error { using Error::Error; };
struct NegativeMagnitude : Error { using Error::Error; };

// cli_store
struct GroupHashMismatch : Error { using Error::Error; };
struct EmptyStore : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace ginv
