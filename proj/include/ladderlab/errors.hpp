#pragma once

#include <stdexcept>
#include <string>

namespace ladderlab {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// t below the asymptotic floor of the Riemann-Siegel engine.
class HeightTooSmall : public Error { public: using Error::Error; };

// Euler-Maclaurin reference requested above its cost ceiling.
class OracleRangeExceeded : public Error { public: using Error::Error; };

// integrate() called with a >= b.
class InvalidInterval : public Error { public: using Error::Error; };

// Checkpoint store path not usable; engine falls back to memory.
class StoreUnavailable : public Error { public: using Error::Error; };

// Checkpoint file written under different engine constants.
class FingerprintMismatch : public Error { public: using Error::Error; };

// Argument outside a function's mathematical domain.
class DomainError : public Error { public: using Error::Error; };

// Newton/bisection failed to meet tolerance.
class ConvergenceFailure : public Error { public: using Error::Error; };

// Root bracket for a reverse iterate contains no root even after widening.
class BracketFailure : public Error { public: using Error::Error; };

// Segment length above the admissible o(T/ln T) surrogate bound.
class UTooLarge : public Error { public: using Error::Error; };

// prime_pi asked beyond the sieve ceiling.
class RangeExceeded : public Error { public: using Error::Error; };

// Function failed the nonnegative / not-identically-zero certificate.
class NotAdmissible : public Error { public: using Error::Error; };

// Mean-value scan found no crossing (sampling failure).
class NoCrossing : public Error { public: using Error::Error; };

// A beta node sits on top of a zeta zero and retries were exhausted.
class DegenerateNode : public Error { public: using Error::Error; };

// Inconsistent iteration-level lists in a hybrid check.
class LevelMismatch : public Error { public: using Error::Error; };

// File write/read failure, message carries the path.
class IoError : public Error { public: using Error::Error; };

}  // namespace ladderlab
