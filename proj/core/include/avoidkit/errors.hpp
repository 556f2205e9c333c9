#pragma once

#include <stdexcept>
#include <string>

namespace avoidkit {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input documents (edge lists, trajectories, config files).
class ParseError : public Error {
public:
    using Error::Error;
};

// A caller violated an operation's precondition.
class UsageError : public Error {
public:
    using Error::Error;
};

// The graph does not satisfy the hypotheses of the requested engine.
class InadmissibleError : public Error {
public:
    using Error::Error;
};

// A bounded resource (rejection budget, subset cap) was exhausted.
class ResourceError : public Error {
public:
    using Error::Error;
};

// An exact certification (sum identity, uniform law) failed.
class CertificationError : public Error {
public:
    using Error::Error;
};

// A construction whose existence follows from the graph hypotheses failed;
// the hypotheses were not met or there is a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace avoidkit
