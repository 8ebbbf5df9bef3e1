#pragma once

#include <stdexcept>
#include <string>

namespace entnet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad dims, labels, ids, parameters).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A gate whose matrix is not unitary or does not fit its targets.
class InvalidGate : public Error {
 public:
  using Error::Error;
};

/// A site that was expected to be separable is entangled with the rest.
class EntangledSite : public Error {
 public:
  using Error::Error;
};

/// EPR sites handed to teleportation are not in the expected Bell state.
class InvalidChannel : public Error {
 public:
  using Error::Error;
};

/// A combinatorial guard was hit (enumeration or search too large).
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// An operation precondition that is documented but not satisfied.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// An agent touched a site it does not own.
class LoccViolation : public Error {
 public:
  using Error::Error;
};

/// Structure requested cannot be built from the graph (disconnected input).
class NoSpanningTree : public Error {
 public:
  using Error::Error;
};

/// A request that is impossible for a structural reason the theory pins down
/// (disconnected resource structure, forbidden inflation, etc).
/// The CLI maps this family to exit code 2.
class DomainRejection : public Error {
 public:
  using Error::Error;
};

/// No LOCC protocol can reach the target (disconnected resource structure).
class NoProtocol : public DomainRejection {
 public:
  using DomainRejection::DomainRejection;
};

/// No key distribution scheme exists for the given security structure.
class NoScheme : public DomainRejection {
 public:
  using DomainRejection::DomainRejection;
};

/// A secret-sharing construction that violates a scheme constraint.
class SchemeRejected : public DomainRejection {
 public:
  using DomainRejection::DomainRejection;
};

/// Plan node that the simulator cannot realize explicitly.
class NotSimulable : public Error {
 public:
  using Error::Error;
};

}  // namespace entnet
