#pragma once

#include <stdexcept>
#include <string>

namespace fanoforge {

// Process-level outcome classes shared by the library and the CLI:
// 0 success, 1 verification failure (a check with a witness failed on the
// given data), 2 input error, 3 internal invariant breach.
enum class ExitCode : int { ok = 0, verification = 1, input = 2, internal = 3 };

class Error : public std::runtime_error {
public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

private:
  ExitCode code_;
};

// A verifier found a concrete counterexample in user-supplied data.
class VerificationError : public Error {
public:
  explicit VerificationError(const std::string& what) : Error(ExitCode::verification, what) {}
};

// Malformed files, bad flags, parameters outside the supported range.
class InputError : public Error {
public:
  explicit InputError(const std::string& what) : Error(ExitCode::input, what) {}
};

// Breach of an invariant the construction guarantees; never fires on a valid run.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& what) : Error(ExitCode::internal, what) {}
};

}  // namespace fanoforge
