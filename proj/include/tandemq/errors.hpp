#pragma once

#include <stdexcept>
#include <string>

namespace tandemq {

// Error categories. The CLI maps categories onto process exit codes:
// invalid input -> 2, boundary-regime diagnosis -> 3, numerical failure -> 4.
enum class errc {
  // invalid input / domain errors
  empty_system,
  non_positive_rate,
  unstable,
  invalid_count,
  empty_sample,
  bad_argument,
  bad_format,
  unsupported_profile,
  // diagnosis refused: parameters sit on a phase boundary
  boundary_regime,
  // numerical failures
  pole_proximity,
  bracket_failure,
  eigen_nonconvergence,
  ode_blowup,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

inline int exit_code(errc code) {
  switch (code) {
    case errc::boundary_regime:
      return 3;
    case errc::pole_proximity:
    case errc::bracket_failure:
    case errc::eigen_nonconvergence:
    case errc::ode_blowup:
      return 4;
    default:
      return 2;
  }
}

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tandemq
