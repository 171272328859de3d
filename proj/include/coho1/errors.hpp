#pragma once

#include <stdexcept>
#include <string>

namespace coho1 {

// Failure modes surfaced by the library. The CLI maps these to exit codes:
// invalid configuration -> 2, numerical failure -> 3, non-convergent
// refinement/extrapolation -> 4.
enum class errc {
  outside_locus,
  degenerate_dims,
  wrong_point,
  step_underflow,
  max_steps_exceeded,
  left_locus,
  unreachable,
  not_in_locus,
  incomplete_curve,
  no_convergence,
  origin_vertex,
  ambiguous_unwrap,
  not_heteroclinic,
  non_convergent_limit,
  checkpoint_failed,
  no_margin,
  invalid_config,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::outside_locus: return "OutsideLocus";
    case errc::degenerate_dims: return "Degenerate";
    case errc::wrong_point: return "WrongPoint";
    case errc::step_underflow: return "StepUnderflow";
    case errc::max_steps_exceeded: return "MaxStepsExceeded";
    case errc::left_locus: return "LeftLocus";
    case errc::unreachable: return "Unreachable";
    case errc::not_in_locus: return "NotInLocus";
    case errc::incomplete_curve: return "IncompleteCurve";
    case errc::no_convergence: return "NoConvergence";
    case errc::origin_vertex: return "OriginVertex";
    case errc::ambiguous_unwrap: return "AmbiguousUnwrap";
    case errc::not_heteroclinic: return "NotHeteroclinic";
    case errc::non_convergent_limit: return "NonConvergentLimit";
    case errc::checkpoint_failed: return "CheckpointFailed";
    case errc::no_margin: return "NoMargin";
    case errc::invalid_config: return "InvalidConfig";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace coho1
