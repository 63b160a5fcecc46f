#include "fadecap/errors.hpp"

namespace fadecap {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::LengthMismatch: return "length_mismatch";
    case Errc::InvalidPmf: return "invalid_pmf";
    case Errc::NonPositiveParameter: return "non_positive_parameter";
    case Errc::StronglyDegraded: return "strongly_degraded";
    case Errc::DegenerateFading: return "degenerate_fading";
    case Errc::PoleEvaluation: return "pole_evaluation";
    case Errc::DegreeCollapse: return "degree_collapse";
    case Errc::RootCountMismatch: return "root_count_mismatch";
    case Errc::AlphaInfeasible: return "alpha_infeasible";
    case Errc::NonPositiveLogArgument: return "non_positive_log_argument";
    case Errc::BetaOutOfRange: return "beta_out_of_range";
    case Errc::GapNegative: return "gap_negative";
    case Errc::GapExceedsBound: return "gap_exceeds_bound";
    case Errc::NonPositiveVariance: return "non_positive_variance";
    case Errc::NonConvergence: return "non_convergence";
    case Errc::ConcavityViolated: return "concavity_violated";
    case Errc::EpiViolated: return "epi_violated";
    case Errc::QuadratureNonConvergence: return "quadrature_non_convergence";
    case Errc::ConfigError: return "config_error";
  }
  return "unknown";
}

int errc_exit_code(Errc code) {
  switch (code) {
    case Errc::LengthMismatch:
    case Errc::InvalidPmf:
    case Errc::NonPositiveParameter:
    case Errc::BetaOutOfRange:
    case Errc::ConfigError:
      return 2;
    case Errc::StronglyDegraded:
    case Errc::DegenerateFading:
      return 3;
    default:
      return 4;
  }
}

}  // namespace fadecap
