#pragma once
/** @file errors.hpp
 *  @brief Error taxonomy shared by the library and the CLI.
 *
 *  Every failure carries a stable machine-readable kind string; the CLI maps
 *  schema problems to exit code 2 and numerical/structural signals to exit 3.
 */

#include <stdexcept>
#include <string>

namespace liehamsys {

/// Stable error-kind identifiers (surface in CLI output and JSON reports).
namespace errkind {
inline constexpr const char* unknown_algebra = "UnknownAlgebra";
inline constexpr const char* unknown_representation = "UnknownRepresentation";
inline constexpr const char* invalid_argument = "InvalidArgument";
inline constexpr const char* chart_mismatch = "ChartMismatch";
inline constexpr const char* not_canonical = "NotCanonical";
inline constexpr const char* dimension_mismatch = "DimensionMismatch";
inline constexpr const char* not_hamiltonian = "NotHamiltonian";
inline constexpr const char* coefficient_singular = "CoefficientSingular";
inline constexpr const char* grid_mismatch = "GridMismatch";
inline constexpr const char* degenerate_constants = "DegenerateConstants";
inline constexpr const char* singular_denominator = "SingularDenominator";
inline constexpr const char* degenerate_solution_set = "DegenerateSolutionSet";
inline constexpr const char* inconsistent_invariants = "InconsistentInvariants";
inline constexpr const char* invalid_params = "InvalidParams";
inline constexpr const char* singular_chart = "SingularChart";
inline constexpr const char* schema_violation = "SchemaViolation";
inline constexpr const char* numeric_overflow = "NumericOverflow";
inline constexpr const char* io = "IOError";
}  // namespace errkind

/// Exception type carrying a kind identifier plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  /// Machine-readable kind (one of the errkind constants).
  const std::string& kind() const noexcept { return kind_; }

  /// True when the failure is a malformed config rather than a numeric signal.
  bool is_schema() const noexcept { return kind_ == errkind::schema_violation; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const char* kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace liehamsys
