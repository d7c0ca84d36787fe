#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace apdec {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigInvalid : Error { using Error::Error; };
struct GroupMismatch : Error { using Error::Error; };
struct AmbientMismatch : Error { using Error::Error; };
struct DiameterTooLarge : Error { using Error::Error; };
struct BoundViolation : Error { using Error::Error; };
struct SearchFailed : Error { using Error::Error; };
struct BudgetExhausted : Error { using Error::Error; };
struct SubgroupViolation : Error { using Error::Error; };
struct ShiftNotFound : Error { using Error::Error; };
struct BadExtension : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };
struct DepthExceeded : Error { using Error::Error; };
struct ParamOutOfRange : Error { using Error::Error; };

// Exit codes used by the CLI: 0 success (including negative scientific
// findings), 2 config/validation error, 3 internal invariant violation.
enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_internal = 3 };

}  // namespace apdec
