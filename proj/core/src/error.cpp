#include "sysrisk/error.hpp"

namespace sysrisk {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Validation: return "VALIDATION";
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::SimDiverged: return "SIM_DIVERGED";
    case ErrorCode::DegenerateInput: return "DEGENERATE_INPUT";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

}  // namespace sysrisk
