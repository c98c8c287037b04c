#include "cheeger_gap/error.hpp"

namespace cheeger_gap {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_model: return "invalid-model";
    case ErrorKind::size_limit: return "size-limit";
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::positivity: return "positivity";
    case ErrorKind::stale_ground_state: return "stale-ground-state";
    case ErrorKind::degenerate_cut: return "degenerate-cut";
    case ErrorKind::empty_family: return "empty-family";
    case ErrorKind::degenerate_reduction: return "degenerate-reduction";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::support: return "support";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

}  // namespace cheeger_gap
