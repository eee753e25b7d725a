#include "tensoreq/error.hpp"

namespace tensoreq {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::out_of_bounds: return "out-of-bounds";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::non_square: return "non-square";
    case Errc::non_finite: return "non-finite";
    case Errc::symmetry_violation: return "symmetry-violation";
    case Errc::not_spd: return "not-spd";
    case Errc::zero_division: return "zero-division";
    case Errc::cannot_construct: return "cannot-construct";
    case Errc::io_failure: return "io-failure";
    case Errc::bad_magic: return "bad-magic";
    case Errc::version_unsupported: return "version-unsupported";
    case Errc::truncated_payload: return "truncated-payload";
    case Errc::unsupported_format: return "unsupported-format";
    case Errc::malformed_header: return "malformed-header";
  }
  return "unknown";
}

void raise(Errc code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace tensoreq
