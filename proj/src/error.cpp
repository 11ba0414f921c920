#include "xkit/error.hpp"

namespace xkit {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parse: return "ParseError";
    case Errc::not_composable: return "NotComposable";
    case Errc::not_free: return "NotFree";
    case Errc::not_face: return "NotFace";
    case Errc::not_subcomplex: return "NotSubcomplex";
    case Errc::not_contained: return "NotContained";
    case Errc::not_partial_box: return "NotPartialBox";
    case Errc::incidence_mismatch: return "IncidenceMismatch";
    case Errc::object_not_found: return "ObjectNotFound";
    case Errc::malformed_shell: return "MalformedShell";
    case Errc::invalid_crossed_module: return "InvalidCrossedModule";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::infinite_carrier: return "InfiniteCarrier";
    case Errc::unsupported_action: return "UnsupportedAction";
    case Errc::unknown_suite: return "UnknownSuite";
    case Errc::unbounded: return "Unbounded";
    case Errc::overflow: return "Overflow";
  }
  return "Error";
}

}  // namespace xkit
