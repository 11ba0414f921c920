#pragma once

#include <stdexcept>
#include <string>

namespace xkit {

enum class Errc {
  parse,
  not_composable,
  not_free,
  not_face,
  not_subcomplex,
  not_contained,
  not_partial_box,
  incidence_mismatch,
  object_not_found,
  malformed_shell,
  invalid_crossed_module,
  precondition_failed,
  infinite_carrier,
  unsupported_action,
  unknown_suite,
  unbounded,
  overflow,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace xkit
