#pragma once

#include <stdexcept>
#include <string>

namespace permsym {

enum class Errc {
  invalid_argument = 1,
  parse_error,
  degree_mismatch,
  invalid_isomorphism,
  unknown_name,
  budget_exceeded,
  precondition,
  schema,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace permsym
