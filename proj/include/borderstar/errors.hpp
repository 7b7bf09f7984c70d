#pragma once

#include <stdexcept>
#include <string>

namespace bsr {

// All engine failures carry a stable machine-readable code alongside the
// human message. The C API and CLI map these to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline Error input_error(const std::string& what) { return Error("InputError", what); }

}  // namespace bsr
