#pragma once

#include <stdexcept>
#include <string>

namespace tt {

// Error categories. They map 1:1 onto the C API status codes and onto the
// CLI exit classes (config -> 1, io/data/not_found -> 2, internal -> 3).
enum class errc {
  config,
  io,
  data,
  not_found,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace tt
