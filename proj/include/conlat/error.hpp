#pragma once

#include <stdexcept>
#include <string>

namespace conlat {

// Base of every error raised by the library. The CLI maps these onto exit
// codes, so each failure mode gets its own type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class UniverseMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string const& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NotClosedInput : public Error {
 public:
  using Error::Error;
};

class NotAcyclic : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class UnknownCheckId : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace conlat
