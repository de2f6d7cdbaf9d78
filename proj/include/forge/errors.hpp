#pragma once
#include <stdexcept>
#include <string>

namespace forge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  int line, col;
  ParseError(const std::string& msg, int l, int c)
      : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

struct SortError : Error { using Error::Error; };
struct DuplicateBindingError : Error { using Error::Error; };
struct CaptureError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct DecodeError : Error { using Error::Error; };
struct SliceExceeded : Error { using Error::Error; };
struct UnboundVariable : Error { using Error::Error; };
struct ClassError : Error { using Error::Error; };
struct LayoutError : Error { using Error::Error; };
struct MalformedProof : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct TMError : Error { using Error::Error; };

}  // namespace forge
