#pragma once

#include <stdexcept>
#include <string>

namespace i2dp {

/// Stable failure categories. The CLI maps each one onto a documented exit
/// code, so the numeric values must not change.
enum class ErrorCode : int {
  kUsage = 1,
  kIo = 2,
  kParse = 3,
  kOccurrence = 4,
  kPlanarity = 5,
  kEmbedding = 6,
  kPrecondition = 7,
  kGuard = 8,
  kRouting = 9,
  kDegenerate = 10,
  kInvalidWitness = 11,
  kInvalidModel = 12,
  kInternal = 70,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure; `line` is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::string kind, std::size_t line, const std::string& detail)
      : Error(ErrorCode::kParse, format(kind, line, detail)),
        kind_(std::move(kind)),
        line_(line) {}

  const std::string& kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& kind, std::size_t line,
                            const std::string& detail) {
    std::string s = kind;
    if (line != 0) s += " at line " + std::to_string(line);
    if (!detail.empty()) s += ": " + detail;
    return s;
  }

  std::string kind_;
  std::size_t line_;
};

}  // namespace i2dp
