#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace artist {

enum class ErrorCode {
  empty_text,
  empty_input,
  degenerate_stats,
  empty_table,
  parse_error,
  io_error,
  invalid_argument,
  empty_candidate,
  no_references,
  empty_scope,
  unknown_topic,
  unknown_corpus,
  index_out_of_range,
  duplicate_topic,
  backend_unavailable,
  backend_timeout,
  backend_bad_response,
  stage_failed,
};

std::string_view to_string(ErrorCode code);

// Base of every error thrown by the library. The code is stable and is what
// the service maps onto HTTP statuses and the CLI onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line_no, const std::string& what)
      : Error(ErrorCode::parse_error,
              "line " + std::to_string(line_no) + ": " + what),
        line_no_(line_no) {}

  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

// A round-trip chain failed; stage() names the failing stage and
// underlying() carries the error code of the stage's own failure.
class StageFailed : public Error {
 public:
  StageFailed(std::string stage, ErrorCode underlying, const std::string& what)
      : Error(ErrorCode::stage_failed, "stage " + stage + " failed: " + what),
        stage_(std::move(stage)),
        underlying_(underlying) {}

  const std::string& stage() const noexcept { return stage_; }
  ErrorCode underlying() const noexcept { return underlying_; }

 private:
  std::string stage_;
  ErrorCode underlying_;
};

bool is_backend_error(ErrorCode code) noexcept;

}  // namespace artist
