#include "artist/error.hpp"

namespace artist {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::empty_text: return "empty_text";
    case ErrorCode::empty_input: return "empty_input";
    case ErrorCode::degenerate_stats: return "degenerate_stats";
    case ErrorCode::empty_table: return "empty_table";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::empty_candidate: return "empty_candidate";
    case ErrorCode::no_references: return "no_references";
    case ErrorCode::empty_scope: return "empty_scope";
    case ErrorCode::unknown_topic: return "unknown_topic";
    case ErrorCode::unknown_corpus: return "unknown_corpus";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::duplicate_topic: return "duplicate_topic";
    case ErrorCode::backend_unavailable: return "backend_unavailable";
    case ErrorCode::backend_timeout: return "backend_timeout";
    case ErrorCode::backend_bad_response: return "backend_bad_response";
    case ErrorCode::stage_failed: return "stage_failed";
  }
  return "unknown";
}

bool is_backend_error(ErrorCode code) noexcept {
  return code == ErrorCode::backend_unavailable || code == ErrorCode::backend_timeout ||
         code == ErrorCode::backend_bad_response || code == ErrorCode::stage_failed;
}

}  // namespace artist
