#pragma once

#include <string>

#include "artist/error.hpp"

namespace artist {

// "http://host:port/path" split into the client base and the request path.
struct Endpoint {
  std::string base;
  std::string path;
};

inline Endpoint parse_endpoint(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos || url.compare(0, scheme, "http") != 0)
    throw Error(ErrorCode::invalid_argument, "unsupported endpoint URL '" + url + "'");
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace artist
