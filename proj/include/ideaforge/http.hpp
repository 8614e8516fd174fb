#pragma once

#include <chrono>
#include <cstddef>
#include <string>

namespace ideaforge::net {

struct HttpResult {
    bool ok = false;  // transport succeeded; status may still be non-2xx
    int status = 0;
    std::string body;
    std::string error;
};

/// Every outbound request in the library goes through these two calls.
HttpResult http_get(const std::string& url, std::chrono::milliseconds timeout);
HttpResult http_post_json(const std::string& url, const std::string& body, std::chrono::milliseconds timeout);

/// Number of requests attempted since process start (or the last reset),
/// including refused ones.
std::size_t request_count();
void reset_request_count();

/// While forbidden, requests fail immediately with error "network forbidden".
void set_network_forbidden(bool forbidden);
bool network_forbidden();

}  // namespace ideaforge::net
