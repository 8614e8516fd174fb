#include "ideaforge/http.hpp"

#include <atomic>

#include "httplib.h"

namespace ideaforge::net {

namespace {

std::atomic<std::size_t> g_requests{0};
std::atomic<bool> g_forbidden{false};

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

bool split_url(const std::string& url, SplitUrl& out) {
    auto scheme = url.find("://");
    if (scheme == std::string::npos) return false;
    auto slash = url.find('/', scheme + 3);
    out.origin = url.substr(0, slash);
    out.path = slash == std::string::npos ? "/" : url.substr(slash);
    return url.compare(0, scheme, "http") == 0;
}

template <typename Send>
HttpResult perform(const std::string& url, std::chrono::milliseconds timeout, Send&& send) {
    ++g_requests;
    HttpResult result;
    if (g_forbidden) {
        result.error = "network forbidden";
        return result;
    }
    SplitUrl parts;
    if (!split_url(url, parts)) {
        result.error = "unsupported URL: " + url;
        return result;
    }
    httplib::Client client(parts.origin);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    auto res = send(client, parts.path);
    if (!res) {
        result.error = httplib::to_string(res.error());
        return result;
    }
    result.ok = true;
    result.status = res->status;
    result.body = res->body;
    return result;
}

}  // namespace

HttpResult http_get(const std::string& url, std::chrono::milliseconds timeout) {
    return perform(url, timeout, [](httplib::Client& c, const std::string& path) { return c.Get(path); });
}

HttpResult http_post_json(const std::string& url, const std::string& body, std::chrono::milliseconds timeout) {
    return perform(url, timeout, [&](httplib::Client& c, const std::string& path) {
        return c.Post(path, body, "application/json");
    });
}

std::size_t request_count() { return g_requests; }
void reset_request_count() { g_requests = 0; }
void set_network_forbidden(bool forbidden) { g_forbidden = forbidden; }
bool network_forbidden() { return g_forbidden; }

}  // namespace ideaforge::net
