#ifdef GENEQA_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <cstdlib>

#include "geneqa/errors.hpp"
#include "geneqa/ncbi/http_transport.hpp"
#include "geneqa/ncbi/requests.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::ncbi {

namespace {

struct UrlParts {
    std::string origin;  // scheme://host[:port]
    std::string target;  // /path?query
};

UrlParts split_origin(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw TransportError("URL without scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string rewrite_base(const std::string& url, const std::string& canonical_base,
                         const std::string& override_base) {
    if (override_base.empty() || !util::starts_with(url, canonical_base)) return url;
    return override_base + url.substr(canonical_base.size());
}

std::string HttpTransport::effective_url(const std::string& url) {
    auto env = [](const char* name) {
        const char* v = std::getenv(name);
        return std::string(v ? v : "");
    };
    std::string out = rewrite_base(url, kDefaultEutilsBase, env("NCBI_EUTILS_BASE"));
    out = rewrite_base(out, kDefaultBlastBase, env("NCBI_BLAST_BASE"));
    const std::string key = env("NCBI_API_KEY");
    if (!key.empty() && is_eutils_url(out))
        out += "&api_key=" + util::url_encode_query_value(key);
    return out;
}

RawResponse HttpTransport::get(const std::string& url) {
    auto parts = split_origin(effective_url(url));
#ifndef GENEQA_HAVE_OPENSSL
    if (util::starts_with(parts.origin, "https://"))
        throw TransportError("built without TLS support; cannot fetch " + url);
#endif
    httplib::Client client(parts.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(15, 0);
    client.set_read_timeout(120, 0);
    auto res = client.Get(parts.target);
    if (!res) throw TransportError("network failure for " + url + ": " + httplib::to_string(res.error()));

    RawResponse out;
    out.url = url;
    out.status = res->status;
    out.body = res->body;
    return out;
}

}  // namespace geneqa::ncbi
