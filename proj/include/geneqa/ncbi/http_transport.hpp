#pragma once

#include <string>

#include "geneqa/ncbi/transport.hpp"

namespace geneqa::ncbi {

// Replaces `canonical_base` at the start of the URL with `override_base`
// (no-op when the override is empty or the prefix does not match).
std::string rewrite_base(const std::string& url, const std::string& canonical_base,
                         const std::string& override_base);

// Live HTTPS GET transport. Appends the NCBI_API_KEY env var to E-utils
// requests when present, so cassette keys and builder output stay free of
// credentials. NCBI_EUTILS_BASE / NCBI_BLAST_BASE redirect the canonical
// hosts, e.g. at a mock server during testing.
class HttpTransport : public Transport {
public:
    HttpTransport() = default;

    RawResponse get(const std::string& url) override;
    std::string kind() const override { return "live"; }

private:
    static std::string effective_url(const std::string& url);
};

}  // namespace geneqa::ncbi
