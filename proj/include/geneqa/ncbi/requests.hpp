#pragma once

#include <optional>
#include <string>
#include <vector>

namespace geneqa::ncbi {

inline constexpr const char* kDefaultEutilsBase = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils";
inline constexpr const char* kDefaultBlastBase = "https://blast.ncbi.nlm.nih.gov/blast/Blast.cgi";

enum class EutilsFunction { esearch, efetch, esummary };
enum class EutilsDb { gene, snp, omim };
enum class RetMode { json, text };
enum class BlastFormat { xml, text };

std::string to_string(EutilsFunction f);
std::string to_string(EutilsDb db);
std::string to_string(RetMode m);
std::string to_string(BlastFormat f);

EutilsFunction eutils_function_from_string(const std::string& s);
EutilsDb eutils_db_from_string(const std::string& s);
RetMode retmode_from_string(const std::string& s);
BlastFormat blast_format_from_string(const std::string& s);

// One E-utils call. Exactly one of `term` (esearch) or `ids`
// (efetch/esummary) must be present.
struct EutilsRequest {
    EutilsFunction function = EutilsFunction::esearch;
    EutilsDb db = EutilsDb::gene;
    std::optional<std::string> term;
    std::optional<std::vector<std::string>> ids;
    int retmax = 5;
    RetMode retmode = RetMode::json;
    std::optional<std::string> sort;

    bool operator==(const EutilsRequest&) const = default;

    // Throws ConstructionError naming the offending field.
    void validate() const;
};

// BLAST submission (CMD=Put).
struct BlastPutRequest {
    std::string program = "blastn";
    std::string database = "nt";
    std::string query;  // raw sequence; whitespace is stripped before use
    BlastFormat format_type = BlastFormat::xml;
    int hitlist_size = 5;
    bool megablast = true;

    bool operator==(const BlastPutRequest&) const = default;

    void validate() const;

    // Query with whitespace removed (the form that is encoded into the URL).
    std::string normalized_query() const;
};

// BLAST retrieval (CMD=Get).
struct BlastGetRequest {
    std::string rid;
    BlastFormat format_type = BlastFormat::text;

    bool operator==(const BlastGetRequest&) const = default;

    void validate() const;
};

// URL builders are pure: same request value, same byte sequence out.
// Parameter order is fixed: db, retmax, retmode, [sort], term|id.
std::string build_eutils_url(const EutilsRequest& req, const std::string& base = kDefaultEutilsBase);
std::string build_blast_put_url(const BlastPutRequest& req, const std::string& base = kDefaultBlastBase);
std::string build_blast_get_url(const BlastGetRequest& req, const std::string& base = kDefaultBlastBase);

// Inverse of build_eutils_url; accepts parameters in any order.
// Throws ConstructionError when the URL is not a valid E-utils request.
EutilsRequest parse_eutils_url(const std::string& url);

// Inverse of the BLAST builders, dispatched on the CMD parameter.
BlastPutRequest parse_blast_put_url(const std::string& url);
BlastGetRequest parse_blast_get_url(const std::string& url);

bool is_eutils_url(const std::string& url);
bool is_blast_url(const std::string& url);
bool is_blast_put_url(const std::string& url);
bool is_blast_get_url(const std::string& url);

// Pulls the request id out of a BLAST Put response page. The page carries
// the id as `RID = <value>` (or `RID=<value>`); the first match wins.
// Throws ExtractionError when no RID field is present.
std::string extract_rid(const std::string& html_body);

// Token budgeting for splicing API results into a prompt. The token count
// is approximated as whitespace-delimited words times `multiplier`. Bodies
// over budget keep a head and a tail joined by a "[...]" marker, head:tail
// ratio 3:1. Budget must be positive.
struct TruncationPolicy {
    double multiplier = 1.0;
};

struct TruncationResult {
    std::string text;
    bool truncated = false;
};

TruncationResult truncate_for_context(const std::string& body, int budget,
                                      const TruncationPolicy& policy = {});

}  // namespace geneqa::ncbi
