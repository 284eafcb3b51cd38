#include "geneqa/ncbi/requests.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "geneqa/errors.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::ncbi {

using util::starts_with;
using util::url_decode_query_value;
using util::url_encode_query_value;

std::string to_string(EutilsFunction f) {
    switch (f) {
        case EutilsFunction::esearch: return "esearch";
        case EutilsFunction::efetch: return "efetch";
        case EutilsFunction::esummary: return "esummary";
    }
    return "esearch";
}

std::string to_string(EutilsDb db) {
    switch (db) {
        case EutilsDb::gene: return "gene";
        case EutilsDb::snp: return "snp";
        case EutilsDb::omim: return "omim";
    }
    return "gene";
}

std::string to_string(RetMode m) {
    return m == RetMode::json ? "json" : "text";
}

std::string to_string(BlastFormat f) {
    return f == BlastFormat::xml ? "XML" : "Text";
}

EutilsFunction eutils_function_from_string(const std::string& s) {
    if (s == "esearch") return EutilsFunction::esearch;
    if (s == "efetch") return EutilsFunction::efetch;
    if (s == "esummary") return EutilsFunction::esummary;
    throw ConstructionError("unknown E-utils function: " + s);
}

EutilsDb eutils_db_from_string(const std::string& s) {
    if (s == "gene") return EutilsDb::gene;
    if (s == "snp") return EutilsDb::snp;
    if (s == "omim") return EutilsDb::omim;
    throw ConstructionError("unknown E-utils db: " + s);
}

RetMode retmode_from_string(const std::string& s) {
    if (s == "json") return RetMode::json;
    if (s == "text") return RetMode::text;
    throw ConstructionError("unknown retmode: " + s);
}

BlastFormat blast_format_from_string(const std::string& s) {
    if (s == "XML") return BlastFormat::xml;
    if (s == "Text") return BlastFormat::text;
    throw ConstructionError("unknown FORMAT_TYPE: " + s);
}

void EutilsRequest::validate() const {
    if (term.has_value() == ids.has_value())
        throw ConstructionError("exactly one of term/ids must be set");
    if (function == EutilsFunction::esearch && !term)
        throw ConstructionError("esearch requires term");
    if (function != EutilsFunction::esearch && !ids)
        throw ConstructionError(to_string(function) + " requires ids");
    if (retmax < 1) throw ConstructionError("retmax must be >= 1");
    if (ids) {
        if (ids->empty()) throw ConstructionError("ids must be non-empty");
        for (const auto& id : *ids) {
            if (id.empty()) throw ConstructionError("ids must not contain empty entries");
            if (id.find(',') != std::string::npos ||
                id.find_first_of(" \t\r\n") != std::string::npos)
                throw ConstructionError("id contains separator characters: " + id);
        }
    }
    if (term && term->empty()) throw ConstructionError("term must be non-empty");
    if (sort && sort->empty()) throw ConstructionError("sort must be non-empty when set");
}

void BlastPutRequest::validate() const {
    if (program.empty()) throw ConstructionError("program must be non-empty");
    if (database.empty()) throw ConstructionError("database must be non-empty");
    if (hitlist_size < 1) throw ConstructionError("hitlist_size must be >= 1");
    std::string seq = normalized_query();
    if (seq.empty()) throw ConstructionError("query must be non-empty");
    for (char c : seq) {
        bool ok = std::isalpha(static_cast<unsigned char>(c)) || c == '-' || c == '*';
        if (!ok) throw ConstructionError("query contains non-sequence character: " + std::string(1, c));
    }
}

std::string BlastPutRequest::normalized_query() const {
    std::string out;
    out.reserve(query.size());
    for (char c : query)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

void BlastGetRequest::validate() const {
    if (rid.empty()) throw ConstructionError("rid must be non-empty");
}

std::string build_eutils_url(const EutilsRequest& req, const std::string& base) {
    req.validate();
    std::ostringstream url;
    url << base << '/' << to_string(req.function) << ".fcgi?db=" << to_string(req.db)
        << "&retmax=" << req.retmax << "&retmode=" << to_string(req.retmode);
    if (req.sort) url << "&sort=" << url_encode_query_value(*req.sort);
    if (req.term) {
        url << "&term=" << url_encode_query_value(*req.term);
    } else {
        url << "&id=";
        for (size_t i = 0; i < req.ids->size(); ++i) {
            if (i) url << ',';
            url << url_encode_query_value((*req.ids)[i]);
        }
    }
    return url.str();
}

std::string build_blast_put_url(const BlastPutRequest& req, const std::string& base) {
    req.validate();
    std::ostringstream url;
    url << base << "?CMD=Put&PROGRAM=" << url_encode_query_value(req.program);
    if (req.megablast) url << "&MEGABLAST=on";
    url << "&DATABASE=" << url_encode_query_value(req.database)
        << "&FORMAT_TYPE=" << to_string(req.format_type)
        << "&QUERY=" << url_encode_query_value(req.normalized_query())
        << "&HITLIST_SIZE=" << req.hitlist_size;
    return url.str();
}

std::string build_blast_get_url(const BlastGetRequest& req, const std::string& base) {
    req.validate();
    std::ostringstream url;
    url << base << "?CMD=Get&FORMAT_TYPE=" << to_string(req.format_type)
        << "&RID=" << url_encode_query_value(req.rid);
    return url.str();
}

namespace {

struct QueryParams {
    std::vector<std::pair<std::string, std::string>> items;

    std::optional<std::string> get(const std::string& key) const {
        for (const auto& [k, v] : items)
            if (k == key) return v;
        return std::nullopt;
    }
};

// Splits "a=1&b=2" into decoded key/value pairs.
QueryParams parse_query(const std::string& query) {
    QueryParams out;
    for (const auto& piece : util::split_any(query, "&")) {
        auto eq = piece.find('=');
        if (eq == std::string::npos)
            throw ConstructionError("query parameter without value: " + piece);
        out.items.emplace_back(piece.substr(0, eq), url_decode_query_value(piece.substr(eq + 1)));
    }
    return out;
}

// Returns {path-without-query, query}.
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto q = url.find('?');
    if (q == std::string::npos) throw ConstructionError("URL has no query string: " + url);
    return {url.substr(0, q), url.substr(q + 1)};
}

}  // namespace

bool is_eutils_url(const std::string& url) {
    return url.find("/entrez/eutils/") != std::string::npos;
}

bool is_blast_url(const std::string& url) {
    return url.find("Blast.cgi") != std::string::npos;
}

bool is_blast_put_url(const std::string& url) {
    return is_blast_url(url) && url.find("CMD=Put") != std::string::npos;
}

bool is_blast_get_url(const std::string& url) {
    return is_blast_url(url) && url.find("CMD=Get") != std::string::npos;
}

EutilsRequest parse_eutils_url(const std::string& url) {
    auto [path, query] = split_url(url);
    auto marker = path.rfind('/');
    if (marker == std::string::npos) throw ConstructionError("not an E-utils URL: " + url);
    std::string file = path.substr(marker + 1);
    if (!util::ends_with(file, ".fcgi"))
        throw ConstructionError("not an E-utils URL (expected .fcgi): " + url);

    EutilsRequest req;
    req.function = eutils_function_from_string(file.substr(0, file.size() - 5));

    auto params = parse_query(query);
    auto db = params.get("db");
    auto retmax = params.get("retmax");
    auto retmode = params.get("retmode");
    if (!db || !retmax || !retmode)
        throw ConstructionError("E-utils URL missing db/retmax/retmode: " + url);
    req.db = eutils_db_from_string(*db);
    try {
        req.retmax = std::stoi(*retmax);
    } catch (const std::exception&) {
        throw ConstructionError("retmax is not an integer: " + *retmax);
    }
    req.retmode = retmode_from_string(*retmode);
    if (auto sort = params.get("sort")) req.sort = *sort;
    auto term = params.get("term");
    auto id = params.get("id");
    if (term.has_value() == id.has_value())
        throw ConstructionError("E-utils URL needs exactly one of term/id: " + url);
    if (term) {
        req.term = *term;
    } else {
        req.ids = util::split_any(*id, ",");
    }
    req.validate();
    return req;
}

BlastPutRequest parse_blast_put_url(const std::string& url) {
    auto [path, query] = split_url(url);
    (void)path;
    auto params = parse_query(query);
    if (params.get("CMD").value_or("") != "Put")
        throw ConstructionError("not a BLAST Put URL: " + url);
    BlastPutRequest req;
    auto program = params.get("PROGRAM");
    auto database = params.get("DATABASE");
    auto format = params.get("FORMAT_TYPE");
    auto seq = params.get("QUERY");
    auto hits = params.get("HITLIST_SIZE");
    if (!program || !database || !format || !seq || !hits)
        throw ConstructionError("BLAST Put URL missing required parameters: " + url);
    req.program = *program;
    req.database = *database;
    req.format_type = blast_format_from_string(*format);
    req.query = *seq;
    try {
        req.hitlist_size = std::stoi(*hits);
    } catch (const std::exception&) {
        throw ConstructionError("HITLIST_SIZE is not an integer: " + *hits);
    }
    req.megablast = params.get("MEGABLAST").value_or("") == "on";
    req.validate();
    return req;
}

BlastGetRequest parse_blast_get_url(const std::string& url) {
    auto [path, query] = split_url(url);
    (void)path;
    auto params = parse_query(query);
    if (params.get("CMD").value_or("") != "Get")
        throw ConstructionError("not a BLAST Get URL: " + url);
    BlastGetRequest req;
    auto format = params.get("FORMAT_TYPE");
    auto rid = params.get("RID");
    if (!format || !rid)
        throw ConstructionError("BLAST Get URL missing FORMAT_TYPE/RID: " + url);
    req.format_type = blast_format_from_string(*format);
    req.rid = *rid;
    req.validate();
    return req;
}

std::string extract_rid(const std::string& html_body) {
    static const std::regex rid_pattern(R"(RID\s*=\s*([A-Za-z0-9][A-Za-z0-9-]*))");
    std::smatch m;
    if (std::regex_search(html_body, m, rid_pattern)) return m[1].str();
    throw ExtractionError("no RID field found in BLAST response");
}

TruncationResult truncate_for_context(const std::string& body, int budget,
                                      const TruncationPolicy& policy) {
    if (budget <= 0) throw ConstructionError("truncation budget must be positive");

    auto words = util::split_words(body);
    double estimated_tokens = static_cast<double>(words.size()) * policy.multiplier;
    if (estimated_tokens <= static_cast<double>(budget)) return {body, false};

    // Word allowance for the truncated rendering; the "[...]" marker counts
    // as one word so the output never exceeds the budget.
    auto allowed = static_cast<size_t>(static_cast<double>(budget) / policy.multiplier);
    if (allowed < 3) allowed = 3;
    size_t content_words = allowed - 1;
    size_t head = content_words * 3 / 4;
    if (head == 0) head = 1;
    size_t tail = content_words - head;

    std::ostringstream out;
    for (size_t i = 0; i < head; ++i) {
        if (i) out << ' ';
        out << words[i];
    }
    out << " [...]";
    for (size_t i = words.size() - tail; i < words.size(); ++i) out << ' ' << words[i];
    return {out.str(), true};
}

}  // namespace geneqa::ncbi
