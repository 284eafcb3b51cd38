#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geneqa/errors.hpp"
#include "geneqa/ncbi/http_transport.hpp"
#include "geneqa/ncbi/requests.hpp"
#include "geneqa/util/strings.hpp"

using namespace geneqa;
using namespace geneqa::ncbi;

namespace {

const std::string kSeq =
    "ATTCTGCCTTTAGTAATTTGATGACAGAGACTTCTTGGGAACCACAGCCAGGGAGCCACC"
    "CTTTACTCCACCAACAGGTGGCTTATATCCAATCTGAGAAAGAAAGAAAAAAAAAAAAGT"
    "ATTTCTCT";

EutilsRequest esearch_req(EutilsDb db, const std::string& term, int retmax) {
    EutilsRequest req;
    req.function = EutilsFunction::esearch;
    req.db = db;
    req.term = term;
    req.retmax = retmax;
    req.sort = "relevance";
    return req;
}

EutilsRequest id_req(EutilsFunction fn, EutilsDb db, std::vector<std::string> ids, int retmax) {
    EutilsRequest req;
    req.function = fn;
    req.db = db;
    req.ids = std::move(ids);
    req.retmax = retmax;
    return req;
}

}  // namespace

TEST_CASE("eutils URLs reproduce the demonstration fixtures byte for byte") {
    CHECK(build_eutils_url(esearch_req(EutilsDb::gene, "LMP10", 5)) ==
          "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/esearch.fcgi"
          "?db=gene&retmax=5&retmode=json&sort=relevance&term=LMP10");

    CHECK(build_eutils_url(id_req(EutilsFunction::efetch, EutilsDb::gene,
                                  {"19171", "5699", "8138"}, 5)) ==
          "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi"
          "?db=gene&retmax=5&retmode=json&id=19171,5699,8138");

    CHECK(build_eutils_url(id_req(EutilsFunction::esummary, EutilsDb::snp, {"1217074595"}, 10)) ==
          "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/esummary.fcgi"
          "?db=snp&retmax=10&retmode=json&id=1217074595");

    CHECK(build_eutils_url(esearch_req(EutilsDb::omim, "Meesmann corneal dystrophy", 20)) ==
          "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/esearch.fcgi"
          "?db=omim&retmax=20&retmode=json&sort=relevance&term=Meesmann+corneal+dystrophy");

    CHECK(build_eutils_url(id_req(EutilsFunction::esummary, EutilsDb::omim,
                                  {"618767", "601687", "300778", "148043", "122100"}, 20)) ==
          "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/esummary.fcgi"
          "?db=omim&retmax=20&retmode=json&id=618767,601687,300778,148043,122100");
}

TEST_CASE("blast URLs reproduce the demonstration fixtures byte for byte") {
    BlastPutRequest put;
    put.query = kSeq;
    CHECK(build_blast_put_url(put) ==
          "https://blast.ncbi.nlm.nih.gov/blast/Blast.cgi?CMD=Put&PROGRAM=blastn&MEGABLAST=on"
          "&DATABASE=nt&FORMAT_TYPE=XML&QUERY=" + kSeq + "&HITLIST_SIZE=5");

    BlastGetRequest get{"5S8YKEBH016", BlastFormat::text};
    CHECK(build_blast_get_url(get) ==
          "https://blast.ncbi.nlm.nih.gov/blast/Blast.cgi?CMD=Get&FORMAT_TYPE=Text&RID=5S8YKEBH016");

    CHECK(build_blast_get_url(BlastGetRequest{"ABC", BlastFormat::xml}).find(
              "FORMAT_TYPE=XML&RID=ABC") != std::string::npos);
}

TEST_CASE("builder input validation") {
    EutilsRequest both = esearch_req(EutilsDb::gene, "LMP10", 5);
    both.ids = std::vector<std::string>{"1"};
    CHECK_THROWS_AS(build_eutils_url(both), ConstructionError);

    EutilsRequest neither;
    neither.term.reset();
    neither.ids.reset();
    CHECK_THROWS_AS(build_eutils_url(neither), ConstructionError);

    EutilsRequest fetch_with_term = esearch_req(EutilsDb::gene, "LMP10", 5);
    fetch_with_term.function = EutilsFunction::efetch;
    CHECK_THROWS_AS(build_eutils_url(fetch_with_term), ConstructionError);

    EutilsRequest zero_retmax = esearch_req(EutilsDb::gene, "LMP10", 0);
    CHECK_THROWS_AS(build_eutils_url(zero_retmax), ConstructionError);

    BlastPutRequest zero_hits;
    zero_hits.query = "ATTCT";
    zero_hits.hitlist_size = 0;
    CHECK_THROWS_AS(build_blast_put_url(zero_hits), ConstructionError);

    BlastPutRequest empty_query;
    empty_query.query = "   ";
    CHECK_THROWS_AS(build_blast_put_url(empty_query), ConstructionError);

    BlastPutRequest bad_alphabet;
    bad_alphabet.query = "ATT4CT";
    CHECK_THROWS_AS(build_blast_put_url(bad_alphabet), ConstructionError);

    CHECK_THROWS_AS(build_blast_get_url(BlastGetRequest{"", BlastFormat::text}),
                    ConstructionError);
}

TEST_CASE("blast query whitespace is stripped before encoding") {
    BlastPutRequest put;
    put.query = " ATT CTG ";
    std::string url = build_blast_put_url(put);
    CHECK(url.find("QUERY=ATTCTG&") != std::string::npos);
}

TEST_CASE("url builders are pure") {
    EutilsRequest req = esearch_req(EutilsDb::omim, "Meesmann corneal dystrophy", 20);
    std::string first = build_eutils_url(req);
    for (int i = 0; i < 5; ++i) CHECK(build_eutils_url(req) == first);
}

TEST_CASE("parse_eutils_url inverts build_eutils_url on randomized requests") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> fn_pick(0, 2);
    std::uniform_int_distribution<int> db_pick(0, 2);
    std::uniform_int_distribution<int> retmax_pick(1, 500);
    std::uniform_int_distribution<int> len_pick(1, 24);
    std::uniform_int_distribution<int> id_count_pick(1, 6);
    const std::string term_alphabet =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .-+%&#";

    for (int iteration = 0; iteration < 300; ++iteration) {
        EutilsRequest req;
        req.function = static_cast<EutilsFunction>(fn_pick(rng));
        req.db = static_cast<EutilsDb>(db_pick(rng));
        req.retmax = retmax_pick(rng);
        req.retmode = coin(rng) ? RetMode::json : RetMode::text;
        if (coin(rng)) req.sort = "relevance";

        if (req.function == EutilsFunction::esearch) {
            std::string term;
            int len = len_pick(rng);
            for (int i = 0; i < len; ++i)
                term.push_back(term_alphabet[static_cast<size_t>(rng() % term_alphabet.size())]);
            if (util::trim(term).empty()) term = "x";
            req.term = term;
        } else {
            std::vector<std::string> ids;
            int count = id_count_pick(rng);
            for (int i = 0; i < count; ++i) ids.push_back(std::to_string(rng() % 100000000));
            req.ids = ids;
        }

        std::string url = build_eutils_url(req);
        EutilsRequest parsed = parse_eutils_url(url);
        CHECK(parsed == req);
        // Canonical URLs survive a parse/build round trip unchanged.
        CHECK(build_eutils_url(parsed) == url);
    }
}

TEST_CASE("blast URLs round-trip through their parsers") {
    BlastPutRequest put;
    put.query = kSeq;
    CHECK(parse_blast_put_url(build_blast_put_url(put)) == put);

    BlastGetRequest get{"5S8YKEBH016", BlastFormat::text};
    CHECK(parse_blast_get_url(build_blast_get_url(get)) == get);

    CHECK(is_blast_put_url(build_blast_put_url(put)));
    CHECK(is_blast_get_url(build_blast_get_url(get)));
    CHECK_FALSE(is_eutils_url(build_blast_put_url(put)));
}

TEST_CASE("extract_rid") {
    CHECK(extract_rid("<!--QBlastInfoBegin\n    RID = 5S8YKEBH016\n    RTOE = 15\n-->") ==
          "5S8YKEBH016");
    CHECK(extract_rid("RID=ABC123") == "ABC123");
    // First occurrence wins when the page repeats the field.
    CHECK(extract_rid("RID = FIRST1\n ... RID = SECOND2") == "FIRST1");
    CHECK_THROWS_AS(extract_rid("<html>no request id here</html>"), ExtractionError);
}

TEST_CASE("base overrides rewrite only matching canonical prefixes") {
    const std::string eutils_url =
        "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/esearch.fcgi?db=gene&retmax=5"
        "&retmode=json&sort=relevance&term=LMP10";
    CHECK(rewrite_base(eutils_url, kDefaultEutilsBase, "http://localhost:8080/eutils") ==
          "http://localhost:8080/eutils/esearch.fcgi?db=gene&retmax=5&retmode=json"
          "&sort=relevance&term=LMP10");
    CHECK(rewrite_base(eutils_url, kDefaultEutilsBase, "") == eutils_url);
    CHECK(rewrite_base(eutils_url, kDefaultBlastBase, "http://localhost:8080/blast") ==
          eutils_url);
}

TEST_CASE("truncate_for_context") {
    SUBCASE("under budget bodies pass through unchanged") {
        std::string body = "one two three four five six seven eight nine ten";
        auto result = truncate_for_context(body, 100);
        CHECK(result.text == body);
        CHECK_FALSE(result.truncated);
    }

    SUBCASE("oversized bodies keep head and tail under the budget") {
        std::string body;
        for (int i = 0; i < 10000; ++i) body += "w" + std::to_string(i) + " ";
        auto result = truncate_for_context(body, 1000);
        CHECK(result.truncated);
        CHECK(result.text.find("[...]") != std::string::npos);
        CHECK(util::count_words(result.text) <= 1000);
        // 3:1 head:tail split, so both ends of the body survive.
        CHECK(result.text.find("w0 ") == 0);
        CHECK(result.text.rfind("w9999") != std::string::npos);
    }

    SUBCASE("budget must be positive") {
        CHECK_THROWS_AS(truncate_for_context("body", 0), ConstructionError);
    }

    SUBCASE("multiplier scales the word allowance") {
        std::string body;
        for (int i = 0; i < 100; ++i) body += "word ";
        auto result = truncate_for_context(body, 100, TruncationPolicy{2.0});
        CHECK(result.truncated);
        CHECK(util::count_words(result.text) <= 50);
    }
}
