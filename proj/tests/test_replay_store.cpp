#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "geneqa/errors.hpp"
#include "geneqa/ncbi/client.hpp"
#include "geneqa/replay/cassette.hpp"
#include "geneqa/replay/script.hpp"
#include "geneqa/util/strings.hpp"

using namespace geneqa;
using namespace geneqa::replay;

namespace {

const std::string kFixtures = GENEQA_FIXTURES_DIR;

Cassette demo_cassette() {
    return Cassette::load(kFixtures + "/cassettes/sessions.json");
}

}  // namespace

TEST_CASE("replay lookup returns recorded payloads verbatim") {
    auto cassette = demo_cassette();
    const std::string url =
        "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/esummary.fcgi"
        "?db=snp&retmax=10&retmode=json&id=1217074595";
    const CassetteEntry& entry = cassette.lookup_next(url);
    CHECK(entry.status == 200);
    CHECK(entry.body.find("\"genes\":[{\"name\":\"LINC01270\"") != std::string::npos);
}

TEST_CASE("replay miss is an error, never a live call") {
    auto transport = ReplayTransport(demo_cassette());
    CHECK_THROWS_AS(transport.get("https://example.test/never-recorded"), ReplayMissError);
    CHECK(transport.request_count() == 0);
}

TEST_CASE("record then replay round-trips the body") {
    Cassette cassette;
    cassette.add(CassetteEntry{"https://example.test/a", 200, "payload-1", "", ""});
    const std::string path = std::filesystem::temp_directory_path() / "geneqa_cassette_rt.json";
    cassette.save(path);
    Cassette loaded = Cassette::load(path);
    CHECK(loaded.size() == 1);
    CHECK(loaded.lookup_next("https://example.test/a").body == "payload-1");
    std::remove(path.c_str());
}

TEST_CASE("a recording wrapper captures live exchanges for later replay") {
    class FixedTransport : public ncbi::Transport {
    public:
        ncbi::RawResponse get(const std::string& url) override {
            return ncbi::RawResponse{url, 200, "live body for " + url, 42};
        }
        std::string kind() const override { return "live"; }
    };

    auto path =
        (std::filesystem::temp_directory_path() / "geneqa_recorded.json").string();
    {
        RecordingTransport recorder(std::make_shared<FixedTransport>(), path);
        CHECK(recorder.get("https://example.test/one").body == "live body for https://example.test/one");
        CHECK(recorder.get("https://example.test/two").status == 200);
        CHECK(recorder.kind() == "record");
    }

    ReplayTransport replayed(Cassette::load(path));
    CHECK(replayed.get("https://example.test/one").body ==
          "live body for https://example.test/one");
    CHECK(replayed.get("https://example.test/two").body ==
          "live body for https://example.test/two");
    std::remove(path.c_str());
}

TEST_CASE("repeated URLs play back in order and stick at the last entry") {
    Cassette cassette;
    cassette.add(CassetteEntry{"https://example.test/poll", 200, "Status=WAITING", "", ""});
    cassette.add(CassetteEntry{"https://example.test/poll", 200, "Status=READY\nresults", "", ""});
    CHECK(cassette.lookup_next("https://example.test/poll").body == "Status=WAITING");
    CHECK(cassette.lookup_next("https://example.test/poll").body == "Status=READY\nresults");
    CHECK(cassette.lookup_next("https://example.test/poll").body == "Status=READY\nresults");

    cassette.rewind();
    CHECK(cassette.lookup_next("https://example.test/poll").body == "Status=WAITING");
}

TEST_CASE("blast polling issues one Get per pending status") {
    // First Get answers WAITING, second answers the final report.
    Cassette cassette;
    const std::string put_url =
        "https://blast.ncbi.nlm.nih.gov/blast/Blast.cgi?CMD=Put&PROGRAM=blastn&MEGABLAST=on"
        "&DATABASE=nt&FORMAT_TYPE=XML&QUERY=ATTCTGCC&HITLIST_SIZE=5";
    const std::string get_url =
        "https://blast.ncbi.nlm.nih.gov/blast/Blast.cgi?CMD=Get&FORMAT_TYPE=XML&RID=TESTRID01";
    cassette.add(CassetteEntry{put_url, 200, "RID = TESTRID01", "", ""});
    cassette.add(CassetteEntry{get_url, 200, "Status=WAITING", "", ""});
    cassette.add(
        CassetteEntry{get_url, 200, "Sequences producing significant alignments: hit", "", ""});

    auto transport = std::make_shared<ReplayTransport>(std::move(cassette));
    ncbi::RateLimitPolicy policy;
    policy.max_requests_per_second = 10000.0;
    policy.blast_poll_interval = std::chrono::milliseconds(1);
    policy.blast_poll_timeout = std::chrono::milliseconds(100);
    ncbi::NcbiClient client(transport, policy);

    ncbi::BlastPutRequest put;
    put.query = "ATTCTGCC";
    ncbi::RawResponse final = client.blast_submit_and_poll(put);
    CHECK(final.body.find("significant alignments") != std::string::npos);
    // One Put plus exactly two Gets.
    CHECK(transport->request_count() == 3);
    int gets = 0;
    for (const auto& url : transport->request_log())
        if (url.find("CMD=Get") != std::string::npos) ++gets;
    CHECK(gets == 2);
}

TEST_CASE("the recorded alignment submission round-trips through submit-and-poll") {
    ncbi::BlastPutRequest put;
    put.query =
        "ATTCTGCCTTTAGTAATTTGATGACAGAGACTTCTTGGGAACCACAGCCAGGGAGCCACC"
        "CTTTACTCCACCAACAGGTGGCTTATATCCAATCTGAGAAAGAAAGAAAAAAAAAAAAGT"
        "ATTTCTCT";

    // Re-key the recorded demonstration bodies under the URLs this client
    // will produce (the demonstration itself fetched the Get as Text).
    auto demo = demo_cassette();
    const std::string put_page = demo.lookup_next(ncbi::build_blast_put_url(put)).body;
    const std::string report =
        demo.lookup_next("https://blast.ncbi.nlm.nih.gov/blast/Blast.cgi"
                         "?CMD=Get&FORMAT_TYPE=Text&RID=5S8YKEBH016")
            .body;
    Cassette cassette;
    cassette.add(CassetteEntry{ncbi::build_blast_put_url(put), 200, put_page, "", ""});
    cassette.add(CassetteEntry{
        ncbi::build_blast_get_url(ncbi::BlastGetRequest{"5S8YKEBH016", put.format_type}), 200,
        report, "", ""});

    auto transport = std::make_shared<ReplayTransport>(std::move(cassette));
    ncbi::RateLimitPolicy policy;
    policy.max_requests_per_second = 10000.0;
    policy.blast_poll_interval = std::chrono::milliseconds(1);
    policy.blast_poll_timeout = std::chrono::milliseconds(100);
    ncbi::NcbiClient client(transport, policy);

    ncbi::RawResponse final = client.blast_submit_and_poll(put);
    CHECK(final.body.find("CP034493.1 Eukaryotic synthetic construct chromosome 15") !=
          std::string::npos);
    CHECK(transport->request_count() == 2);
}

TEST_CASE("polling times out when results never become ready") {
    Cassette cassette;
    const std::string get_url =
        "https://blast.ncbi.nlm.nih.gov/blast/Blast.cgi?CMD=Get&FORMAT_TYPE=Text&RID=STUCK0001";
    cassette.add(CassetteEntry{get_url, 200, "Status=WAITING", "", ""});

    auto transport = std::make_shared<ReplayTransport>(std::move(cassette));
    ncbi::RateLimitPolicy policy;
    policy.max_requests_per_second = 10000.0;
    policy.blast_poll_interval = std::chrono::milliseconds(1);
    policy.blast_poll_timeout = std::chrono::milliseconds(5);
    ncbi::NcbiClient client(transport, policy);

    CHECK_THROWS_AS(client.blast_poll(ncbi::BlastGetRequest{"STUCK0001", ncbi::BlastFormat::text}),
                    PollTimeoutError);
}

TEST_CASE("scripted backend replays steps and checks prompt suffixes") {
    GenerationScript script;
    script.steps.push_back({"hello ", std::nullopt});
    script.steps.push_back({"world", std::string("prompt hello ")});
    ScriptedBackend backend(script);

    CHECK(backend.next_chunk("prompt ") == "hello ");
    CHECK(backend.next_chunk("prompt hello ") == "world");
    CHECK_THROWS_AS(backend.next_chunk("prompt hello world"), ScriptExhaustedError);
}

TEST_CASE("scripted backend detects prompt desync") {
    GenerationScript script;
    script.steps.push_back({"chunk", std::string("expected tail")});
    ScriptedBackend backend(script);
    CHECK_THROWS_AS(backend.next_chunk("something else entirely"), ScriptDesyncError);
}

TEST_CASE("script bundle resolution prefers question match then specificity") {
    ScriptBundle bundle;
    bundle.add({"q1", {}, GenerationScript{{{"fallback", std::nullopt}}}});
    bundle.add({"q1", {"Dm1"}, GenerationScript{{{"with-dm1", std::nullopt}}}});
    bundle.add({"", {}, GenerationScript{{{"wildcard", std::nullopt}}}});

    auto with = bundle.resolve("q1", {"Dc1", "Dm1"});
    REQUIRE(with.has_value());
    CHECK(with->steps[0].emit == "with-dm1");

    auto without = bundle.resolve("q1", {"Dm4"});
    REQUIRE(without.has_value());
    CHECK(without->steps[0].emit == "fallback");

    auto other = bundle.resolve("unknown question", {});
    REQUIRE(other.has_value());
    CHECK(other->steps[0].emit == "wildcard");
}

TEST_CASE("bundle fixture loads and resolves the demo questions") {
    auto bundle = ScriptBundle::load(kFixtures + "/scripts/sessions.json");
    CHECK(bundle.size() >= 6);
    auto script = bundle.resolve("What is the official gene symbol of LMP10?", {"Dm1", "Dm4"});
    REQUIRE(script.has_value());
    CHECK(util::ends_with(script->steps.back().emit, "Answer: PSMB10\n\n"));
}
