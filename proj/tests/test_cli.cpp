#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "geneqa/util/strings.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = GENEQA_CLI_PATH;
const std::string kFixtures = GENEQA_FIXTURES_DIR;
const std::string kPrompts = GENEQA_PROMPTS_DIR;

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    static int counter = 0;
    auto capture = fs::temp_directory_path() / ("geneqa_cli_out_" + std::to_string(counter++));
    std::string command = kCli + " " + args + " > " + capture.string() + " 2>&1";
    int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = geneqa::util::read_file(capture.string());
    fs::remove(capture);
    return result;
}

std::string scripted_replay_args() {
    return "--backend scripted --transport replay --prompts-dir " + kPrompts + " --cassette " +
           kFixtures + "/cassettes/sessions.json --script " + kFixtures +
           "/scripts/sessions.json";
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("ask answers a single-hop question from the replay fixtures") {
    auto result = run_cli("ask \"Which gene is SNP rs1217074595 associated with?\" " +
                          scripted_replay_args());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("answer: LINC01270") != std::string::npos);
    CHECK(result.output.find("termination: answered") != std::string::npos);
}

TEST_CASE("ask with a zero call budget exits nonzero") {
    auto result = run_cli("ask \"Which gene is SNP rs1217074595 associated with?\" --max-calls 0 " +
                          scripted_replay_args());
    CHECK(result.exit_code != 0);
    CHECK(result.output.find("budget_exhausted") != std::string::npos);
}

TEST_CASE("ask --cot prints the numbered sub-question chain") {
    auto result = run_cli(
        "ask \"What is the function of the gene associated with SNP rs1241371358?\" --cot " +
        scripted_replay_args());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("Sub-question 1:") != std::string::npos);
    CHECK(result.output.find("Sub-question 2:") != std::string::npos);
    CHECK(result.output.find("answer: Predicted to be active in cytosol.") != std::string::npos);
}

TEST_CASE("ask rejects inconsistent configuration") {
    auto result = run_cli("ask \"q\" --backend scripted --transport replay --cassette " +
                          kFixtures + "/cassettes/sessions.json");
    CHECK(result.exit_code != 0);  // scripted backend without --script
    CHECK(result.output.find("--script") != std::string::npos);
}

TEST_CASE("bench scores the single-hop sample tasks and writes reports") {
    fs::path out = fresh_dir("geneqa_bench_out");
    auto result = run_cli("bench --tasks " + kFixtures + "/tasks/geneturing_sample.jsonl --out " +
                          out.string() + " " + scripted_replay_args());
    REQUIRE(result.exit_code == 0);

    REQUIRE(fs::exists(out / "report.json"));
    REQUIRE(fs::exists(out / "report.txt"));
    REQUIRE(fs::exists(out / "errors.txt"));

    json report = json::parse(geneqa::util::read_file((out / "report.json").string()));
    // Hand-computed from the fixture scores: four solved tasks and one
    // unanswerable one, (1+1+1+1+0)/5 = 0.8.
    CHECK(report["macro_average"].get<double>() == doctest::Approx(0.8));
    CHECK(report["per_task"]["gene_alias"].get<double>() == doctest::Approx(1.0));
    CHECK(report["per_task"]["gene_location"].get<double>() == doctest::Approx(0.0));
    CHECK(report["error_counts"]["gene_location"]["E4"].get<int>() == 1);
    CHECK(report["provenance"]["preset"].get<std::string>() == "full");
    CHECK(report["provenance"]["transport"].get<std::string>() == "replay");
    CHECK(report["provenance"]["fixture_hashes"].size() >= 3);

    // One transcript file per instance, named by kind and question hash.
    CHECK(std::distance(fs::directory_iterator(out / "transcripts"),
                        fs::directory_iterator{}) == 5);
}

TEST_CASE("bench is deterministic and resumable under scripted replay") {
    fs::path first = fresh_dir("geneqa_bench_det1");
    fs::path second = fresh_dir("geneqa_bench_det2");
    std::string base = "bench --tasks " + kFixtures + "/tasks/geneturing_sample.jsonl " +
                       scripted_replay_args();

    REQUIRE(run_cli(base + " --out " + first.string()).exit_code == 0);
    REQUIRE(run_cli(base + " --out " + second.string()).exit_code == 0);

    for (const auto* file : {"report.json", "report.txt", "errors.txt"}) {
        CHECK(geneqa::util::read_file((first / file).string()) ==
              geneqa::util::read_file((second / file).string()));
    }
    for (const auto& entry : fs::directory_iterator(first / "transcripts")) {
        auto other = second / "transcripts" / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(geneqa::util::read_file(entry.path().string()) ==
              geneqa::util::read_file(other.string()));
    }

    // Re-running over an existing output reuses the transcripts and leaves
    // the reports byte-identical.
    auto before = geneqa::util::read_file((first / "report.json").string());
    REQUIRE(run_cli(base + " --out " + first.string()).exit_code == 0);
    CHECK(geneqa::util::read_file((first / "report.json").string()) == before);

    // Parallel sessions do not change any output byte (per-session clocks).
    fs::path parallel = fresh_dir("geneqa_bench_det3");
    REQUIRE(run_cli(base + " --parallel 4 --out " + parallel.string()).exit_code == 0);
    CHECK(geneqa::util::read_file((parallel / "report.json").string()) == before);
    for (const auto& entry : fs::directory_iterator(first / "transcripts")) {
        auto other = parallel / "transcripts" / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(geneqa::util::read_file(entry.path().string()) ==
              geneqa::util::read_file(other.string()));
    }
}

TEST_CASE("bench records the preset in the report provenance") {
    fs::path full = fresh_dir("geneqa_bench_full");
    fs::path slim = fresh_dir("geneqa_bench_slim");
    std::string base = "bench --tasks " + kFixtures + "/tasks/geneturing_sample.jsonl " +
                       scripted_replay_args();
    REQUIRE(run_cli(base + " --preset full --out " + full.string()).exit_code == 0);
    REQUIRE(run_cli(base + " --preset slim --out " + slim.string()).exit_code == 0);

    json full_report = json::parse(geneqa::util::read_file((full / "report.json").string()));
    json slim_report = json::parse(geneqa::util::read_file((slim / "report.json").string()));
    CHECK(full_report["provenance"]["preset"] != slim_report["provenance"]["preset"]);
    // One-shot flags differ too: the SNP association demonstration is only
    // part of the full prompt.
    CHECK(full_report["one_shot_flags"]["gene_snp_association"].get<bool>());
    CHECK_FALSE(slim_report["one_shot_flags"]["gene_snp_association"].get<bool>());
}

TEST_CASE("bench runs the multi-hop samples with --cot") {
    fs::path out = fresh_dir("geneqa_bench_hop");
    auto result = run_cli("bench --tasks " + kFixtures + "/tasks/genehop_sample.jsonl --cot --out " +
                          out.string() + " " + scripted_replay_args());
    REQUIRE(result.exit_code == 0);
    json report = json::parse(geneqa::util::read_file((out / "report.json").string()));
    CHECK(report["macro_average"].get<double>() == doctest::Approx(1.0));
    CHECK(report["per_task"]["hop_snp_gene_function"].get<double>() == doctest::Approx(1.0));
    CHECK(report["per_task"]["hop_disease_gene_location"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("ablate emits the component matrix with deltas against full") {
    fs::path out = fresh_dir("geneqa_ablate_out");
    auto result = run_cli("ablate --tasks " + kFixtures + "/tasks/ablate_sample.jsonl --out " +
                          out.string() + " --backend scripted --transport replay --prompts-dir " +
                          kPrompts + " --cassette " + kFixtures +
                          "/cassettes/sessions.json --script " + kFixtures +
                          "/scripts/ablate.json");
    REQUIRE(result.exit_code == 0);
    REQUIRE(fs::exists(out / "matrix.json"));

    json matrix = json::parse(geneqa::util::read_file((out / "matrix.json").string()));
    // Full baseline plus six ablations plus six probes.
    CHECK(matrix.size() == 13);

    // The alias task needs its demonstration; the alignment task needs the
    // BLAST demonstration.
    CHECK(matrix["only-Dm4"]["gene_alias"]["score"].get<double>() == doctest::Approx(0.0));
    CHECK(matrix["only-Dm4"]["dna_to_human_genome"]["score"].get<double>() == doctest::Approx(1.0));
    CHECK(matrix["only-Dm1"]["gene_alias"]["score"].get<double>() == doctest::Approx(1.0));
    CHECK(matrix["no-Dm1"]["gene_alias"]["score"].get<double>() == doctest::Approx(0.0));
    CHECK(matrix["no-Dc1"]["gene_alias"]["score"].get<double>() == doctest::Approx(1.0));

    // Self-comparison: the full row's deltas are all zero.
    for (const auto& [kind, cell] : matrix["full"].items()) {
        (void)kind;
        CHECK(cell["delta_vs_full"].get<double>() == doctest::Approx(0.0));
    }
}
