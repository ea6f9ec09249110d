#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "corefkit/formats/jsonl.hpp"
#include "test_support.hpp"

#ifndef COREFKIT_BIN
#error "COREFKIT_BIN must point at the built CLI binary"
#endif

#ifdef __unix__
#include <sys/wait.h>
#include <unistd.h>
#endif

using namespace corefkit;
using namespace corefkit::testing;

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("corefkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter));
  fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter));
  ++counter;
  std::string cmd =
      std::string(COREFKIT_BIN) + " " + args + " > " + out.string() + " 2> " + err.string();
  int rc = std::system(cmd.c_str());
  CliResult result;
#ifdef __unix__
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
#else
  result.exit_code = rc;
#endif
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

fs::path write_jsonl_file(const std::string& name, const std::vector<Document>& docs) {
  fs::path path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  write_jsonl(docs, out);
  return path;
}

} // namespace

TEST_CASE("cli --version reports toolkit and schema versions") {
  CliResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("corefkit") != std::string::npos);
  CHECK(r.out.find("schema") != std::string::npos);
}

TEST_CASE("cli enrich produces the tagged salt line and a sidecar") {
  fs::path docs = write_jsonl_file("salt.jsonl", {salt_document()});
  fs::path tagged = scratch_dir() / "salt_tagged.txt";
  fs::path index = scratch_dir() / "salt_tagged.idx";
  CliResult r = run_cli("enrich --docs " + docs.string() + " --out " + tagged.string() +
                        " --index " + index.string());
  REQUIRE(r.exit_code == 0);
  std::string text = slurp(tagged);
  CHECK(text.find("I never cook with <b_crf> salt <e_crf> it .") != std::string::npos);
  CHECK(slurp(index) == "salt\t0\nsalt\t1\n");
}

TEST_CASE("cli enrich output does not depend on the thread count") {
  std::mt19937 rng(808);
  std::vector<Document> docs;
  for (int i = 0; i < 40; ++i) docs.push_back(random_document(rng, padded("d", i)));
  fs::path input = write_jsonl_file("threads.jsonl", docs);
  fs::path out1 = scratch_dir() / "threads_1.txt";
  fs::path out4 = scratch_dir() / "threads_4.txt";
  REQUIRE(run_cli("enrich --docs " + input.string() + " --out " + out1.string() +
                  " --threads 1").exit_code == 0);
  REQUIRE(run_cli("enrich --docs " + input.string() + " --out " + out4.string() +
                  " --threads 4").exit_code == 0);
  CHECK(slurp(out1) == slurp(out4));
}

TEST_CASE("cli strip recovers the plain corpus from enriched text") {
  fs::path docs = write_jsonl_file("salt2.jsonl", {salt_document()});
  fs::path tagged = scratch_dir() / "strip_in.txt";
  fs::path plain = scratch_dir() / "strip_out.txt";
  REQUIRE(run_cli("enrich --docs " + docs.string() + " --out " + tagged.string()).exit_code == 0);
  CliResult r = run_cli("strip --in " + tagged.string() + " --out " + plain.string());
  REQUIRE(r.exit_code == 0);
  CHECK(slurp(plain) == "We bought the salt .\nI never cook with it .\n");
}

TEST_CASE("cli stats over an empty corpus exits zero with a header-only report") {
  fs::path empty = scratch_dir() / "empty.jsonl";
  spit(empty, "");
  CliResult r = run_cli("stats --docs " + empty.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "corpus\tgenre\ttokens\tmentions\tchains\tavg_len\tmax_len\taggregation\n");
  CHECK(r.err.empty());
}

TEST_CASE("cli stats reports micro and macro rows") {
  std::mt19937 rng(4);
  std::vector<Document> docs;
  for (int i = 0; i < 5; ++i) docs.push_back(random_document(rng, padded("d", i)));
  fs::path input = write_jsonl_file("stats.jsonl", docs);
  CliResult r = run_cli("stats --docs " + input.string() + " --label demo --by-genre");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("demo\tall") != std::string::npos);
  CHECK(r.out.find("micro") != std::string::npos);
  CHECK(r.out.find("macro") != std::string::npos);
}

TEST_CASE("cli eval bleu prints 100.0 for identical files") {
  fs::path hyp = scratch_dir() / "hyp.txt";
  fs::path ref = scratch_dir() / "ref.txt";
  spit(hyp, "the cat sat on the mat .\nanother line here .\n");
  spit(ref, "the cat sat on the mat .\nanother line here .\n");
  CliResult r = run_cli("eval bleu --hyp " + hyp.string() + " --ref " + ref.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "100.0\n");
}

TEST_CASE("cli eval bleu report row carries labels and pass-through METEOR") {
  fs::path hyp = scratch_dir() / "hyp2.txt";
  fs::path ref = scratch_dir() / "ref2.txt";
  fs::path subset = scratch_dir() / "subset.txt";
  spit(hyp, "a b c d\nthe cat sat on the mat .\n");
  spit(ref, "x y z w\nthe cat sat on the mat .\n");
  spit(subset, "1\n");
  CliResult r = run_cli("eval bleu --hyp " + hyp.string() + " --ref " + ref.string() +
                        " --subset " + subset.string() +
                        " --report --system S1 --genre news --meteor 55.87");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out ==
        "system\tgenre\tslice\tbleu\tmeteor\n"
        "S1\tnews\tcoref\t100.00\t55.87\n");
}

TEST_CASE("cli subset lists enriched line indices") {
  fs::path docs = write_jsonl_file("subset.jsonl", {salt_document(), biles_document()});
  CliResult r = run_cli("subset --docs " + docs.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "1\n2\n3\n"); // salt line 1; both biles lines
}

TEST_CASE("cli errors builds the report from records plus documents") {
  Document doc = salt_document();
  fs::path docs = write_jsonl_file("errors_docs.jsonl", {doc});
  fs::path records = scratch_dir() / "records.tsv";
  spit(records,
       "doc_id\tsystem\tmention_id\tcorrect\tcategory\n"
       "salt\tS1\tm0\tfalse\tgender\n"
       "salt\tS1\tm1\ttrue\t\n");
  CliResult r = run_cli("errors --records " + records.string() + " --docs S1=" + docs.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("S1\tnews\t2\t1\t50.0") != std::string::npos);
}

TEST_CASE("cli convert round-trips conll through jsonl") {
  fs::path conll = scratch_dir() / "fix.conll";
  spit(conll,
       "#begin document (rt); part 000\n"
       "rt\t0\t0\tshe\tPRP\t(0)\n"
       "rt\t0\t1\tsees\t-\t-\n"
       "rt\t0\t2\tthe\t-\t(1\n"
       "rt\t0\t3\tsalt\t-\t1)\n"
       "\n"
       "#end document\n");
  fs::path jsonl = scratch_dir() / "fix.jsonl";
  fs::path back = scratch_dir() / "fix_back.conll";
  REQUIRE(run_cli("convert --from conll --in " + conll.string() + " --to jsonl --out " +
                  jsonl.string()).exit_code == 0);
  REQUIRE(run_cli("convert --from jsonl --in " + jsonl.string() + " --to conll --out " +
                  back.string()).exit_code == 0);
  CHECK(slurp(back) == slurp(conll));
}

TEST_CASE("cli exit codes distinguish usage, parse and data errors") {
  SECTION("usage error") {
    CliResult r = run_cli("no-such-subcommand");
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
  }
  SECTION("parse error") {
    fs::path bad = scratch_dir() / "bad.jsonl";
    spit(bad, "{broken\n");
    fs::path out = scratch_dir() / "bad_out.txt";
    CliResult r = run_cli("enrich --docs " + bad.string() + " --out " + out.string());
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("error:", 0) == 0);
    CHECK_FALSE(fs::exists(out)); // failed runs leave no output file
  }
  SECTION("data invariant violation") {
    fs::path bad = scratch_dir() / "invalid.jsonl";
    spit(bad,
         R"({"id":"d","genre":"","sentences":[["x"]],"mentions":{"m0":{"chain_id":"c","span":{"sent":0,"start":0,"end":0}}},"chains":[{"id":"c","mentions":["m0"]}]})"
         "\n");
    fs::path out = scratch_dir() / "invalid_out.txt";
    CliResult r = run_cli("enrich --docs " + bad.string() + " --out " + out.string());
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("empty span") != std::string::npos);
  }
}
