#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "corefkit/error_analysis.hpp"
#include "test_support.hpp"

using namespace corefkit;
using namespace corefkit::testing;

namespace {

/// n mentions over a one-token sentence, one singleton chain each.
Document mention_bag(const std::string& id, const std::string& genre, int n) {
  Document doc;
  doc.id = id;
  doc.genre = genre;
  doc.sentences = {{"w"}};
  for (int i = 0; i < n; ++i) {
    Chain chain;
    chain.id = padded("c", i);
    add_chain(doc, chain, {make_mention(padded("m", i), chain.id, 0, 0, 1)});
  }
  return doc;
}

ErrorRecord error_record(const std::string& doc_id, const std::string& system,
                         const std::string& mention, const char* category) {
  ErrorRecord r;
  r.doc_id = doc_id;
  r.system = system;
  r.mention_id = mention;
  r.correct = false;
  r.category = ErrorCategory::parse(category);
  return r;
}

} // namespace

////////////////////////////////////////////////////////////////////////////////
// Categories and the record loader
////////////////////////////////////////////////////////////////////////////////

TEST_CASE("ErrorCategory::parse maps the ten closed categories") {
  CHECK(ErrorCategory::parse("gender").kind == ErrorKind::gender);
  CHECK(ErrorCategory::parse("case").kind == ErrorKind::case_error);
  CHECK(ErrorCategory::parse("wrong named entity").kind == ErrorKind::wrong_named_entity);
  CHECK(ErrorCategory::parse("Wrong_Word").kind == ErrorKind::wrong_word);
  CHECK(ErrorCategory::parse("addressee reference").kind == ErrorKind::addressee_reference);
  ErrorCategory open = ErrorCategory::parse("hallucination");
  CHECK(open.kind == ErrorKind::other);
  CHECK(open.label == "hallucination");
  CHECK(open.name() == "hallucination");
}

TEST_CASE("load_error_records parses the documented TSV schema") {
  std::istringstream in(
      "doc_id\tsystem\tmention_id\tcorrect\tcategory\n"
      "d1\tS1\tm4\tfalse\tgender\n"
      "d1\tS1\tm5\ttrue\t\n"
      "d1\tS1\tm6\tfalse\thallucination\tcombined with a missing word\n");
  std::vector<ErrorRecord> records = load_error_records(in);
  REQUIRE(records.size() == 3);
  CHECK(records[0].correct == false);
  REQUIRE(records[0].category.has_value());
  CHECK(records[0].category->kind == ErrorKind::gender);
  CHECK(records[1].correct == true);
  CHECK_FALSE(records[1].category.has_value());
  CHECK(records[2].category->kind == ErrorKind::other);
  CHECK(records[2].category->label == "hallucination");
  CHECK(records[2].note == "combined with a missing word");
}

TEST_CASE("load_error_records rejects malformed rows with the line number") {
  SECTION("incorrect mention without a category") {
    std::istringstream in(
        "doc_id\tsystem\tmention_id\tcorrect\tcategory\n"
        "d1\tS1\tm4\tfalse\t\n");
    REQUIRE_THROWS_MATCHES(load_error_records(in), ParseError,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("line 2")));
  }
  SECTION("category on a correct mention") {
    std::istringstream in(
        "doc_id\tsystem\tmention_id\tcorrect\tcategory\n"
        "d1\tS1\tm4\ttrue\tgender\n");
    REQUIRE_THROWS_AS(load_error_records(in), ParseError);
  }
  SECTION("bad boolean") {
    std::istringstream in(
        "doc_id\tsystem\tmention_id\tcorrect\tcategory\n"
        "d1\tS1\tm4\tmaybe\tgender\n");
    REQUIRE_THROWS_AS(load_error_records(in), ParseError);
  }
  SECTION("bad header") {
    std::istringstream in("a\tb\tc\td\te\n");
    REQUIRE_THROWS_MATCHES(load_error_records(in), ParseError,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("header")));
  }
}

////////////////////////////////////////////////////////////////////////////////
// build_report
////////////////////////////////////////////////////////////////////////////////

TEST_CASE("build_report reproduces the 117-over-1216 error rate") {
  std::map<std::string, std::vector<Document>> docs;
  docs["S1"] = {mention_bag("d1", "news", 1216)};
  std::vector<ErrorRecord> records;
  for (int i = 0; i < 117; ++i) records.push_back(error_record("d1", "S1", padded("m", i), "gender"));
  ErrorReport rep = build_report(records, docs, "S1", "news");
  CHECK(rep.total_mentions == 1216);
  CHECK(rep.total_errors == 117);
  CHECK(render_percent(rep.rate) == "9.6");
}

TEST_CASE("build_report with zero errors renders a zero rate and omits fractions") {
  std::map<std::string, std::vector<Document>> docs;
  docs["S1"] = {mention_bag("d1", "news", 10)};
  ErrorReport rep = build_report({}, docs, "S1", "news");
  CHECK(rep.total_errors == 0);
  CHECK(render_percent(rep.rate) == "0.0");
  CHECK_FALSE(rep.antecedent_fraction.has_value());
  CHECK_FALSE(rep.np_fraction.has_value());
  CHECK(render_fraction(rep.np_fraction) == "-");
}

TEST_CASE("build_report splits antecedent vs anaphor errors 0.30/0.70") {
  Document doc = mention_bag("d1", "news", 10);
  int i = 0;
  for (auto& [id, m] : doc.mentions) {
    m.function = i < 3 ? CohesiveFunction::antecedent : CohesiveFunction::anaphoric;
    ++i;
  }
  std::map<std::string, std::vector<Document>> docs;
  docs["S1"] = {doc};
  std::vector<ErrorRecord> records;
  for (int k = 0; k < 10; ++k) records.push_back(error_record("d1", "S1", padded("m", k), "gender"));
  ErrorReport rep = build_report(records, docs, "S1", "news");
  CHECK(rep.antecedent_errors == 3);
  CHECK(rep.anaphor_errors == 7);
  CHECK(render_fraction(rep.antecedent_fraction) == "0.30");
  CHECK(render_fraction(rep.anaphor_fraction) == "0.70");
  CHECK(*rep.antecedent_fraction + *rep.anaphor_fraction == Rational(1));
}

TEST_CASE("build_report keeps verb phrases out of the NP/pronoun split") {
  Document doc = mention_bag("d1", "news", 4);
  doc.mentions.at("m0000").category = MentionCategory::pronoun;
  doc.mentions.at("m0001").category = MentionCategory::nominal_phrase;
  doc.mentions.at("m0002").category = MentionCategory::proper_name;
  doc.mentions.at("m0003").category = MentionCategory::verb_phrase;
  std::map<std::string, std::vector<Document>> docs;
  docs["S1"] = {doc};
  std::vector<ErrorRecord> records;
  for (int k = 0; k < 4; ++k)
    records.push_back(error_record("d1", "S1", padded("m", k), "wrong word"));
  ErrorReport rep = build_report(records, docs, "S1", "news");
  CHECK(rep.np_errors == 2);
  CHECK(rep.pronoun_errors == 1);
  CHECK(rep.vp_clause_errors == 1);
  CHECK(render_fraction(rep.np_fraction) == "0.67");
  CHECK(render_fraction(rep.pronoun_fraction) == "0.33");
  CHECK(rep.per_category.at(ErrorCategory::parse("wrong_word")) == 4);
}

TEST_CASE("build_report rejects unresolvable mentions") {
  std::map<std::string, std::vector<Document>> docs;
  docs["S1"] = {mention_bag("d1", "news", 2)};
  SECTION("unknown mention id") {
    std::vector<ErrorRecord> records = {error_record("d1", "S1", "m9999", "gender")};
    REQUIRE_THROWS_MATCHES(build_report(records, docs, "S1", "news"), DataError,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("m9999")));
  }
  SECTION("unknown document") {
    std::vector<ErrorRecord> records = {error_record("nope", "S1", "m0000", "gender")};
    REQUIRE_THROWS_AS(build_report(records, docs, "S1", "news"), DataError);
  }
}

TEST_CASE("reports are invariant under record order") {
  Document doc = mention_bag("d1", "ted", 30);
  int i = 0;
  for (auto& [id, m] : doc.mentions) {
    m.function = (i % 3 == 0) ? CohesiveFunction::antecedent : CohesiveFunction::anaphoric;
    m.category = (i % 2 == 0) ? MentionCategory::pronoun : MentionCategory::nominal_phrase;
    ++i;
  }
  std::map<std::string, std::vector<Document>> docs;
  docs["S2"] = {doc};
  std::vector<ErrorRecord> records;
  const char* categories[] = {"gender", "number", "case", "ambiguous", "wrong word"};
  for (int k = 0; k < 20; ++k)
    records.push_back(error_record("d1", "S2", padded("m", k), categories[k % 5]));

  ErrorReport base = build_report(records, docs, "S2", "ted");
  std::mt19937 rng(11);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(records.begin(), records.end(), rng);
    ErrorReport rep = build_report(records, docs, "S2", "ted");
    CHECK(rep.total_errors == base.total_errors);
    CHECK(rep.per_category == base.per_category);
    CHECK(rep.antecedent_errors == base.antecedent_errors);
    CHECK(rep.np_errors == base.np_errors);
  }

  // category counts always add up to the error total
  long long sum = 0;
  for (const auto& [cat, count] : base.per_category) sum += count;
  CHECK(sum == base.total_errors);
}

TEST_CASE("build_all_reports emits one row per system and genre") {
  std::map<std::string, std::vector<Document>> docs;
  docs["S1"] = {mention_bag("d1", "news", 5), mention_bag("d2", "ted", 5)};
  docs["S2"] = {mention_bag("d3", "news", 5)};
  std::vector<ErrorRecord> records = {error_record("d1", "S1", "m0000", "gender")};
  std::vector<ErrorReport> reports = build_all_reports(records, docs);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].system == "S1");
  CHECK(reports[0].genre == "news");
  CHECK(reports[0].total_errors == 1);
  CHECK(reports[1].genre == "ted");
  CHECK(reports[2].system == "S2");
}

TEST_CASE("error report TSV and breakdown render as documented") {
  Document doc = mention_bag("d1", "news", 10);
  for (auto& [id, m] : doc.mentions) m.function = CohesiveFunction::anaphoric;
  std::map<std::string, std::vector<Document>> docs;
  docs["S1"] = {doc};
  std::vector<ErrorRecord> records = {error_record("d1", "S1", "m0000", "gender"),
                                      error_record("d1", "S1", "m0001", "gender"),
                                      error_record("d1", "S1", "m0002", "spelling error")};
  std::vector<ErrorReport> reports = {build_report(records, docs, "S1", "news")};
  std::ostringstream out;
  write_error_reports_tsv(reports, out);
  CHECK(out.str() ==
        "system\tgenre\ttotal_mentions\ttotal_errors\trate_pct\tant_frac\tana_frac\t"
        "np_frac\tpron_frac\tvp_clause_errors\n"
        "S1\tnews\t10\t3\t30.0\t0.00\t1.00\t1.00\t0.00\t0\n");

  std::ostringstream breakdown;
  write_category_breakdown_tsv(reports, breakdown);
  CHECK(breakdown.str() ==
        "category\tsystem\tgenre\tcount\tfraction\n"
        "gender\tS1\tnews\t2\t0.67\n"
        "spelling_error\tS1\tnews\t1\t0.33\n");
}
