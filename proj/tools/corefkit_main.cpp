// corefkit command line front end.
//
// Exit codes: 0 success, 1 usage/environment error, 2 input parse error,
// 3 data invariant violation.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "corefkit/corefkit.hpp"

using namespace corefkit;

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("COREFKIT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

/// File or stdout sink. File output lands under the final name only on
/// commit; an error path leaves nothing behind.
class OutputTarget {
public:
  explicit OutputTarget(std::string path) : path_(std::move(path)) {
    if (to_stdout()) return;
    tmp_ = path_ + ".tmp";
    file_.open(tmp_, std::ios::binary);
    if (!file_) throw std::runtime_error("cannot open output file '" + path_ + "'");
  }

  OutputTarget(const OutputTarget&) = delete;
  OutputTarget& operator=(const OutputTarget&) = delete;

  std::ostream& stream() {
    if (to_stdout()) return buffer_;
    return file_;
  }

  void commit() {
    if (to_stdout()) {
      std::cout << buffer_.str();
      std::cout.flush();
    } else {
      file_.close();
      std::filesystem::rename(tmp_, path_);
    }
    committed_ = true;
  }

  ~OutputTarget() {
    if (!committed_ && !to_stdout()) {
      file_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }

private:
  bool to_stdout() const { return path_.empty() || path_ == "-"; }

  std::string path_;
  std::string tmp_;
  std::ofstream file_;
  std::ostringstream buffer_;
  bool committed_ = false;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  return in;
}

void validate_or_throw(const Document& doc) {
  std::vector<std::string> violations = validate_document(doc);
  if (!violations.empty())
    throw DataError("document " + doc.id + ": " + violations.front() +
                    (violations.size() > 1
                         ? " (+" + std::to_string(violations.size() - 1) + " more)"
                         : ""));
}

std::vector<Document> load_documents(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<Document> docs = parse_jsonl(in);
  for (const Document& doc : docs) validate_or_throw(doc);
  return docs;
}

std::vector<std::vector<std::string>> load_token_lines(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lines.empty()) strip_utf8_bom(line);
    lines.push_back(split_tokens(line));
  }
  return lines;
}

////////////////////////////////////////////////////////////////////////////////
// enrich / strip / subset
////////////////////////////////////////////////////////////////////////////////

struct EnrichOpts {
  std::string docs;
  std::string out;
  std::string index;
  int min_chain_size = 2;
  int max_head_tokens = 3;
  std::string tag_open = "<b_crf>";
  std::string tag_close = "<e_crf>";
  std::vector<std::string> excluded_pronouns;
  std::string head_rule = "explicit";
  unsigned threads = default_threads();
  bool verbose = false;

  EnrichmentConfig config() const {
    EnrichmentConfig cfg;
    cfg.min_chain_size = min_chain_size;
    cfg.max_head_tokens = max_head_tokens;
    cfg.tag_open = tag_open;
    cfg.tag_close = tag_close;
    if (!excluded_pronouns.empty())
      cfg.excluded_pronouns = {excluded_pronouns.begin(), excluded_pronouns.end()};
    cfg.head_rule = head_rule == "computed" ? HeadRule::computed : HeadRule::prefer_annotated;
    return cfg;
  }
};

void add_enrich_flags(CLI::App* cmd, EnrichOpts& opts) {
  cmd->add_option("--min-chain-size", opts.min_chain_size,
                  "Smallest chain size that receives markup")
      ->capture_default_str();
  cmd->add_option("--max-head-tokens", opts.max_head_tokens,
                  "Longest cleaned head inserted by heuristic 1")
      ->capture_default_str();
  cmd->add_option("--tag-open", opts.tag_open, "Opening tag token")->capture_default_str();
  cmd->add_option("--tag-close", opts.tag_close, "Closing tag token")->capture_default_str();
  cmd->add_option("--exclude-pronoun", opts.excluded_pronouns,
                  "Pronoun surface left untagged (repeatable; default: i)");
  cmd->add_option("--head-rule", opts.head_rule, "Chain head choice: explicit|computed")
      ->check(CLI::IsMember({"explicit", "computed"}))
      ->capture_default_str();
}

void run_enrich(const EnrichOpts& opts) {
  EnrichmentConfig cfg = opts.config();
  std::ifstream in = open_input(opts.docs);
  OutputTarget out(opts.out);
  std::optional<OutputTarget> index;
  if (!opts.index.empty()) index.emplace(opts.index);

  using Item = std::pair<std::size_t, std::string>;
  using Result = std::pair<std::string, std::string>; // tagged text, sidecar
  std::string line;
  std::size_t lineno = 0;

  auto produce = [&]() -> std::optional<Item> {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (trim(line).empty()) continue;
      return Item{lineno, std::move(line)};
    }
    return std::nullopt;
  };
  auto work = [&](Item&& item, std::size_t) -> Result {
    Document doc = parse_jsonl_line(item.second, item.first);
    validate_or_throw(doc);
    std::vector<std::string> warnings;
    std::vector<EnrichedSentence> enriched =
        enrich_document(doc, cfg, opts.verbose ? &warnings : nullptr);
    for (const std::string& w : warnings) std::cerr << ("warning: " + w + "\n");
    std::ostringstream text, sidecar;
    write_tagged_text(enriched, text, index ? &sidecar : nullptr);
    return {text.str(), sidecar.str()};
  };
  auto consume = [&](Result&& r) {
    out.stream() << r.first;
    if (index) index->stream() << r.second;
  };
  ordered_parallel_map<Item, Result>(produce, work, consume, opts.threads);

  out.commit();
  if (index) index->commit();
}

struct StripOpts {
  std::string in;
  std::string out;
  std::string tag_open = "<b_crf>";
  std::string tag_close = "<e_crf>";
  unsigned threads = default_threads();
};

void run_strip(const StripOpts& opts) {
  EnrichmentConfig cfg;
  cfg.tag_open = opts.tag_open;
  cfg.tag_close = opts.tag_close;
  std::ifstream in = open_input(opts.in);
  OutputTarget out(opts.out);

  using Item = std::pair<std::size_t, std::string>;
  std::string line;
  std::size_t lineno = 0;
  auto produce = [&]() -> std::optional<Item> {
    if (!std::getline(in, line)) return std::nullopt;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) strip_utf8_bom(line);
    return Item{lineno, std::move(line)};
  };
  auto work = [&](Item&& item, std::size_t) -> std::string {
    try {
      return join(strip_tags(split_tokens(item.second), cfg)) + "\n";
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(item.first) + ": " + e.what());
    }
  };
  auto consume = [&](std::string&& text) { out.stream() << text; };
  ordered_parallel_map<Item, std::string>(produce, work, consume, opts.threads);
  out.commit();
}

struct SubsetOpts {
  EnrichOpts enrich; // reused for --docs mode
  std::string tagged;
  std::string out;
};

void run_subset(const SubsetOpts& opts) {
  OutputTarget out(opts.out);
  if (!opts.tagged.empty()) {
    std::ifstream in = open_input(opts.tagged);
    std::string line;
    std::size_t index = 0;
    EnrichmentConfig cfg = opts.enrich.config();
    while (std::getline(in, line)) {
      if (index == 0) strip_utf8_bom(line);
      std::vector<std::string> tokens = split_tokens(line);
      for (const std::string& tok : tokens)
        if (tok == cfg.tag_open) {
          out.stream() << index << '\n';
          break;
        }
      ++index;
    }
  } else {
    EnrichmentConfig cfg = opts.enrich.config();
    std::vector<Document> docs = load_documents(opts.enrich.docs);
    std::size_t index = 0;
    for (const Document& doc : docs)
      for (const EnrichedSentence& es : enrich_document(doc, cfg)) {
        if (!es.insertions.empty()) out.stream() << index << '\n';
        ++index;
      }
  }
  out.commit();
}

////////////////////////////////////////////////////////////////////////////////
// convert
////////////////////////////////////////////////////////////////////////////////

struct ConvertOpts {
  std::string from;
  std::string to = "jsonl";
  std::string in;
  std::string words;
  std::string markables;
  std::string sentences;
  std::string out;
  std::string doc_id = "doc";
  std::string genre;
  int word_col = 3;
  int pos_col = 4;
  int coref_col = -1;
  std::vector<std::string> mmax_attrs;
};

MmaxOptions mmax_options(const ConvertOpts& opts) {
  MmaxOptions mo;
  mo.doc_id = opts.doc_id;
  mo.genre = opts.genre;
  for (const std::string& kv : opts.mmax_attrs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--mmax-attr expects KEY=NAME, got '" + kv + "'");
    std::string key = kv.substr(0, eq), name = kv.substr(eq + 1);
    if (key == "span") mo.attrs.span = name;
    else if (key == "coref_class") mo.attrs.coref_class = name;
    else if (key == "mention_type") mo.attrs.mention_type = {name};
    else if (key == "cohesive_function") mo.attrs.cohesive_function = {name};
    else if (key == "pronoun_type") mo.attrs.pronoun_type = {name};
    else if (key == "gender") mo.attrs.gender = {name};
    else if (key == "number") mo.attrs.number = {name};
    else if (key == "animacy") mo.attrs.animacy = {name};
    else if (key == "word_sentence") mo.attrs.word_sentence = name;
    else throw std::runtime_error("unknown --mmax-attr key '" + key + "'");
  }
  return mo;
}

void run_convert(const ConvertOpts& opts) {
  std::vector<Document> docs;
  ConllColumns cols;
  cols.word = opts.word_col;
  cols.pos = opts.pos_col;
  cols.coref = opts.coref_col;
  cols.default_genre = opts.genre;

  if (opts.from == "conll") {
    std::ifstream in = open_input(opts.in);
    docs = parse_conll(in, cols);
  } else if (opts.from == "jsonl") {
    std::ifstream in = open_input(opts.in);
    docs = parse_jsonl(in);
  } else { // mmax
    std::ifstream words = open_input(opts.words);
    std::ifstream markables = open_input(opts.markables);
    if (!opts.sentences.empty()) {
      std::ifstream sentences = open_input(opts.sentences);
      docs.push_back(parse_mmax(words, markables, &sentences, mmax_options(opts)));
    } else {
      docs.push_back(parse_mmax(words, markables, mmax_options(opts)));
    }
  }
  for (const Document& doc : docs) validate_or_throw(doc);

  OutputTarget out(opts.out);
  if (opts.to == "jsonl") write_jsonl(docs, out.stream());
  else write_conll(docs, out.stream(), cols);
  out.commit();
}

////////////////////////////////////////////////////////////////////////////////
// stats
////////////////////////////////////////////////////////////////////////////////

struct StatsOpts {
  std::string docs;
  std::string out;
  std::string label;
  std::string aggregation = "both";
  std::string format = "tsv";
  int min_chain_size = 2;
  bool by_genre = false;
};

void run_stats(const StatsOpts& opts) {
  std::vector<Document> docs = load_documents(opts.docs);
  std::string label =
      opts.label.empty() ? std::filesystem::path(opts.docs).stem().string() : opts.label;

  std::vector<StatsRow> rows;
  auto add_rows = [&](const std::string& genre, const std::vector<Document>& group) {
    if (group.empty()) return;
    if (opts.aggregation == "micro" || opts.aggregation == "both")
      rows.push_back({label, genre, corpus_stats(group, opts.min_chain_size, Aggregation::micro)});
    if (opts.aggregation == "macro" || opts.aggregation == "both")
      rows.push_back({label, genre, corpus_stats(group, opts.min_chain_size, Aggregation::macro)});
  };

  add_rows("all", docs);
  if (opts.by_genre) {
    std::map<std::string, std::vector<Document>> by_genre;
    for (const Document& doc : docs) by_genre[doc.genre].push_back(doc);
    for (const auto& [genre, group] : by_genre) add_rows(genre, group);
  }

  OutputTarget out(opts.out);
  if (opts.format == "json") write_stats_json(rows, out.stream());
  else write_stats_tsv(rows, out.stream());
  out.commit();
}

////////////////////////////////////////////////////////////////////////////////
// errors
////////////////////////////////////////////////////////////////////////////////

struct ErrorsOpts {
  std::string records;
  std::vector<std::string> docs; // SYSTEM=path
  std::vector<std::string> genres;
  std::string format = "tsv";
  std::string out;
  std::string breakdown;
};

void run_errors(const ErrorsOpts& opts) {
  std::ifstream rec_in = open_input(opts.records);
  std::vector<ErrorRecord> records = load_error_records(rec_in);

  std::map<std::string, std::vector<Document>> docs_by_system;
  for (const std::string& kv : opts.docs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--docs expects SYSTEM=path, got '" + kv + "'");
    std::string system = kv.substr(0, eq);
    std::vector<Document> docs = load_documents(kv.substr(eq + 1));
    auto& bucket = docs_by_system[system];
    bucket.insert(bucket.end(), std::make_move_iterator(docs.begin()),
                  std::make_move_iterator(docs.end()));
  }

  std::vector<ErrorReport> reports = build_all_reports(records, docs_by_system);
  if (!opts.genres.empty()) {
    std::vector<ErrorReport> filtered;
    for (ErrorReport& r : reports)
      for (const std::string& genre : opts.genres)
        if (r.genre == genre) filtered.push_back(std::move(r));
    reports = std::move(filtered);
  }

  OutputTarget out(opts.out);
  if (opts.format == "json") write_error_reports_json(reports, out.stream());
  else write_error_reports_tsv(reports, out.stream());
  if (!opts.breakdown.empty()) {
    OutputTarget breakdown(opts.breakdown);
    write_category_breakdown_tsv(reports, breakdown.stream());
    out.commit();
    breakdown.commit();
  } else {
    out.commit();
  }
}

////////////////////////////////////////////////////////////////////////////////
// eval
////////////////////////////////////////////////////////////////////////////////

struct EvalBleuOpts {
  std::string hyp;
  std::string ref;
  std::string smoothing = "none";
  std::string subset;
  std::string out;
  bool report = false;
  std::string format = "tsv";
  std::string system = "-";
  std::string genre = "-";
  std::string slice;
  std::string meteor;
};

void run_eval_bleu(const EvalBleuOpts& opts) {
  std::vector<std::vector<std::string>> hyp = load_token_lines(opts.hyp);
  std::vector<std::vector<std::string>> ref = load_token_lines(opts.ref);

  std::string slice = opts.slice;
  if (!opts.subset.empty()) {
    std::ifstream in = open_input(opts.subset);
    std::vector<std::size_t> indices;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string_view t = trim(line);
      if (t.empty()) continue;
      if (!is_digits(t)) throw ParseError(lineno, "subset entries must be 0-based line indices");
      indices.push_back(static_cast<std::size_t>(std::stoull(std::string(t))));
    }
    std::vector<std::vector<std::string>> hyp_slice, ref_slice;
    for (std::size_t idx : indices) {
      if (idx >= hyp.size() || idx >= ref.size())
        throw DataError("subset index " + std::to_string(idx) + " out of range");
      hyp_slice.push_back(hyp[idx]);
      ref_slice.push_back(ref[idx]);
    }
    hyp = std::move(hyp_slice);
    ref = std::move(ref_slice);
    if (slice.empty()) slice = "coref";
  }
  if (slice.empty()) slice = "all";

  BleuScore score = corpus_bleu(
      hyp, ref, opts.smoothing == "add-one" ? BleuSmoothing::add_one : BleuSmoothing::none);

  OutputTarget out(opts.out);
  if (opts.report) {
    std::vector<EvalRow> rows{{opts.system, opts.genre, slice, score.score, opts.meteor}};
    if (opts.format == "json") write_eval_json(rows, out.stream());
    else write_eval_tsv(rows, out.stream());
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", score.score);
    out.stream() << buf << '\n';
  }
  out.commit();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus toolkit for coreference-chain markup, statistics and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("corefkit ") + kVersion + " (schema " +
                                        std::to_string(kSchemaVersion) + ")");

  std::function<void()> run;

  // convert
  ConvertOpts convert_opts;
  CLI::App* convert = app.add_subcommand("convert", "Convert between annotation formats");
  convert->add_option("--from", convert_opts.from, "Input format")
      ->required()
      ->check(CLI::IsMember({"conll", "mmax", "jsonl"}));
  convert->add_option("--to", convert_opts.to, "Output format")
      ->check(CLI::IsMember({"jsonl", "conll"}))
      ->capture_default_str();
  convert->add_option("--in", convert_opts.in, "Input file (conll/jsonl)")
      ->check(CLI::ExistingFile);
  convert->add_option("--words", convert_opts.words, "MMAX words file")->check(CLI::ExistingFile);
  convert->add_option("--markables", convert_opts.markables, "MMAX coreference markables file")
      ->check(CLI::ExistingFile);
  convert->add_option("--sentences", convert_opts.sentences, "MMAX sentence markables file")
      ->check(CLI::ExistingFile);
  convert->add_option("--out", convert_opts.out, "Output file, '-' for stdout");
  convert->add_option("--doc-id", convert_opts.doc_id, "Document id for MMAX input")
      ->capture_default_str();
  convert->add_option("--genre", convert_opts.genre, "Genre label attached to parsed documents");
  convert->add_option("--word-col", convert_opts.word_col, "CoNLL word column")
      ->capture_default_str();
  convert->add_option("--pos-col", convert_opts.pos_col, "CoNLL POS column, -1 to disable")
      ->capture_default_str();
  convert->add_option("--coref-col", convert_opts.coref_col,
                      "CoNLL coreference column, -1 for last")
      ->capture_default_str();
  convert->add_option("--mmax-attr", convert_opts.mmax_attrs,
                      "Override a markable attribute name (KEY=NAME, repeatable)");
  convert->callback([&] {
    if (convert_opts.from == "mmax") {
      if (convert_opts.words.empty() || convert_opts.markables.empty())
        throw CLI::ValidationError("convert", "--from mmax requires --words and --markables");
    } else if (convert_opts.in.empty()) {
      throw CLI::ValidationError("convert", "--in is required for --from " + convert_opts.from);
    }
    run = [&] { run_convert(convert_opts); };
  });

  // enrich
  EnrichOpts enrich_opts;
  CLI::App* enrich = app.add_subcommand("enrich", "Inject coreference markup into sentences");
  enrich->add_option("--docs", enrich_opts.docs, "JSONL documents")
      ->required()
      ->check(CLI::ExistingFile);
  enrich->add_option("--out", enrich_opts.out, "Tagged text output file")->required();
  enrich->add_option("--index", enrich_opts.index,
                     "Sidecar file mapping output lines to doc id and sentence index");
  add_enrich_flags(enrich, enrich_opts);
  enrich->add_option("--threads", enrich_opts.threads,
                     "Worker threads (0: hardware); output bytes do not depend on it")
      ->capture_default_str();
  enrich->add_flag("--verbose", enrich_opts.verbose, "Log head attribute conflicts to stderr");
  enrich->callback([&] { run = [&] { run_enrich(enrich_opts); }; });

  // strip
  StripOpts strip_opts;
  CLI::App* strip = app.add_subcommand("strip", "Remove coreference markup from tagged text");
  strip->add_option("--in", strip_opts.in, "Tagged text input")
      ->required()
      ->check(CLI::ExistingFile);
  strip->add_option("--out", strip_opts.out, "Plain text output file")->required();
  strip->add_option("--tag-open", strip_opts.tag_open, "Opening tag token")->capture_default_str();
  strip->add_option("--tag-close", strip_opts.tag_close, "Closing tag token")
      ->capture_default_str();
  strip->add_option("--threads", strip_opts.threads, "Worker threads (0: hardware)")
      ->capture_default_str();
  strip->callback([&] { run = [&] { run_strip(strip_opts); }; });

  // stats
  StatsOpts stats_opts;
  CLI::App* stats = app.add_subcommand("stats", "Chain-feature statistics report");
  stats->add_option("--docs", stats_opts.docs, "JSONL documents")
      ->required()
      ->check(CLI::ExistingFile);
  stats->add_option("--out", stats_opts.out, "Report file, '-' for stdout");
  stats->add_option("--label", stats_opts.label, "Corpus label (default: input file stem)");
  stats->add_option("--min-chain-size", stats_opts.min_chain_size,
                    "Smallest chain size counted as a chain")
      ->capture_default_str();
  stats->add_option("--aggregation", stats_opts.aggregation, "micro|macro|both")
      ->check(CLI::IsMember({"micro", "macro", "both"}))
      ->capture_default_str();
  stats->add_flag("--by-genre", stats_opts.by_genre, "Additional per-genre rows");
  stats->add_option("--format", stats_opts.format, "tsv|json")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  stats->callback([&] { run = [&] { run_stats(stats_opts); }; });

  // errors
  ErrorsOpts errors_opts;
  CLI::App* errors = app.add_subcommand("errors", "Mention error-rate report");
  errors->add_option("--records", errors_opts.records, "Error record TSV")
      ->required()
      ->check(CLI::ExistingFile);
  errors->add_option("--docs", errors_opts.docs,
                     "Annotated output documents per system (SYSTEM=path, repeatable)")
      ->required();
  errors->add_option("--genre", errors_opts.genres, "Restrict report to these genres");
  errors->add_option("--format", errors_opts.format, "tsv|json")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  errors->add_option("--out", errors_opts.out, "Report file, '-' for stdout");
  errors->add_option("--breakdown", errors_opts.breakdown,
                     "Also write a per-category breakdown TSV to this file");
  errors->callback([&] { run = [&] { run_errors(errors_opts); }; });

  // eval bleu
  EvalBleuOpts bleu_opts;
  CLI::App* eval = app.add_subcommand("eval", "Automatic evaluation");
  eval->require_subcommand(1);
  CLI::App* bleu = eval->add_subcommand("bleu", "Corpus BLEU-4 with brevity penalty");
  bleu->add_option("--hyp", bleu_opts.hyp, "Hypothesis file, one tokenised segment per line")
      ->required()
      ->check(CLI::ExistingFile);
  bleu->add_option("--ref", bleu_opts.ref, "Reference file, aligned with --hyp")
      ->required()
      ->check(CLI::ExistingFile);
  bleu->add_option("--smoothing", bleu_opts.smoothing, "none|add-one")
      ->check(CLI::IsMember({"none", "add-one"}))
      ->capture_default_str();
  bleu->add_option("--subset", bleu_opts.subset, "Score only these 0-based line indices")
      ->check(CLI::ExistingFile);
  bleu->add_option("--out", bleu_opts.out, "Output file, '-' for stdout");
  bleu->add_flag("--report", bleu_opts.report, "Emit a report row instead of the bare score");
  bleu->add_option("--format", bleu_opts.format, "tsv|json (with --report)")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  bleu->add_option("--system", bleu_opts.system, "System label for the report row");
  bleu->add_option("--genre", bleu_opts.genre, "Genre label for the report row");
  bleu->add_option("--slice", bleu_opts.slice, "Slice label (default: all, or coref with --subset)");
  bleu->add_option("--meteor", bleu_opts.meteor,
                   "Externally computed METEOR value passed through to the report");
  bleu->callback([&] { run = [&] { run_eval_bleu(bleu_opts); }; });

  // subset
  SubsetOpts subset_opts;
  CLI::App* subset = app.add_subcommand("subset", "Select the coreference test-set slice");
  CLI::Option* subset_docs =
      subset->add_option("--docs", subset_opts.enrich.docs, "JSONL documents to enrich in memory")
          ->check(CLI::ExistingFile);
  CLI::Option* subset_tagged =
      subset->add_option("--tagged", subset_opts.tagged, "Already-tagged text to scan")
          ->check(CLI::ExistingFile);
  subset_docs->excludes(subset_tagged);
  subset->add_option("--out", subset_opts.out, "Index file, one 0-based line index per line");
  add_enrich_flags(subset, subset_opts.enrich);
  subset->callback([&] {
    if (subset_opts.enrich.docs.empty() && subset_opts.tagged.empty())
      throw CLI::ValidationError("subset", "one of --docs or --tagged is required");
    run = [&] { run_subset(subset_opts); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    run();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
