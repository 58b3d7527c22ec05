/* Copyright 2026 The cfp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "cfp/pipeline.hpp"

#include <fcntl.h>
#include <signal.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "cfp/corpus.hpp"
#include "cfp/date.hpp"
#include "cfp/entities.hpp"
#include "cfp/error.hpp"
#include "cfp/generation.hpp"
#include "cfp/http.hpp"
#include "cfp/keyness.hpp"
#include "cfp/sentiment.hpp"
#include "cfp/stats.hpp"
#include "cfp/svg.hpp"
#include "cfp/text.hpp"
#include "cfp/wayback.hpp"
#include "json.hpp"

namespace cfp::pipeline {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr std::string_view kDefaultFrameworkSource =
    "https://www.cdc.gov/coronavirus/2019-ncov/summary.html";
constexpr std::string_view kDefaultStaticAsOf = "2020-05-15";

// ---------------------------------------------------------------------------
// Option access

std::optional<std::string> find(const Options& o, const std::string& key) {
  auto it = o.find(key);
  if (it == o.end()) return std::nullopt;
  return it->second;
}

std::string get(const Options& o, const std::string& key, std::string fallback = {}) {
  auto v = find(o, key);
  return v && !v->empty() ? *v : fallback;
}

std::string require(const Options& o, const std::string& key) {
  auto v = find(o, key);
  if (!v || v->empty()) fail(ErrorCode::kInvalidArgument, "missing required option --" + key);
  return *v;
}

bool get_bool(const Options& o, const std::string& key) {
  auto v = find(o, key);
  if (!v) return false;
  const std::string s = text::to_lower(*v);
  if (s.empty() || s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  fail(ErrorCode::kInvalidArgument, "--" + key + " expects true or false, got '" + *v + "'");
}

long long get_int(const Options& o, const std::string& key, long long fallback, long long min_value) {
  auto v = find(o, key);
  if (!v || v->empty()) return fallback;
  std::size_t used = 0;
  long long n = 0;
  try {
    n = std::stoll(*v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v->size()) fail(ErrorCode::kInvalidArgument, "--" + key + " expects an integer, got '" + *v + "'");
  if (n < min_value) {
    fail(ErrorCode::kInvalidArgument, "--" + key + " must be at least " + std::to_string(min_value));
  }
  return n;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || !std::isfinite(d)) {
    fail(ErrorCode::kInvalidArgument, "--" + key + " expects a number, got '" + v + "'");
  }
  return d;
}

Date get_date(const Options& o, const std::string& key, std::string_view fallback) {
  const std::string v = get(o, key, std::string(fallback));
  auto d = Date::parse(v);
  if (!d) fail(ErrorCode::kInvalidArgument, "--" + key + " expects a date (YYYY-MM-DD), got '" + v + "'");
  return *d;
}

std::string existing_file(const Options& o, const std::string& key) {
  const std::string path = require(o, key);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    fail(ErrorCode::kInvalidArgument, "input file not found: " + path);
  }
  return path;
}

unsigned thread_count(const Options& o) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(get_int(o, "threads", hw, 1));
}

// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
  };
  const std::size_t count = std::min<std::size_t>(threads, std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Output directories: lock file, tracked outputs, manifest

std::string timestamp_now() {
  std::time_t t = std::time(nullptr);
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(sde, &end, 10);
    if (end != sde && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class OutputDir {
 public:
  OutputDir(const std::string& path, std::string command) : command_(std::move(command)) {
    dir_ = fs::path(path.empty() ? "." : path);
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) fail(ErrorCode::kIo, "cannot create output directory " + dir_.string() + ": " + ec.message());
    lock_path_ = (dir_ / ".cfp.lock").string();
    acquire();
    started_ = timestamp_now();
  }
  ~OutputDir() { ::unlink(lock_path_.c_str()); }
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, std::string_view contents) {
    text::write_file_atomic(path(name), contents);
    outputs_.insert(name);
  }

  void input(const std::string& file) {
    inputs_[file] = text::sha256_hex(text::read_file(file));
  }

  void finish(const Options& options) {
    const std::string manifest_path = path("manifest.json");
    json manifest;
    std::error_code ec;
    if (fs::exists(manifest_path, ec)) {
      try {
        manifest = json::parse(text::read_file(manifest_path));
      } catch (const std::exception&) {
        manifest = json();
      }
    }
    if (!manifest.is_object()) manifest = json::object();
    manifest["tool"] = "cfp";
    manifest["version"] = std::string(kVersion);
    if (!manifest.contains("commands") || !manifest["commands"].is_object()) {
      manifest["commands"] = json::object();
    }
    json entry;
    entry["command"] = command_;
    json config = json::object();
    for (const auto& [k, v] : options) config[k] = v;
    entry["config"] = std::move(config);
    json inputs = json::array();
    for (const auto& [file, hash] : inputs_) inputs.push_back({{"path", file}, {"sha256", hash}});
    entry["inputs"] = std::move(inputs);
    json outputs = json::array();
    for (const auto& name : outputs_) outputs.push_back(name);
    entry["outputs"] = std::move(outputs);
    entry["started_at"] = started_;
    entry["finished_at"] = timestamp_now();
    manifest["commands"][command_] = std::move(entry);
    text::write_file_atomic(manifest_path, manifest.dump(2) + "\n");
  }

 private:
  void acquire() {
    for (int attempt = 0; attempt < 2; ++attempt) {
      const int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
      if (fd >= 0) {
        const std::string pid = std::to_string(::getpid()) + "\n";
        if (::write(fd, pid.data(), pid.size()) < 0) {
          // The lock holds even without the pid inside.
        }
        ::close(fd);
        return;
      }
      if (errno != EEXIST) fail(ErrorCode::kIo, "cannot create lock file " + lock_path_);
      // Reclaim a lock left behind by a process that no longer exists.
      std::ifstream in(lock_path_);
      long pid = 0;
      if (in >> pid && pid > 0 && ::kill(static_cast<pid_t>(pid), 0) != 0 && errno == ESRCH) {
        ::unlink(lock_path_.c_str());
        continue;
      }
      break;
    }
    lock_path_.clear();
    fail(ErrorCode::kLocked, "output directory " + dir_.string() +
                                 " is in use by another cfp process (remove .cfp.lock if stale)");
  }

  fs::path dir_;
  std::string command_;
  std::string lock_path_;
  std::string started_;
  std::map<std::string, std::string> inputs_;
  std::set<std::string> outputs_;
};

std::string jsonl(const std::vector<json>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.dump() + "\n";
  return out;
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------------------
// ingest

corpus::Format infer_format(const Options& o, const std::string& input) {
  if (auto f = find(o, "format"); f && !f->empty()) return corpus::parse_format(*f);
  return text::ends_with(text::to_lower(input), ".csv") ? corpus::Format::kKaggleCbcCsv
                                                        : corpus::Format::kJsonl;
}

// ---------------------------------------------------------------------------
// measure

keyness::WordSet vocabulary_filter(const std::string& spec, const sentiment::Lexicon& lexicon,
                                   bool& active) {
  keyness::WordSet words;
  active = true;
  if (spec.empty() || spec == "none") {
    active = false;
  } else if (spec == "vader" || spec == "lexicon") {
    for (const auto& w : lexicon.words()) words.insert(text::to_lower(w));
  } else {
    std::error_code ec;
    if (!fs::is_regular_file(spec, ec)) {
      fail(ErrorCode::kInvalidArgument,
           "--vocab-filter must be none, vader or a word-list file; not found: " + spec);
    }
    for (const auto& line : text::split(text::read_file(spec), '\n')) {
      auto w = text::trim(line);
      if (!w.empty() && w.front() != '#') words.insert(text::to_lower(w));
    }
  }
  return words;
}

std::string filter_name(const std::string& spec) {
  if (spec.empty() || spec == "none") return "none";
  if (spec == "vader" || spec == "lexicon") return "vader";
  return "file:" + fs::path(spec).filename().string();
}

sentiment::Analyzer make_analyzer(const Options& o) {
  auto lexicon = find(o, "lexicon") && !get(o, "lexicon").empty()
                     ? sentiment::Lexicon::from_file(existing_file(o, "lexicon"))
                     : sentiment::Lexicon::builtin();
  std::vector<sentiment::FlipRule> rules;
  const std::string flips = get(o, "flip-rules");
  if (get_bool(o, "no-flips") || flips == "none") {
    rules = {};
  } else if (!flips.empty()) {
    rules = sentiment::parse_flip_rules(text::read_file(existing_file(o, "flip-rules")));
  } else {
    rules = sentiment::default_flip_rules();
  }
  return sentiment::Analyzer(std::move(lexicon), sentiment::EmojiTable::builtin(), std::move(rules));
}

std::unique_ptr<entities::Tagger> make_tagger(const Options& o) {
  const std::string kind = get(o, "tagger", "builtin");
  if (kind == "builtin") {
    auto path = [&](const std::string& key) {
      return get(o, key).empty() ? std::string() : existing_file(o, key);
    };
    return std::make_unique<entities::BuiltinTagger>(entities::Gazetteers::load(
        path("gazetteer-gpe"), path("gazetteer-org"), path("person-cues"), path("non-entity")));
  }
  if (kind == "external-file") {
    return std::make_unique<entities::FileExchangeTagger>(existing_file(o, "tagger-responses"));
  }
  if (kind == "external-process") {
    return std::make_unique<entities::ProcessExchangeTagger>(require(o, "tagger-command"));
  }
  fail(ErrorCode::kInvalidArgument,
       "--tagger must be builtin, external-file or external-process, got '" + kind + "'");
}

corpus::Corpus load_corpus(const std::string& path, std::string label) {
  auto result = corpus::ingest_file(path, corpus::Format::kJsonl, corpus::Cleaner(), std::move(label));
  if (!result.rejects.empty()) {
    const auto& r = result.rejects.front();
    fail(ErrorCode::kSchema, path + " is not a valid corpus: line " + std::to_string(r.row) + ": " +
                                 r.reason + " (" + std::to_string(result.rejects.size()) +
                                 " bad lines)");
  }
  return std::move(result.corpus);
}

// ---------------------------------------------------------------------------
// compare

struct MeasureRow {
  std::string id;
  std::string title;
  std::string description;
  Date date;
  double sentiment = 0.0;
  double person = 0.0;
  double gpe = 0.0;
  double org = 0.0;
  double unique_entities = 0.0;
  std::optional<double> focus;
};

struct MeasuredCorpus {
  std::string dir;
  std::string measures_path;
  std::string frequencies_path;
  std::vector<MeasureRow> rows;
};

MeasuredCorpus load_measured(const std::string& key, const std::string& where) {
  MeasuredCorpus m;
  std::error_code ec;
  if (fs::is_directory(where, ec)) {
    m.dir = where;
    m.measures_path = (fs::path(where) / "measures.jsonl").string();
  } else {
    m.measures_path = where;
    m.dir = fs::path(where).parent_path().string();
  }
  m.frequencies_path = (fs::path(m.dir.empty() ? "." : m.dir) / "frequencies.json").string();
  if (!fs::is_regular_file(m.measures_path, ec)) {
    fail(ErrorCode::kInvalidArgument, "--" + key + ": measures file not found: " + m.measures_path);
  }
  std::size_t line_no = 0;
  for (const auto& raw : text::split(text::read_file(m.measures_path), '\n')) {
    ++line_no;
    if (text::trim(raw).empty()) continue;
    try {
      auto j = nlohmann::json::parse(raw);
      MeasureRow r;
      r.id = j.at("article_id").get<std::string>();
      r.title = j.at("title").get<std::string>();
      r.description = j.at("description").get<std::string>();
      r.date = Date::parse_or_throw(j.at("published_at").get<std::string>());
      r.sentiment = j.at("mean_compound").get<double>();
      r.person = j.at("person").get<double>();
      r.gpe = j.at("gpe").get<double>();
      r.org = j.at("org").get<double>();
      r.unique_entities = j.at("unique_entities").get<double>();
      if (j.contains("focus") && !j["focus"].is_null()) r.focus = j["focus"].get<double>();
      m.rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      fail(ErrorCode::kSchema, m.measures_path + " line " + std::to_string(line_no) +
                                   " is not a measure row: " + e.what());
    }
  }
  return m;
}

struct MeasureSpec {
  std::string name;
  std::function<std::optional<double>(const MeasureRow&)> get;
};

const std::vector<MeasureSpec>& measure_specs() {
  static const std::vector<MeasureSpec> specs = {
      {"sentiment", [](const MeasureRow& r) { return std::optional<double>(r.sentiment); }},
      {"focus", [](const MeasureRow& r) { return r.focus; }},
      {"person", [](const MeasureRow& r) { return std::optional<double>(r.person); }},
      {"gpe", [](const MeasureRow& r) { return std::optional<double>(r.gpe); }},
      {"org", [](const MeasureRow& r) { return std::optional<double>(r.org); }},
      {"unique_entities",
       [](const MeasureRow& r) { return std::optional<double>(r.unique_entities); }},
  };
  return specs;
}

std::vector<double> values_of(const std::vector<MeasureRow>& rows, const MeasureSpec& spec) {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (auto v = spec.get(r)) out.push_back(*v);
  }
  return out;
}

std::vector<stats::DatedValue> dated_values(const std::vector<MeasureRow>& rows,
                                            const MeasureSpec& spec) {
  std::vector<stats::DatedValue> out;
  for (const auto& r : rows) {
    if (auto v = spec.get(r)) out.push_back({r.date, *v});
  }
  return out;
}

// Evaluates a statistic, recording the reason when it is undefined.
json guarded(const std::function<double()>& f, json& notes, const std::string& what) {
  try {
    return f();
  } catch (const Error& e) {
    notes.push_back(what + ": " + e.what());
    return nullptr;
  }
}

json stage_json(const stats::StageStats& s) {
  json j;
  j["n"] = s.n;
  j["mean"] = s.empty() ? json(nullptr) : json(s.mean);
  j["sd"] = s.n < 2 ? json(nullptr) : json(s.sd);
  return j;
}

std::string csv_number(double v) { return text::format_fixed(v, 6); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

struct WeeklyTable {
  std::vector<std::string> weeks;  // union, chronological
  std::map<std::string, stats::SeriesPoint> a;
  std::map<std::string, stats::SeriesPoint> b;
};

WeeklyTable weekly_table(const std::vector<stats::SeriesPoint>& a,
                         const std::vector<stats::SeriesPoint>& b) {
  WeeklyTable t;
  std::set<std::string> weeks;
  for (const auto& p : a) {
    t.a[p.week] = p;
    weeks.insert(p.week);
  }
  for (const auto& p : b) {
    t.b[p.week] = p;
    weeks.insert(p.week);
  }
  t.weeks.assign(weeks.begin(), weeks.end());
  return t;
}

std::vector<double> series_y(const WeeklyTable& t, const std::map<std::string, stats::SeriesPoint>& side) {
  std::vector<double> y;
  for (const auto& w : t.weeks) {
    auto it = side.find(w);
    y.push_back(it == side.end() ? std::numeric_limits<double>::quiet_NaN() : it->second.mean);
  }
  return y;
}

std::vector<double> positions(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i);
  return x;
}

json keyness_side_summary(const std::vector<keyness::KeynessEntry>& entries) {
  json j;
  j["count"] = entries.size();
  if (entries.empty()) {
    j["mean_ll"] = nullptr;
    j["p95_ll"] = nullptr;
    return j;
  }
  std::vector<double> ll;
  for (const auto& e : entries) ll.push_back(e.log_likelihood);
  j["mean_ll"] = stats::mean(ll);
  j["p95_ll"] = stats::percentile(ll, 95.0);
  return j;
}

// ---------------------------------------------------------------------------
// generate

std::vector<double> temperatures(const Options& o) {
  std::vector<double> out;
  if (auto list = find(o, "temperatures"); list && !list->empty()) {
    for (const auto& part : text::split(*list, ',')) {
      out.push_back(parse_double("temperatures", std::string(text::trim(part))));
    }
  } else if (auto t = find(o, "temperature"); t && !t->empty()) {
    out.push_back(parse_double("temperature", *t));
  } else {
    out.push_back(0.5);
  }
  for (double t : out) {
    if (!(t > 0.0)) fail(ErrorCode::kInvalidArgument, "temperatures must be greater than zero");
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& known_options(std::string_view command) {
  static const std::map<std::string, std::vector<std::string>, std::less<>> table = {
      {"ingest", {"input", "format", "out", "rejects", "label", "boilerplate"}},
      {"measure",
       {"corpus", "out-dir", "label", "tagger", "tagger-command", "tagger-responses",
        "gazetteer-gpe", "gazetteer-org", "person-cues", "non-entity", "lexicon", "flip-rules",
        "no-flips", "skip-empty-sentences", "dump-sentences", "vocab-filter", "threads"}},
      {"compare",
       {"real", "generated", "out-dir", "real-label", "generated-label", "stage-split", "bins",
        "top-k", "vocab-filter", "keyness-mode", "lexicon"}},
      {"generate",
       {"corpus", "out-dir", "strategy", "temperature", "temperatures", "endpoint", "model",
        "max-tokens", "max-in-flight", "retries", "backoff-ms", "timeout-seconds", "cache-dir",
        "framework-source", "framework-file", "static-as-of", "framework-window-days",
        "wayback-api", "extract-pattern"}},
  };
  static const std::vector<std::string> none;
  auto it = table.find(command);
  return it == table.end() ? none : it->second;
}

bool is_known_option(std::string_view command, std::string_view key) {
  const auto& keys = known_options(command);
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::string run_ingest(const Options& o) {
  const std::string input = existing_file(o, "input");
  const std::string out = require(o, "out");
  const corpus::Format format = infer_format(o, input);
  const corpus::Cleaner cleaner = get(o, "boilerplate").empty()
                                      ? corpus::Cleaner()
                                      : corpus::Cleaner::from_file(existing_file(o, "boilerplate"));
  auto result = corpus::ingest_file(input, format, cleaner, get(o, "label", "real"));

  const fs::path out_path(out);
  OutputDir dir(out_path.parent_path().string(), "ingest");
  dir.input(input);
  const std::string corpus_name = out_path.filename().string();
  const std::string rejects_name =
      get(o, "rejects").empty() ? out_path.stem().string() + ".rejects.jsonl"
                                : fs::path(get(o, "rejects")).filename().string();
  dir.write(corpus_name, corpus::serialize_jsonl(result.corpus));
  dir.write(rejects_name, corpus::serialize_rejects(result.rejects));
  dir.finish(o);

  json summary;
  summary["command"] = "ingest";
  summary["read"] = result.summary.read;
  summary["cleaned"] = result.summary.cleaned;
  summary["deduped"] = result.summary.deduped;
  summary["rejected"] = result.summary.rejected;
  summary["retained"] = result.summary.retained;
  summary["output"] = out;
  return summary.dump();
}

std::string run_measure(const Options& o) {
  const std::string corpus_path = existing_file(o, "corpus");
  const std::string out_dir = require(o, "out-dir");
  const sentiment::Analyzer analyzer = make_analyzer(o);
  auto tagger = make_tagger(o);
  const bool skip_empty = get_bool(o, "skip-empty-sentences");
  const bool dump_sentences = get_bool(o, "dump-sentences");
  const std::string filter_spec = get(o, "vocab-filter", "none");
  bool filter_active = false;
  const keyness::WordSet filter = vocabulary_filter(filter_spec, analyzer.lexicon(), filter_active);

  const corpus::Corpus corpus = load_corpus(corpus_path, get(o, "label"));
  OutputDir dir(out_dir, "measure");
  dir.input(corpus_path);

  const auto& articles = corpus.articles();
  const std::size_t n = articles.size();
  std::vector<sentiment::ArticleSentiment> sentiments(n);
  std::vector<std::vector<entities::EntityMention>> mentions(n);
  std::vector<std::string> tag_errors(n);
  parallel_for(n, thread_count(o), [&](std::size_t i) {
    sentiments[i] = analyzer.score_article(articles[i], skip_empty);
    try {
      mentions[i] = tagger->tag(articles[i].id, articles[i].body);
    } catch (const std::exception& e) {
      tag_errors[i] = e.what();
    }
  });

  std::vector<json> measure_rows;
  std::vector<json> sentiment_rows;
  std::vector<json> entity_rows;
  std::vector<json> sentence_rows;
  std::vector<json> failure_rows;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = articles[i];
    const auto& s = sentiments[i];

    json srow;
    srow["article_id"] = a.id;
    srow["mean_compound"] = s.mean_compound;
    srow["n_sentences"] = s.n_sentences;
    json compounds = json::array();
    json flipped = json::array();
    for (std::size_t k = 0; k < s.sentence_scores.size(); ++k) {
      const auto& sc = s.sentence_scores[k];
      compounds.push_back(sc.compound);
      for (const auto& f : sc.flipped_terms) {
        flipped.push_back({{"sentence", k}, {"token", f.token}, {"position", f.position}});
      }
      if (dump_sentences) {
        json row;
        row["article_id"] = a.id;
        row["index"] = k;
        row["text"] = sc.text;
        row["compound"] = sc.compound;
        row["lexicon_hits"] = sc.lexicon_hits;
        sentence_rows.push_back(std::move(row));
      }
    }
    srow["compounds"] = std::move(compounds);
    srow["flipped_terms"] = std::move(flipped);
    sentiment_rows.push_back(std::move(srow));

    if (!tag_errors[i].empty()) {
      failure_rows.push_back({{"article_id", a.id}, {"error", tag_errors[i]}});
      continue;
    }
    const entities::EntityTally t = entities::tally(a, mentions[i]);
    std::optional<double> focus;
    if (t.token_length > 0) focus = entities::focus(t).focus;

    json erow;
    erow["article_id"] = a.id;
    erow["person"] = t.person;
    erow["gpe"] = t.gpe;
    erow["org"] = t.org;
    erow["unique_entities"] = t.unique_entities;
    erow["token_length"] = t.token_length;
    erow["focus"] = nullable(focus);
    json ms = json::array();
    for (const auto& m : mentions[i]) {
      ms.push_back({{"surface", m.surface},
                    {"kind", std::string(entities::kind_name(m.kind))},
                    {"start", m.start},
                    {"end", m.end}});
    }
    erow["mentions"] = std::move(ms);
    entity_rows.push_back(std::move(erow));

    json mrow;
    mrow["article_id"] = a.id;
    mrow["title"] = a.title;
    mrow["description"] = a.description;
    mrow["published_at"] = a.published_at.iso();
    mrow["origin"] = std::string(corpus::origin_name(a.origin));
    mrow["model_tag"] = a.model_tag ? json(*a.model_tag) : json(nullptr);
    mrow["mean_compound"] = s.mean_compound;
    mrow["n_sentences"] = s.n_sentences;
    mrow["person"] = t.person;
    mrow["gpe"] = t.gpe;
    mrow["org"] = t.org;
    mrow["unique_entities"] = t.unique_entities;
    mrow["token_length"] = t.token_length;
    mrow["focus"] = nullable(focus);
    measure_rows.push_back(std::move(mrow));
  }

  keyness::FrequencyTable table = keyness::build_frequency_table(
      corpus, filter_active ? &filter : nullptr);
  table.filter_name = filter_name(filter_spec);
  if (table.corpus_label.empty()) table.corpus_label = fs::path(corpus_path).stem().string();

  dir.write("measures.jsonl", jsonl(measure_rows));
  dir.write("sentiment.jsonl", jsonl(sentiment_rows));
  dir.write("entities.jsonl", jsonl(entity_rows));
  dir.write("frequencies.json", keyness::to_json(table) + "\n");
  if (dump_sentences) dir.write("sentences.jsonl", jsonl(sentence_rows));
  if (!failure_rows.empty()) dir.write("tagger_failures.jsonl", jsonl(failure_rows));
  dir.finish(o);

  if (!failure_rows.empty()) {
    fail(ErrorCode::kTagger, "tagging failed for " + std::to_string(failure_rows.size()) + " of " +
                                 std::to_string(n) + " articles (see tagger_failures.jsonl): " +
                                 failure_rows.front()["error"].get<std::string>());
  }
  json summary;
  summary["command"] = "measure";
  summary["articles"] = n;
  summary["tagger"] = tagger->name();
  summary["lexicon"] = analyzer.lexicon().source_version();
  summary["vocab_filter"] = table.filter_name;
  summary["N"] = table.total;
  summary["out_dir"] = out_dir;
  return summary.dump();
}

std::string run_compare(const Options& o) {
  const MeasuredCorpus real = load_measured("real", require(o, "real"));
  const MeasuredCorpus gen = load_measured("generated", require(o, "generated"));
  const std::string label_a = get(o, "real-label", "real");
  const std::string label_b = get(o, "generated-label", "generated");
  const Date split = get_date(o, "stage-split", "2020-03-01");
  const auto bins = static_cast<std::size_t>(get_int(o, "bins", 100, 2));
  const auto top_k = static_cast<std::size_t>(get_int(o, "top-k", 20, 1));
  const std::string filter_spec = get(o, "vocab-filter", "vader");
  const std::string mode = get(o, "keyness-mode", "filter-first");
  if (mode != "filter-first" && mode != "filter-display") {
    fail(ErrorCode::kInvalidArgument, "--keyness-mode must be filter-first or filter-display");
  }

  std::vector<std::pair<std::string, std::string>> keys_a;
  std::vector<std::pair<std::string, std::string>> keys_b;
  for (const auto& r : real.rows) keys_a.emplace_back(r.title, r.description);
  for (const auto& r : gen.rows) keys_b.emplace_back(r.title, r.description);
  const corpus::IndexPairing pairing = corpus::pair_by_metadata(keys_a, keys_b);
  if (pairing.pairs.empty()) {
    std::string detail = "no article pairs: " + std::to_string(real.rows.size()) + " real and " +
                         std::to_string(gen.rows.size()) +
                         " generated rows share no (title, description)";
    if (!real.rows.empty()) detail += "; first real title: \"" + real.rows.front().title + "\"";
    if (!gen.rows.empty()) detail += "; first generated title: \"" + gen.rows.front().title + "\"";
    fail(ErrorCode::kInvalidArgument, detail);
  }

  OutputDir dir(require(o, "out-dir"), "compare");
  dir.input(real.measures_path);
  dir.input(gen.measures_path);

  json report;
  report["version"] = std::string(kVersion);
  report["labels"] = {{"real", label_a}, {"generated", label_b}};
  report["n_real"] = real.rows.size();
  report["n_generated"] = gen.rows.size();
  report["pairs"] = pairing.pairs.size();
  report["unmatched_real"] = pairing.unmatched_a.size();
  report["unmatched_generated"] = pairing.unmatched_b.size();
  report["stage_split_date"] = split.iso();
  report["overlap_bins"] = bins;
  json notes = json::array();
  json measures = json::object();

  std::map<std::string, WeeklyTable> weekly_tables;
  for (const auto& spec : measure_specs()) {
    const std::vector<double> a = values_of(real.rows, spec);
    const std::vector<double> b = values_of(gen.rows, spec);
    json m;
    m["n_real"] = a.size();
    m["n_generated"] = b.size();
    m["mean_real"] = a.empty() ? json(nullptr) : json(stats::mean(a));
    m["mean_generated"] = b.empty() ? json(nullptr) : json(stats::mean(b));
    m["sd_real"] = a.size() < 2 ? json(nullptr) : json(stats::sample_sd(a));
    m["sd_generated"] = b.size() < 2 ? json(nullptr) : json(stats::sample_sd(b));
    m["cohen_d"] = guarded([&] { return stats::cohen_d(a, b); }, notes, spec.name + " cohen_d");
    m["overlap"] = a.empty() || b.empty()
                       ? json(nullptr)
                       : guarded([&] { return stats::overlap_coefficient(a, b, bins); }, notes,
                                 spec.name + " overlap");

    std::vector<double> pa;
    std::vector<double> pb;
    for (const auto& [i, j] : pairing.pairs) {
      auto va = spec.get(real.rows[i]);
      auto vb = spec.get(gen.rows[j]);
      if (va && vb) {
        pa.push_back(*va);
        pb.push_back(*vb);
      }
    }
    m["n_paired"] = pa.size();
    m["pearson_r_paired"] =
        guarded([&] { return stats::pearson_r(pa, pb); }, notes, spec.name + " pearson_r_paired");

    const auto da = dated_values(real.rows, spec);
    const auto db = dated_values(gen.rows, spec);
    WeeklyTable wt = weekly_table(stats::weekly_series(da), stats::weekly_series(db));
    std::vector<double> wa;
    std::vector<double> wb;
    for (const auto& w : wt.weeks) {
      if (wt.a.count(w) && wt.b.count(w)) {
        wa.push_back(wt.a.at(w).mean);
        wb.push_back(wt.b.at(w).mean);
      }
    }
    m["n_weeks_aligned"] = wa.size();
    m["pearson_r_weekly"] =
        guarded([&] { return stats::pearson_r(wa, wb); }, notes, spec.name + " pearson_r_weekly");

    const auto [a1, a2] = stats::stage_split(da, split);
    const auto [b1, b2] = stats::stage_split(db, split);
    json stages;
    stages["stage1"] = {{"real", stage_json(a1)}, {"generated", stage_json(b1)}};
    stages["stage2"] = {{"real", stage_json(a2)}, {"generated", stage_json(b2)}};
    m["stages"] = std::move(stages);
    measures[spec.name] = std::move(m);

    std::string csv = "week,real_mean,real_n,generated_mean,generated_n\n";
    for (const auto& w : wt.weeks) {
      csv += w + ",";
      auto ia = wt.a.find(w);
      auto ib = wt.b.find(w);
      csv += ia == wt.a.end() ? "," : csv_number(ia->second.mean) + "," + std::to_string(ia->second.n);
      csv += ",";
      csv += ib == wt.b.end() ? "," : csv_number(ib->second.mean) + "," + std::to_string(ib->second.n);
      csv += "\n";
    }
    dir.write("weekly_" + spec.name + ".csv", csv);
    weekly_tables[spec.name] = std::move(wt);
  }
  report["measures"] = std::move(measures);

  // Sentiment against focus within each corpus.
  json within;
  for (const auto* side : {&real, &gen}) {
    std::vector<double> s;
    std::vector<double> f;
    for (const auto& r : side->rows) {
      if (r.focus) {
        s.push_back(r.sentiment);
        f.push_back(*r.focus);
      }
    }
    const std::string name = side == &real ? "real" : "generated";
    within[name] = {{"sentiment_focus_r",
                     guarded([&] { return stats::pearson_r(f, s); }, notes,
                             name + " sentiment_focus_r")}};
  }
  report["within_corpus"] = std::move(within);

  // Keyness over the two frequency tables.
  json kj;
  std::error_code ec;
  if (fs::is_regular_file(real.frequencies_path, ec) && fs::is_regular_file(gen.frequencies_path, ec)) {
    dir.input(real.frequencies_path);
    dir.input(gen.frequencies_path);
    keyness::FrequencyTable ta = keyness::from_json(text::read_file(real.frequencies_path));
    keyness::FrequencyTable tb = keyness::from_json(text::read_file(gen.frequencies_path));
    const auto lexicon = get(o, "lexicon").empty()
                             ? sentiment::Lexicon::builtin()
                             : sentiment::Lexicon::from_file(existing_file(o, "lexicon"));
    bool active = false;
    const keyness::WordSet filter = vocabulary_filter(filter_spec, lexicon, active);
    keyness::RankedKeywords ranked;
    if (active && mode == "filter-first") {
      ta = keyness::restrict(ta, filter, filter_name(filter_spec));
      tb = keyness::restrict(tb, filter, filter_name(filter_spec));
      ranked = keyness::rank_keywords(ta, tb, 0);
    } else {
      ranked = keyness::rank_keywords(ta, tb, 0);
      if (active) {
        auto drop = [&](std::vector<keyness::KeynessEntry>& v) {
          v.erase(std::remove_if(v.begin(), v.end(),
                                 [&](const keyness::KeynessEntry& e) { return !filter.count(e.word); }),
                  v.end());
        };
        drop(ranked.favor_a);
        drop(ranked.favor_b);
      }
    }
    std::vector<double> all_ll;
    for (const auto* side : {&ranked.favor_a, &ranked.favor_b}) {
      for (const auto& e : *side) all_ll.push_back(e.log_likelihood);
    }
    kj["filter"] = filter_name(filter_spec);
    kj["mode"] = mode;
    kj["N_real"] = ta.total;
    kj["N_generated"] = tb.total;
    kj["words_with_positive_ll"] = all_ll.size();
    kj["mean_ll"] = all_ll.empty() ? json(nullptr) : json(stats::mean(all_ll));
    kj["p95_ll"] = all_ll.empty() ? json(nullptr) : json(stats::percentile(all_ll, 95.0));
    kj["real"] = keyness_side_summary(ranked.favor_a);
    kj["generated"] = keyness_side_summary(ranked.favor_b);

    dir.write("keyness.csv", keyness::keyness_csv(ranked, label_a, label_b));
    std::string table = "rank," + csv_field(label_a + "_word") + "," + csv_field(label_a + "_LL") +
                        "," + csv_field(label_b + "_word") + "," + csv_field(label_b + "_LL") + "\n";
    const std::size_t rows = std::min(top_k, std::max(ranked.favor_a.size(), ranked.favor_b.size()));
    for (std::size_t r = 0; r < rows; ++r) {
      table += std::to_string(r + 1) + ",";
      if (r < ranked.favor_a.size()) {
        table += csv_field(ranked.favor_a[r].word) + "," + text::format_fixed(ranked.favor_a[r].log_likelihood, 2);
      } else {
        table += ",";
      }
      table += ",";
      if (r < ranked.favor_b.size()) {
        table += csv_field(ranked.favor_b[r].word) + "," + text::format_fixed(ranked.favor_b[r].log_likelihood, 2);
      } else {
        table += ",";
      }
      table += "\n";
    }
    dir.write("keyness_table.csv", table);
  } else {
    notes.push_back("keyness skipped: frequencies.json missing beside a measures file");
    kj = nullptr;
  }
  report["keyness"] = std::move(kj);
  report["notes"] = std::move(notes);
  dir.write("report.json", report.dump(2) + "\n");

  // Figures.
  const std::string real_color = "#1f77b4";
  const std::string gen_color = "#d62728";
  {
    const WeeklyTable& wt = weekly_tables.at("sentiment");
    svg::Chart c;
    c.title = "Weekly mean article sentiment";
    c.x_label = "ISO week";
    c.y_label = "mean compound";
    c.x_ticks = wt.weeks;
    c.series.push_back({label_a, real_color, positions(wt.weeks.size()), series_y(wt, wt.a), false});
    c.series.push_back({label_b, gen_color, positions(wt.weeks.size()), series_y(wt, wt.b), true});
    dir.write("sentiment_weekly.svg", svg::line_chart(c));
  }
  {
    svg::Chart c;
    c.title = "Weekly mean entity mentions per article";
    c.x_label = "ISO week";
    c.y_label = "mentions per article";
    std::set<std::string> weeks;
    for (const char* kind : {"person", "gpe", "org"}) {
      for (const auto& w : weekly_tables.at(kind).weeks) weeks.insert(w);
    }
    c.x_ticks.assign(weeks.begin(), weeks.end());
    const std::map<std::string, std::string> colors = {
        {"person", "#2ca02c"}, {"gpe", "#1f77b4"}, {"org", "#ff7f0e"}};
    for (const char* kind : {"person", "gpe", "org"}) {
      WeeklyTable wt = weekly_tables.at(kind);
      wt.weeks = c.x_ticks;
      c.series.push_back({std::string(kind) + " (" + label_a + ")", colors.at(kind),
                          positions(wt.weeks.size()), series_y(wt, wt.a), false});
      c.series.push_back({std::string(kind) + " (" + label_b + ")", colors.at(kind),
                          positions(wt.weeks.size()), series_y(wt, wt.b), true});
    }
    dir.write("entities_weekly.svg", svg::line_chart(c));
  }
  {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto* side : {&real, &gen}) {
      for (const auto& r : side->rows) {
        if (r.focus) {
          lo = std::min(lo, *r.focus);
          hi = std::max(hi, *r.focus);
        }
      }
    }
    svg::Chart c;
    c.title = "Focus against sentiment";
    c.x_label = "focus (min-max normalized)";
    c.y_label = "mean compound";
    for (const auto* side : {&real, &gen}) {
      svg::Series s;
      s.label = side == &real ? label_a : label_b;
      s.color = side == &real ? real_color : gen_color;
      for (const auto& r : side->rows) {
        if (!r.focus) continue;
        s.x.push_back(hi > lo ? (*r.focus - lo) / (hi - lo) : 0.0);
        s.y.push_back(r.sentiment);
      }
      c.series.push_back(std::move(s));
    }
    dir.write("focus_sentiment.svg", svg::scatter_chart(c));
  }
  dir.finish(o);

  json summary;
  summary["command"] = "compare";
  summary["pairs"] = pairing.pairs.size();
  summary["sentiment_cohen_d"] = report["measures"]["sentiment"]["cohen_d"];
  summary["sentiment_overlap"] = report["measures"]["sentiment"]["overlap"];
  summary["out_dir"] = require(o, "out-dir");
  return summary.dump();
}

std::string run_generate(const Options& o, http::Client* client_override) {
  const std::string corpus_path = existing_file(o, "corpus");
  const std::string out_dir = require(o, "out-dir");
  const simulate::Strategy strategy = simulate::parse_strategy(get(o, "strategy", "standard"));

  simulate::GenerationConfig config;
  config.endpoint = get(o, "endpoint");
  config.model = get(o, "model");
  config.max_tokens = static_cast<int>(get_int(o, "max-tokens", 750, 1));
  config.max_in_flight = static_cast<std::size_t>(get_int(o, "max-in-flight", 4, 1));
  config.retry.attempts = static_cast<int>(get_int(o, "retries", 3, 1));
  config.retry.initial_backoff = std::chrono::milliseconds(get_int(o, "backoff-ms", 500, 0));
  config.cache_dir = get(o, "cache-dir", (fs::path(out_dir) / "cache").string());
  const std::vector<double> temps = temperatures(o);
  config.temperature = temps.front();
  simulate::validate(config);

  http::LiveClientOptions live_options;
  live_options.read_timeout = std::chrono::seconds(get_int(o, "timeout-seconds", 300, 1));
  http::LiveClient live(live_options);
  http::Client& client = client_override ? *client_override : live;

  const corpus::Corpus corpus = load_corpus(corpus_path, get(o, "label"));
  OutputDir dir(out_dir, "generate");
  dir.input(corpus_path);

  simulate::WaybackConfig wayback_config;
  wayback_config.api_url = get(o, "wayback-api", wayback_config.api_url);
  wayback_config.cache_dir = config.cache_dir;
  wayback_config.extract_pattern = get(o, "extract-pattern");
  wayback_config.retry = config.retry;
  simulate::WaybackClient wayback(wayback_config, client);
  const std::string source = get(o, "framework-source", std::string(kDefaultFrameworkSource));
  std::mutex wayback_mutex;

  simulate::FrameworkProvider provider;
  if (strategy == simulate::Strategy::kStatic) {
    const Date as_of = get_date(o, "static-as-of", kDefaultStaticAsOf);
    std::optional<simulate::FrameworkSnapshot> fixed;
    if (!get(o, "framework-file").empty()) {
      const std::string path = existing_file(o, "framework-file");
      dir.input(path);
      simulate::FrameworkSnapshot s;
      s.as_of = as_of;
      s.source_url = "file:" + fs::path(path).filename().string();
      s.snapshot_url = s.source_url;
      s.timestamp = as_of.compact() + "000000";
      s.description = text::collapse_whitespace(text::read_file(path));
      if (s.description.empty()) fail(ErrorCode::kMissingFramework, "framework file is empty: " + path);
      fixed = s;
    }
    provider = [&, fixed, as_of](const corpus::Article&) {
      if (fixed) return *fixed;
      std::lock_guard<std::mutex> lock(wayback_mutex);
      return wayback.fetch(source, as_of);
    };
  } else if (strategy == simulate::Strategy::kRolling) {
    provider = [&](const corpus::Article& a) {
      std::lock_guard<std::mutex> lock(wayback_mutex);
      return wayback.fetch(source, a.published_at);
    };
  }

  simulate::RunOptions run_options;
  run_options.strategy = strategy;
  run_options.temperatures = temps;
  run_options.checkpoint_dir = out_dir;
  run_options.framework_window_days = static_cast<int>(get_int(o, "framework-window-days", 31, 0));
  auto outputs = simulate::run_generation(corpus, config, run_options, client, provider);

  json summary;
  summary["command"] = "generate";
  summary["strategy"] = std::string(simulate::strategy_name(strategy));
  json runs = json::array();
  for (const auto& run : outputs) {
    const std::string name = "generated-" + run.model_tag + ".jsonl";
    dir.write(name, corpus::serialize_jsonl(run.corpus));
    std::vector<json> failures;
    for (const auto& f : run.failures) failures.push_back({{"article_id", f.article_id}, {"error", f.reason}});
    dir.write("failures-" + run.model_tag + ".jsonl", jsonl(failures));
    runs.push_back({{"model_tag", run.model_tag},
                    {"temperature", run.temperature},
                    {"output", name},
                    {"generated", run.corpus.size()},
                    {"failed", run.failures.size()},
                    {"network_calls", run.network_calls}});
  }
  dir.finish(o);
  summary["runs"] = std::move(runs);
  summary["wayback_requests"] = wayback.network_requests();
  return summary.dump();
}

std::string run_command(std::string_view command, const Options& options) {
  for (const auto& [k, v] : options) {
    if (!is_known_option(command, k)) {
      fail(ErrorCode::kInvalidArgument,
           "unknown option --" + k + " for command " + std::string(command));
    }
  }
  if (command == "ingest") return run_ingest(options);
  if (command == "measure") return run_measure(options);
  if (command == "compare") return run_compare(options);
  if (command == "generate") return run_generate(options);
  fail(ErrorCode::kInvalidArgument, "unknown command '" + std::string(command) + "'");
}

Options parse_config(std::string_view contents) {
  Options out;
  std::string section;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(contents, '\n')) {
    ++line_no;
    std::string line(text::trim(raw));
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(ErrorCode::kInvalidArgument, "config line " + std::to_string(line_no) + ": bad section header");
      }
      section = std::string(text::trim(std::string_view(line).substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::kInvalidArgument, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(text::trim(std::string_view(line).substr(0, eq)));
    std::string value(text::trim(std::string_view(line).substr(eq + 1)));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    } else {
      const auto hash = value.find(" #");
      if (hash != std::string::npos) value = std::string(text::trim(value.substr(0, hash)));
    }
    if (key.empty()) {
      fail(ErrorCode::kInvalidArgument, "config line " + std::to_string(line_no) + ": empty key");
    }
    std::replace(key.begin(), key.end(), '_', '-');
    out[section.empty() ? key : section + "." + key] = value;
  }
  return out;
}

}  // namespace cfp::pipeline
