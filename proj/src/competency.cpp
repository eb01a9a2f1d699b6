#include "hamse/competency.h"

#include <algorithm>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "hamse/error.h"
#include "hamse/query.h"
#include "hamse/vocabulary.h"

namespace hamse {

using rdf::Binding;
using rdf::Term;
using rdf::TripleGraph;
using rdf::TriplePattern;
using rdf::var;
namespace v = vocab;

std::string question_text(CompetencyQuestion cq) {
  switch (cq) {
    case CompetencyQuestion::Tonality: return "What is the tonality?";
    case CompetencyQuestion::Composer: return "Who is the composer?";
    case CompetencyQuestion::MovementCount: return "What is the number of movements?";
    case CompetencyQuestion::DurationSeconds: return "How long (in seconds) is the song?";
    case CompetencyQuestion::DurationBars: return "How long (in bars) is the song?";
    case CompetencyQuestion::EmotionCategory: return "Which predominant emotion quadrant does it belong to?";
    case CompetencyQuestion::BarCorrespondence: return "Where does a bar fall in each audio recording?";
    case CompetencyQuestion::PatternFrequencyInCategory:
      return "How common is this pattern in songs of a given emotion quadrant?";
    case CompetencyQuestion::PatternPredominantCategory:
      return "In which predominant quadrant is this pattern most common?";
    case CompetencyQuestion::TopPatternsInCategory: return "Which patterns are most common in a quadrant?";
    case CompetencyQuestion::CommonStructuresForPattern:
      return "Which structures are most common in songs containing this pattern?";
    case CompetencyQuestion::TopComposerForPattern:
      return "Which composer wrote the most songs containing this pattern?";
  }
  return "?";
}

namespace {

const std::string& require(const CqArgs& args, const std::string& name, CompetencyQuestion cq) {
  auto it = args.find(name);
  if (it == args.end() || it->second.empty())
    throw InputError(fmt::format("CQ{} needs argument '{}'", static_cast<int>(cq), name));
  return it->second;
}

std::optional<std::string> optional_arg(const CqArgs& args, const std::string& name) {
  auto it = args.find(name);
  if (it == args.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

long long to_int(const Term& t) { return std::stoll(t.value); }
double to_real(const Term& t) { return std::stod(t.value); }

Term work_term(const CqArgs& args, CompetencyQuestion cq) { return rdf::iri(require(args, "work", cq)); }

std::vector<Term> works(const TripleGraph& g) {
  std::vector<Term> out;
  for (const auto& b : rdf::match(g, {{var("w"), v::type(), v::mo("MusicalWork")}})) out.push_back(b.at("w"));
  return out;
}

std::vector<Term> recordings_of(const TripleGraph& g, const Term& work) {
  std::vector<Term> out;
  for (const auto& b : rdf::match(g, {{var("p"), v::mo("performance_of"), work},
                                      {var("p"), v::mo("produced_sound"), var("s")},
                                      {var("r"), v::mo("records"), var("s")}}))
    out.push_back(b.at("r"));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// quadrant -> number of recordings tagged with it
std::map<std::string, long long> quadrant_counts(const TripleGraph& g, const Term& work) {
  std::map<std::string, long long> counts;
  for (const auto& rec : recordings_of(g, work))
    for (const auto& b : rdf::match(g, {{var("e"), v::hamse("extractedFrom"), rec},
                                        {var("e"), v::type(), v::hamse("Emotion")},
                                        {var("e"), v::hamse("quadrant"), var("q")}}))
      ++counts[b.at("q").value];
  return counts;
}

std::optional<std::string> predominant_quadrant(const TripleGraph& g, const Term& work) {
  std::optional<std::string> best;
  long long best_n = 0;
  for (const auto& [q, n] : quadrant_counts(g, work))  // map order: ties go to the lower quadrant
    if (n > best_n) {
      best = q;
      best_n = n;
    }
  return best;
}

std::optional<Term> kind_class(const CqArgs& args) {
  auto kind = optional_arg(args, "kind");
  if (!kind) return std::nullopt;
  if (*kind == "interval") return v::hamse("IntervalPattern");
  if (*kind == "rhythmic") return v::hamse("RhythmicPattern");
  if (*kind == "melodic") return v::hamse("MelodicPattern");
  if (*kind == "progression") return v::hamse("ChordProgression");
  throw InputError("unknown pattern kind '" + *kind + "'");
}

struct PatternHit {
  Term feature;
  Term work;
  std::string key;
  std::string cls;
  long long count = 0;
};

// Every pattern-like feature (optionally restricted to one key and class)
// together with the work its representation belongs to.
std::vector<PatternHit> pattern_hits(const TripleGraph& g, const std::optional<std::string>& key,
                                     const std::optional<Term>& cls) {
  rdf::PatternTerm key_term = key ? rdf::PatternTerm(rdf::literal(*key)) : var("key");
  std::vector<TriplePattern> q{
      {var("f"), v::hamse("patternKey"), key_term},
      {var("f"), v::hamse("occurrenceCount"), var("n")},
      {var("f"), v::hamse("extractedFrom"), var("rep")},
      {var("mv"), v::hamse("hasSymbolicRepresentation"), var("rep")},
      {var("w"), v::mo("movement"), var("mv")},
      {var("f"), v::type(), var("cls")},
  };
  std::vector<PatternHit> out;
  for (const auto& b : rdf::match(g, q, {.expand_subclasses = false})) {
    const Term& c = b.at("cls");
    if (cls && c != *cls) continue;
    if (!(c == v::hamse("IntervalPattern") || c == v::hamse("RhythmicPattern") ||
          c == v::hamse("MelodicPattern") || c == v::hamse("ChordProgression")))
      continue;
    out.push_back({b.at("f"), b.at("w"), key ? *key : b.at("key").value, c.value.substr(v::kHamse.size()),
                   to_int(b.at("n"))});
  }
  return out;
}

std::map<Term, long long> pattern_count_by_work(const TripleGraph& g, const std::string& key,
                                                const std::optional<Term>& cls) {
  std::map<Term, long long> out;
  for (const auto& h : pattern_hits(g, key, cls)) out[h.work] += h.count;
  return out;
}

std::string composer_of(const TripleGraph& g, const Term& work) {
  auto rows = rdf::match(g, {{var("c"), v::mo("produced_work"), work},
                             {var("c"), v::mo("composer"), var("a")},
                             {var("a"), v::foaf("name"), var("name")}});
  return rows.empty() ? std::string() : rows.front().at("name").value;
}

std::string share(long long a, long long b) { return fmt::format("{:.6f}", b == 0 ? 0.0 : double(a) / double(b)); }

CqResult tonality(const TripleGraph& g, const CqArgs& args) {
  const Term w = work_term(args, CompetencyQuestion::Tonality);
  CqResult r{{"key"}, {}};
  for (const auto& b : rdf::match(g, {{w, v::mo("key"), var("k")}, {var("k"), v::label(), var("label")}}))
    r.rows.push_back({b.at("label").value});
  return r;
}

CqResult composer(const TripleGraph& g, const CqArgs& args) {
  const Term w = work_term(args, CompetencyQuestion::Composer);
  CqResult r{{"composer"}, {}};
  for (const auto& b : rdf::match(g, {{var("c"), v::mo("produced_work"), w},
                                      {var("c"), v::mo("composer"), var("a")},
                                      {var("a"), v::foaf("name"), var("name")}}))
    r.rows.push_back({b.at("name").value});
  return r;
}

CqResult movement_count(const TripleGraph& g, const CqArgs& args) {
  const Term w = work_term(args, CompetencyQuestion::MovementCount);
  auto rows = rdf::match(g, {{w, v::mo("movement"), var("m")}});
  return {{"movements"}, {{std::to_string(rows.size())}}};
}

CqResult duration_seconds(const TripleGraph& g, const CqArgs& args) {
  const Term w = work_term(args, CompetencyQuestion::DurationSeconds);
  auto only = optional_arg(args, "recording");
  CqResult r{{"recording", "seconds"}, {}};
  for (const auto& rec : recordings_of(g, w)) {
    if (only && rec.value != *only) continue;
    auto rows = rdf::match(g, {{rec, v::mo("produced_signal"), var("sig")},
                               {var("sig"), v::mo("time"), var("ext")},
                               {var("ext"), v::hamse("startSecond"), var("a")},
                               {var("ext"), v::hamse("endSecond"), var("b")}});
    std::optional<double> seconds;
    for (const auto& b : rows) seconds = std::max(seconds.value_or(0.0), to_real(b.at("b")) - to_real(b.at("a")));
    if (seconds) r.rows.push_back({rec.value, fmt::format("{:.6f}", *seconds)});
  }
  return r;
}

CqResult duration_bars(const TripleGraph& g, const CqArgs& args) {
  const Term w = work_term(args, CompetencyQuestion::DurationBars);
  auto rows = rdf::match(g, {{w, v::mo("movement"), var("mv")},
                             {var("mv"), v::hamse("hasSymbolicRepresentation"), var("rep")},
                             {var("rep"), v::hamse("hasPart"), var("part")},
                             {var("part"), v::hamse("hasVoice"), var("voice")},
                             {var("voice"), v::hamse("hasSymbolicEvent"), var("e")},
                             {var("e"), v::hamse("hasPosition"), var("i")},
                             {var("i"), v::hamse("atBar"), var("bar")}});
  if (rows.empty()) return {{"bars"}, {}};
  long long best = to_int(rows.front().at("bar"));
  for (const auto& b : rows) best = std::max(best, to_int(b.at("bar")));
  return {{"bars"}, {{std::to_string(best)}}};
}

CqResult emotion_category(const TripleGraph& g, const CqArgs& args) {
  const Term w = work_term(args, CompetencyQuestion::EmotionCategory);
  std::vector<std::pair<long long, std::string>> order;
  for (const auto& [q, n] : quadrant_counts(g, w)) order.emplace_back(-n, q);
  std::sort(order.begin(), order.end());
  CqResult r{{"quadrant", "recordings"}, {}};
  for (const auto& [neg, q] : order) r.rows.push_back({q, std::to_string(-neg)});
  return r;
}

CqResult bar_correspondence(const TripleGraph& g, const CqArgs& args) {
  const Term w = work_term(args, CompetencyQuestion::BarCorrespondence);
  const std::string& bar_text = require(args, "bar", CompetencyQuestion::BarCorrespondence);
  long long bar = 0;
  try {
    bar = std::stoll(bar_text);
  } catch (const std::exception&) {
    throw InputError("CQ7 argument 'bar' is not an integer: " + bar_text);
  }
  auto only = optional_arg(args, "recording");
  CqResult r{{"recording", "start_s", "end_s"}, {}};
  for (const auto& rec : recordings_of(g, w)) {
    if (only && rec.value != *only) continue;
    for (const auto& b : rdf::match(g, {{rec, v::hamse("hasTimeLineMap"), var("map")},
                                        {var("bi"), v::hamse("mappedBy"), var("map")},
                                        {var("bi"), v::hamse("atBar"), rdf::integer_literal(bar)},
                                        {var("bi"), v::hamse("startSecond"), var("a")},
                                        {var("bi"), v::hamse("endSecond"), var("b")}}))
      r.rows.push_back({rec.value, b.at("a").value, b.at("b").value});
  }
  return r;
}

std::string require_quadrant(const CqArgs& args, CompetencyQuestion cq) {
  const std::string& q = require(args, "quadrant", cq);
  if (q != "Q1" && q != "Q2" && q != "Q3" && q != "Q4")
    throw InputError(fmt::format("CQ{} argument 'quadrant' must be Q1..Q4, got '{}'", static_cast<int>(cq), q));
  return q;
}

std::map<Term, std::string> predominant_by_work(const TripleGraph& g) {
  std::map<Term, std::string> out;
  for (const auto& w : works(g))
    if (auto q = predominant_quadrant(g, w)) out[w] = *q;
  return out;
}

CqResult pattern_frequency(const TripleGraph& g, const CqArgs& args) {
  const auto cq = CompetencyQuestion::PatternFrequencyInCategory;
  const std::string& key = require(args, "pattern", cq);
  const std::string quadrant = require_quadrant(args, cq);
  auto by_work = pattern_count_by_work(g, key, kind_class(args));
  long long in_category = 0, with_pattern = 0, occurrences = 0;
  for (const auto& [w, q] : predominant_by_work(g)) {
    if (q != quadrant) continue;
    ++in_category;
    auto it = by_work.find(w);
    if (it == by_work.end()) continue;
    ++with_pattern;
    occurrences += it->second;
  }
  return {{"works_in_quadrant", "works_with_pattern", "occurrences", "share"},
          {{std::to_string(in_category), std::to_string(with_pattern), std::to_string(occurrences),
            share(with_pattern, in_category)}}};
}

CqResult pattern_predominant(const TripleGraph& g, const CqArgs& args) {
  const std::string& key = require(args, "pattern", CompetencyQuestion::PatternPredominantCategory);
  auto by_work = pattern_count_by_work(g, key, kind_class(args));
  std::map<std::string, std::pair<long long, long long>> per_q;  // quadrant -> (works, occurrences)
  for (const auto& [w, q] : predominant_by_work(g)) {
    auto it = by_work.find(w);
    if (it == by_work.end()) continue;
    per_q[q].first += 1;
    per_q[q].second += it->second;
  }
  std::vector<std::tuple<long long, long long, std::string>> order;
  for (const auto& [q, wn] : per_q) order.emplace_back(-wn.second, -wn.first, q);
  std::sort(order.begin(), order.end());
  CqResult r{{"quadrant", "occurrences", "works"}, {}};
  for (const auto& [occ, wn, q] : order) r.rows.push_back({q, std::to_string(-occ), std::to_string(-wn)});
  return r;
}

CqResult top_patterns(const TripleGraph& g, const CqArgs& args) {
  const auto cq = CompetencyQuestion::TopPatternsInCategory;
  const std::string quadrant = require_quadrant(args, cq);
  std::size_t limit = 10;
  if (auto l = optional_arg(args, "limit")) {
    try {
      limit = static_cast<std::size_t>(std::stoul(*l));
    } catch (const std::exception&) {
      throw InputError("CQ10 argument 'limit' is not a number: " + *l);
    }
  }
  auto category = predominant_by_work(g);
  // (class, key) -> (occurrences, works)
  std::map<std::pair<std::string, std::string>, std::pair<long long, std::set<Term>>> agg;
  for (const auto& h : pattern_hits(g, std::nullopt, kind_class(args))) {
    auto it = category.find(h.work);
    if (it == category.end() || it->second != quadrant) continue;
    auto& slot = agg[{h.cls, h.key}];
    slot.first += h.count;
    slot.second.insert(h.work);
  }
  std::vector<std::tuple<long long, long long, std::string, std::string>> order;
  for (const auto& [ck, v] : agg)
    order.emplace_back(-v.first, -static_cast<long long>(v.second.size()), ck.second, ck.first);
  std::sort(order.begin(), order.end());
  CqResult r{{"pattern", "class", "occurrences", "works"}, {}};
  for (const auto& [occ, wn, key, cls] : order) {
    if (r.rows.size() >= limit) break;
    r.rows.push_back({key, cls, std::to_string(-occ), std::to_string(-wn)});
  }
  return r;
}

std::string structure_form(const TripleGraph& g, const Term& rec) {
  auto rows = rdf::match(g, {{var("s"), v::hamse("extractedFrom"), rec},
                             {var("s"), v::type(), v::hamse("Structure")},
                             {var("s"), v::hamse("segmentIndex"), var("i")},
                             {var("s"), v::hamse("structureLabel"), var("label")}});
  std::vector<std::pair<long long, std::string>> seq;
  for (const auto& b : rows) seq.emplace_back(to_int(b.at("i")), b.at("label").value);
  std::sort(seq.begin(), seq.end());
  std::string out;
  for (const auto& [i, label] : seq) out += (out.empty() ? "" : " ") + label;
  return out;
}

CqResult common_structures(const TripleGraph& g, const CqArgs& args) {
  const std::string& key = require(args, "pattern", CompetencyQuestion::CommonStructuresForPattern);
  std::map<std::string, long long> forms;
  for (const auto& [w, n] : pattern_count_by_work(g, key, kind_class(args)))
    for (const auto& rec : recordings_of(g, w)) {
      std::string form = structure_form(g, rec);
      if (!form.empty()) ++forms[form];
    }
  std::vector<std::pair<long long, std::string>> order;
  for (const auto& [f, n] : forms) order.emplace_back(-n, f);
  std::sort(order.begin(), order.end());
  CqResult r{{"structure", "recordings"}, {}};
  for (const auto& [n, f] : order) r.rows.push_back({f, std::to_string(-n)});
  return r;
}

CqResult top_composer(const TripleGraph& g, const CqArgs& args) {
  const std::string& key = require(args, "pattern", CompetencyQuestion::TopComposerForPattern);
  std::map<std::string, long long> per_composer;
  for (const auto& [w, n] : pattern_count_by_work(g, key, kind_class(args))) {
    std::string name = composer_of(g, w);
    if (!name.empty()) ++per_composer[name];
  }
  std::vector<std::pair<long long, std::string>> order;
  for (const auto& [name, n] : per_composer) order.emplace_back(-n, name);
  std::sort(order.begin(), order.end());
  CqResult r{{"composer", "works"}, {}};
  for (const auto& [n, name] : order) r.rows.push_back({name, std::to_string(-n)});
  return r;
}

}  // namespace

CqResult answer_cq(const TripleGraph& g, CompetencyQuestion cq, const CqArgs& args) {
  switch (cq) {
    case CompetencyQuestion::Tonality: return tonality(g, args);
    case CompetencyQuestion::Composer: return composer(g, args);
    case CompetencyQuestion::MovementCount: return movement_count(g, args);
    case CompetencyQuestion::DurationSeconds: return duration_seconds(g, args);
    case CompetencyQuestion::DurationBars: return duration_bars(g, args);
    case CompetencyQuestion::EmotionCategory: return emotion_category(g, args);
    case CompetencyQuestion::BarCorrespondence: return bar_correspondence(g, args);
    case CompetencyQuestion::PatternFrequencyInCategory: return pattern_frequency(g, args);
    case CompetencyQuestion::PatternPredominantCategory: return pattern_predominant(g, args);
    case CompetencyQuestion::TopPatternsInCategory: return top_patterns(g, args);
    case CompetencyQuestion::CommonStructuresForPattern: return common_structures(g, args);
    case CompetencyQuestion::TopComposerForPattern: return top_composer(g, args);
  }
  throw InputError("unknown competency question");
}

std::string answer_report(const TripleGraph& g, const CqArgs& args) {
  std::string out;
  bool has_recording = false;
  if (auto w = optional_arg(args, "work")) has_recording = !recordings_of(g, rdf::iri(*w)).empty();
  for (int i = 1; i <= kCompetencyQuestionCount; ++i) {
    auto cq = static_cast<CompetencyQuestion>(i);
    out += fmt::format("CQ{} {}\n", i, question_text(cq));
    bool needs_recording = cq == CompetencyQuestion::DurationSeconds || cq == CompetencyQuestion::EmotionCategory ||
                           cq == CompetencyQuestion::BarCorrespondence;
    if (needs_recording && !has_recording) {
      out += "  no recording\n";
      continue;
    }
    try {
      CqResult r = answer_cq(g, cq, args);
      if (r.empty()) {
        out += "  no answer\n";
        continue;
      }
      std::string header;
      for (const auto& c : r.columns) header += (header.empty() ? "" : " | ") + c;
      out += "  " + header + "\n";
      for (const auto& row : r.rows) {
        std::string line;
        for (const auto& cell : row) line += (line.empty() ? "" : " | ") + cell;
        out += "  -> " + line + "\n";
      }
    } catch (const InputError& e) {
      out += std::string("  not answered: ") + e.what() + "\n";
    }
  }
  return out;
}

}  // namespace hamse
