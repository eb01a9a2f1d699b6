#include "hamse/rdf.h"

#include <algorithm>

#include <fmt/format.h>

namespace hamse::rdf {

Term iri(std::string value) { return Term{TermKind::Iri, std::move(value), {}, {}}; }
Term blank(std::string label) { return Term{TermKind::Blank, std::move(label), {}, {}}; }
Term literal(std::string lexical, std::string datatype) {
  return Term{TermKind::Literal, std::move(lexical), std::move(datatype), {}};
}
Term lang_literal(std::string lexical, std::string lang) {
  return Term{TermKind::Literal, std::move(lexical), {}, std::move(lang)};
}
Term integer_literal(long long v) { return literal(std::to_string(v), kXsd + "integer"); }
Term seconds_literal(double v) { return literal(fmt::format("{:.6f}", v), kXsd + "double"); }
Term double_literal(double v) { return literal(fmt::format("{:.6f}", v), kXsd + "double"); }
Term boolean_literal(bool v) { return literal(v ? "true" : "false", kXsd + "boolean"); }

TripleGraph::TripleGraph() {
  prefixes_ = {
      {"hamse", "https://purl.org/andreapoltronieri/HaMSEontology#"},
      {"mo", "http://purl.org/ontology/mo/"},
      {"frbr", "http://purl.org/vocab/frbr/core#"},
      {"tl", "http://purl.org/NET/c4dm/timeline.owl#"},
      {"foaf", "http://xmlns.com/foaf/0.1/"},
      {"dc", "http://purl.org/dc/elements/1.1/"},
      {"rdf", kRdf},
      {"rdfs", kRdfs},
      {"xsd", kXsd},
  };
}

bool TripleGraph::add(Triple t) {
  auto [it, inserted] = spo_.insert(t);
  if (inserted) pos_.insert(std::move(t));
  return inserted;
}

void TripleGraph::merge(const TripleGraph& other) {
  for (const auto& t : other.spo_) add(t);
  for (const auto& [p, ns] : other.prefixes_) set_prefix(p, ns);
}

std::pair<TripleGraph::SpoSet::const_iterator, TripleGraph::SpoSet::const_iterator> TripleGraph::with_subject(
    const Term& s) const {
  auto first = spo_.lower_bound(Triple{s, {}, {}});
  auto last = first;
  while (last != spo_.end() && last->subject == s) ++last;
  return {first, last};
}

std::pair<TripleGraph::PosSet::const_iterator, TripleGraph::PosSet::const_iterator> TripleGraph::with_predicate(
    const Term& p) const {
  auto first = pos_.lower_bound(Triple{{}, p, {}});
  auto last = first;
  while (last != pos_.end() && last->predicate == p) ++last;
  return {first, last};
}

std::pair<TripleGraph::PosSet::const_iterator, TripleGraph::PosSet::const_iterator>
TripleGraph::with_predicate_object(const Term& p, const Term& o) const {
  auto first = pos_.lower_bound(Triple{{}, p, o});
  auto last = first;
  while (last != pos_.end() && last->predicate == p && last->object == o) ++last;
  return {first, last};
}

void TripleGraph::set_prefix(const std::string& prefix, const std::string& ns) {
  auto it = std::find_if(prefixes_.begin(), prefixes_.end(), [&](const auto& e) { return e.first == prefix; });
  if (it == prefixes_.end())
    prefixes_.emplace_back(prefix, ns);
  else
    it->second = ns;
}

}  // namespace hamse::rdf
