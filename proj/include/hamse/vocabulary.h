#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hamse/rdf.h"

namespace hamse::vocab {

inline const std::string kHamse = "https://purl.org/andreapoltronieri/HaMSEontology#";
inline const std::string kMo = "http://purl.org/ontology/mo/";
inline const std::string kFrbr = "http://purl.org/vocab/frbr/core#";
inline const std::string kTl = "http://purl.org/NET/c4dm/timeline.owl#";
inline const std::string kFoaf = "http://xmlns.com/foaf/0.1/";
inline const std::string kDc = "http://purl.org/dc/elements/1.1/";

rdf::Term hamse(std::string_view local);
rdf::Term mo(std::string_view local);
rdf::Term frbr(std::string_view local);
rdf::Term tl(std::string_view local);
rdf::Term foaf(std::string_view local);
rdf::Term dc(std::string_view local);
rdf::Term rdf_(std::string_view local);
rdf::Term rdfs(std::string_view local);
rdf::Term xsd(std::string_view local);

rdf::Term type();        // rdf:type
rdf::Term sub_class();   // rdfs:subClassOf
rdf::Term label();       // rdfs:label

enum class TermRole { Class, Property, Individual };

struct VocabEntry {
  std::string iri;
  TermRole role;
};

/// Every class, property and named individual the emitters may produce.
const std::vector<VocabEntry>& table();
bool is_class(const std::string& iri);
bool is_property(const std::string& iri);
bool is_known(const std::string& iri);

/// Closed-vocabulary scan. Returns one message per offending triple:
/// predicates outside the table, rdf:type objects that are not known
/// classes, and IRIs inside a vocabulary namespace that are not in the table.
std::vector<std::string> closed_vocabulary_violations(const rdf::TripleGraph& g);

/// Subclass axioms plus the named accidental individuals. Emitted into every
/// graph so one level of subclass expansion can answer type queries.
rdf::TripleGraph schema_preamble();

}  // namespace hamse::vocab
