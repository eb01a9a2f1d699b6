#pragma once

#include <compare>
#include <set>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

namespace hamse::rdf {

enum class TermKind { Iri, Blank, Literal };

/// An RDF term. Literals always carry a datatype (plain literals are
/// xsd:string) unless they carry a language tag.
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;     // IRI, blank node label, or lexical form
  std::string datatype;  // literals only
  std::string lang;      // literals only

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_literal() const { return kind == TermKind::Literal; }
};

inline const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfs = "http://www.w3.org/2000/01/rdf-schema#";

Term iri(std::string value);
Term blank(std::string label);
Term literal(std::string lexical, std::string datatype = kXsd + "string");
Term lang_literal(std::string lexical, std::string lang);
Term integer_literal(long long v);
/// Six decimal places, xsd:double.
Term seconds_literal(double v);
Term double_literal(double v);
Term boolean_literal(bool v);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

struct PosOrder {
  bool operator()(const Triple& a, const Triple& b) const {
    return std::tie(a.predicate, a.object, a.subject) < std::tie(b.predicate, b.object, b.subject);
  }
};

using PrefixTable = std::vector<std::pair<std::string, std::string>>;  // prefix -> namespace

/// Triple set with a subject-ordered and a predicate-ordered index.
class TripleGraph {
 public:
  using SpoSet = std::set<Triple>;
  using PosSet = std::set<Triple, PosOrder>;

  TripleGraph();

  /// Returns false when the triple was already present.
  bool add(Triple t);
  bool add(Term s, Term p, Term o) { return add(Triple{std::move(s), std::move(p), std::move(o)}); }
  void merge(const TripleGraph& other);

  bool contains(const Triple& t) const { return spo_.count(t) > 0; }
  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  const SpoSet& triples() const { return spo_; }
  std::pair<SpoSet::const_iterator, SpoSet::const_iterator> with_subject(const Term& s) const;
  std::pair<PosSet::const_iterator, PosSet::const_iterator> with_predicate(const Term& p) const;
  std::pair<PosSet::const_iterator, PosSet::const_iterator> with_predicate_object(const Term& p,
                                                                                  const Term& o) const;

  const PrefixTable& prefixes() const { return prefixes_; }
  void set_prefix(const std::string& prefix, const std::string& ns);

  /// Set equality of triples; prefixes are presentation only.
  bool operator==(const TripleGraph& other) const { return spo_ == other.spo_; }

 private:
  SpoSet spo_;
  PosSet pos_;
  PrefixTable prefixes_;
};

}  // namespace hamse::rdf
