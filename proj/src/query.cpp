#include "hamse/query.h"

#include <algorithm>
#include <set>

#include "hamse/error.h"

namespace hamse::rdf {

namespace {

const Term* resolve(const PatternTerm& p, const Binding& b) {
  if (const auto* t = std::get_if<Term>(&p)) return t;
  auto it = b.find(std::get<Variable>(p).name);
  return it == b.end() ? nullptr : &it->second;
}

// Binds p to t, or checks consistency when already bound.
bool unify(const PatternTerm& p, const Term& t, Binding& b) {
  if (const auto* fixed = std::get_if<Term>(&p)) return *fixed == t;
  const std::string& name = std::get<Variable>(p).name;
  auto [it, inserted] = b.emplace(name, t);
  return inserted || it->second == t;
}

class Matcher {
 public:
  Matcher(const TripleGraph& g, const std::vector<TriplePattern>& patterns, const MatchOptions& options)
      : g_(g), patterns_(patterns), options_(options), rdf_type_(iri(kRdf + "type")),
        subclass_(iri(kRdfs + "subClassOf")) {}

  std::set<Binding> run() {
    Binding b;
    step(0, b);
    return std::move(out_);
  }

 private:
  void step(std::size_t k, const Binding& b) {
    if (k == patterns_.size()) {
      out_.insert(b);
      return;
    }
    const TriplePattern& pat = patterns_[k];
    const Term* s = resolve(pat.subject, b);
    const Term* p = resolve(pat.predicate, b);
    const Term* o = resolve(pat.object, b);

    if (options_.expand_subclasses && p && *p == rdf_type_ && o && o->is_iri()) {
      std::vector<Term> classes{*o};
      auto [lo, hi] = g_.with_predicate_object(subclass_, *o);
      for (auto it = lo; it != hi; ++it) classes.push_back(it->subject);
      for (const Term& c : classes) visit(k, b, s, p, &c, c);
      return;
    }
    visit(k, b, s, p, o, Term{});
  }

  // Enumerates triples for the resolved pattern. When `object_override` is
  // used the object position was fixed to a subclass and is not unified.
  void visit(std::size_t k, const Binding& b, const Term* s, const Term* p, const Term* o, const Term& override_o) {
    const TriplePattern& pat = patterns_[k];
    const bool overridden = o == &override_o;
    auto consider = [&](const Triple& t) {
      if (s && t.subject != *s) return;
      if (p && t.predicate != *p) return;
      if (o && t.object != *o) return;
      Binding next = b;
      if (!unify(pat.subject, t.subject, next) || !unify(pat.predicate, t.predicate, next)) return;
      if (!overridden && !unify(pat.object, t.object, next)) return;
      step(k + 1, next);
    };
    if (s) {
      auto [lo, hi] = g_.with_subject(*s);
      for (auto it = lo; it != hi; ++it) consider(*it);
    } else if (p && o) {
      auto [lo, hi] = g_.with_predicate_object(*p, *o);
      for (auto it = lo; it != hi; ++it) consider(*it);
    } else if (p) {
      auto [lo, hi] = g_.with_predicate(*p);
      for (auto it = lo; it != hi; ++it) consider(*it);
    } else {
      for (const auto& t : g_.triples()) consider(t);
    }
  }

  const TripleGraph& g_;
  const std::vector<TriplePattern>& patterns_;
  const MatchOptions& options_;
  Term rdf_type_;
  Term subclass_;
  std::set<Binding> out_;
};

}  // namespace

std::vector<Binding> match(const TripleGraph& g, const std::vector<TriplePattern>& patterns,
                           const MatchOptions& options) {
  for (const auto& pat : patterns)
    if (const auto* t = std::get_if<Term>(&pat.predicate); t && !t->is_iri())
      throw InputError("pattern predicate must be an IRI or a variable");
  auto solutions = Matcher(g, patterns, options).run();
  return {solutions.begin(), solutions.end()};
}

}  // namespace hamse::rdf
