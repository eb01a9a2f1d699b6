#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hamse/rdf.h"

namespace hamse::rdf {

struct Variable {
  std::string name;
  bool operator==(const Variable&) const = default;
};

using PatternTerm = std::variant<Variable, Term>;

inline PatternTerm var(std::string name) { return Variable{std::move(name)}; }

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

/// Variable name -> bound term. Ordered so solutions compare lexicographically.
using Binding = std::map<std::string, Term>;

struct MatchOptions {
  /// (?x rdf:type C) also matches instances of direct subclasses of C.
  bool expand_subclasses = true;
};

/// Natural join of the patterns. Each solution binds every variable that
/// occurs in the patterns; the result is duplicate-free and sorted. An empty
/// pattern list yields one empty solution.
std::vector<Binding> match(const TripleGraph& g, const std::vector<TriplePattern>& patterns,
                           const MatchOptions& options = {});

}  // namespace hamse::rdf
