#pragma once

#include <string>
#include <string_view>

#include "hamse/rdf.h"

namespace hamse::rdf {

/// Prefix header, then one statement per subject. Subjects, predicates and
/// objects are written in Term order, so output depends only on the triple
/// set and the prefix table.
std::string serialize_turtle(const TripleGraph& g);

/// Turtle subset: @prefix / PREFIX, IRIs, prefixed names, blank node labels,
/// quoted literals with ^^datatype or @lang, bare integers/decimals/doubles/
/// booleans, the `a` keyword, and `;` / `,` lists. Throws ParseError with the
/// line number on anything else.
TripleGraph parse_turtle(std::string_view text);

/// One fully expanded triple per line, same order as the Turtle writer.
std::string serialize_ntriples(const TripleGraph& g);

}  // namespace hamse::rdf
