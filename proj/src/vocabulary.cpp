#include "hamse/vocabulary.h"

#include <algorithm>
#include <unordered_map>

namespace hamse::vocab {

using rdf::Term;

Term hamse(std::string_view local) { return rdf::iri(kHamse + std::string(local)); }
Term mo(std::string_view local) { return rdf::iri(kMo + std::string(local)); }
Term frbr(std::string_view local) { return rdf::iri(kFrbr + std::string(local)); }
Term tl(std::string_view local) { return rdf::iri(kTl + std::string(local)); }
Term foaf(std::string_view local) { return rdf::iri(kFoaf + std::string(local)); }
Term dc(std::string_view local) { return rdf::iri(kDc + std::string(local)); }
Term rdf_(std::string_view local) { return rdf::iri(rdf::kRdf + std::string(local)); }
Term rdfs(std::string_view local) { return rdf::iri(rdf::kRdfs + std::string(local)); }
Term xsd(std::string_view local) { return rdf::iri(rdf::kXsd + std::string(local)); }

Term type() { return rdf_("type"); }
Term sub_class() { return rdfs("subClassOf"); }
Term label() { return rdfs("label"); }

namespace {

const char* const kHamseClasses[] = {
    "MusicologicalFeature", "SymbolicRepresentation", "Part", "Voice", "Section", "SymbolicEvent",
    "NoteC", "NoteD", "NoteE", "NoteF", "NoteG", "NoteA", "NoteB", "Rest",
    "Accidental", "Dynamic", "MelodicPattern", "IntervalPattern", "RhythmicPattern",
    "Chord", "ChordProgression", "Structure", "Emotion",
};

// feature-bearing classes, direct children of MusicologicalFeature
const char* const kFeatureClasses[] = {
    "SymbolicRepresentation", "Part", "Voice", "Section", "SymbolicEvent", "Accidental", "Dynamic",
    "MelodicPattern", "IntervalPattern", "RhythmicPattern", "Chord", "ChordProgression", "Structure", "Emotion",
};

const char* const kEventClasses[] = {"NoteC", "NoteD", "NoteE", "NoteF", "NoteG", "NoteA", "NoteB", "Rest"};

const char* const kHamseProperties[] = {
    "hasMidiProgram", "hasMetre", "hasClef", "hasLiteralDynamic", "hasMidiVelocity", "hasMidiPitch",
    "hasOctave", "hasStaff",
    // artifact extensions
    "hasSymbolicRepresentation", "hasTimeLine", "hasPart", "hasSection", "hasStartBar", "hasVoice",
    "hasVoiceNumber", "hasSymbolicEvent", "hasAccidental", "hasDynamic", "hasPosition", "startBeat",
    "durationBeats", "atBar", "atBeat", "startSecond", "endSecond", "extractedFrom", "patternKey",
    "patternLength", "occurrenceCount", "includesRests", "hasOccurrence", "correspondsTo", "mappedBy",
    "hasTimeLineMap", "alignmentCost", "chordLabel", "structureLabel", "segmentIndex", "quadrant", "valence",
    "arousal", "method",
};

const char* const kAccidentals[] = {"Sharp", "Flat", "DoubleSharp", "DoubleFlat"};

const char* const kMoClasses[] = {
    "MusicalWork", "Composition", "Score", "PublishedScore", "Arrangement", "Genre", "Key", "Performance",
    "Instrument", "Sound", "Recording", "Signal", "DigitalSignal", "AnalogSignal", "Movement",
};

const char* const kMoProperties[] = {
    "composer", "produced_work", "produced_score", "movement", "movement_number", "genre", "key",
    "arranged_in", "performance_of", "instrument", "performer", "produced_sound", "records",
    "produced_signal", "sampled_version_of", "time",
};

const char* const kTlClasses[] = {"Interval", "AbstractInterval", "TimeLine", "AbstractTimeLine",
                                  "DiscreteTimeLine", "TimeLineMap"};
const char* const kTlProperties[] = {"onTimeLine", "domainTimeLine", "rangeTimeLine"};

std::vector<VocabEntry> build_table() {
  std::vector<VocabEntry> t;
  auto add = [&](const std::string& ns, const auto& names, TermRole role) {
    for (const char* n : names) t.push_back({ns + n, role});
  };
  add(kHamse, kHamseClasses, TermRole::Class);
  add(kHamse, kHamseProperties, TermRole::Property);
  add(kHamse, kAccidentals, TermRole::Individual);
  add(kMo, kMoClasses, TermRole::Class);
  add(kMo, kMoProperties, TermRole::Property);
  add(kTl, kTlClasses, TermRole::Class);
  add(kTl, kTlProperties, TermRole::Property);
  t.push_back({kFrbr + "Work", TermRole::Class});
  t.push_back({kFrbr + "Agent", TermRole::Class});
  t.push_back({kFoaf + "name", TermRole::Property});
  t.push_back({kDc + "title", TermRole::Property});
  t.push_back({rdf::kRdf + "type", TermRole::Property});
  t.push_back({rdf::kRdfs + "subClassOf", TermRole::Property});
  t.push_back({rdf::kRdfs + "label", TermRole::Property});
  return t;
}

const std::unordered_map<std::string, TermRole>& index() {
  static const auto idx = [] {
    std::unordered_map<std::string, TermRole> m;
    for (const auto& e : table()) m.emplace(e.iri, e.role);
    return m;
  }();
  return idx;
}

bool in_vocab_namespace(const std::string& iri) {
  for (const std::string* ns : {&kHamse, &kMo, &kFrbr, &kTl, &kFoaf, &kDc, &rdf::kRdf, &rdf::kRdfs})
    if (iri.rfind(*ns, 0) == 0) return true;
  return false;
}

}  // namespace

const std::vector<VocabEntry>& table() {
  static const auto t = build_table();
  return t;
}

bool is_class(const std::string& iri) {
  auto it = index().find(iri);
  return it != index().end() && it->second == TermRole::Class;
}

bool is_property(const std::string& iri) {
  auto it = index().find(iri);
  return it != index().end() && it->second == TermRole::Property;
}

bool is_known(const std::string& iri) { return index().count(iri) > 0; }

std::vector<std::string> closed_vocabulary_violations(const rdf::TripleGraph& g) {
  std::vector<std::string> out;
  const Term rdf_type = type();
  const Term subclass = sub_class();
  for (const auto& t : g.triples()) {
    if (!is_property(t.predicate.value)) {
      out.push_back("unknown predicate <" + t.predicate.value + ">");
      continue;
    }
    if (t.predicate == rdf_type && !(t.object.is_iri() && is_class(t.object.value))) {
      out.push_back("unknown class <" + t.object.value + ">");
      continue;
    }
    if (t.predicate == subclass && !(is_class(t.subject.value) && is_class(t.object.value))) {
      out.push_back("subclass axiom outside the class table: <" + t.subject.value + ">");
      continue;
    }
    for (const Term* term : {&t.subject, &t.object})
      if (term->is_iri() && in_vocab_namespace(term->value) && !is_known(term->value))
        out.push_back("unknown vocabulary term <" + term->value + ">");
  }
  return out;
}

rdf::TripleGraph schema_preamble() {
  rdf::TripleGraph g;
  const Term feature = hamse("MusicologicalFeature");
  for (const char* c : kFeatureClasses) g.add(hamse(c), sub_class(), feature);
  for (const char* c : kEventClasses) g.add(hamse(c), sub_class(), hamse("SymbolicEvent"));
  g.add(mo("MusicalWork"), sub_class(), frbr("Work"));
  g.add(mo("PublishedScore"), sub_class(), mo("Score"));
  g.add(mo("DigitalSignal"), sub_class(), mo("Signal"));
  g.add(mo("AnalogSignal"), sub_class(), mo("Signal"));
  g.add(tl("AbstractInterval"), sub_class(), tl("Interval"));
  g.add(tl("AbstractTimeLine"), sub_class(), tl("TimeLine"));
  g.add(tl("DiscreteTimeLine"), sub_class(), tl("TimeLine"));
  for (const char* a : kAccidentals) g.add(hamse(a), type(), hamse("Accidental"));
  return g;
}

}  // namespace hamse::vocab
