#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hamse/alignment.h"
#include "hamse/competency.h"
#include "hamse/emotion.h"
#include "hamse/error.h"
#include "hamse/harmony.h"
#include "hamse/hts.h"
#include "hamse/midi.h"
#include "hamse/patterns.h"
#include "hamse/pipeline.h"
#include "hamse/segmentation.h"
#include "hamse/turtle.h"

namespace py = pybind11;
using namespace hamse;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PatternFamily family_of(const std::string& name) {
  auto f = parse_pattern_family(name);
  if (!f) throw InputError("unknown pattern kind '" + name + "'");
  return *f;
}

Mode mode_of(const std::string& name) {
  if (name == "major") return Mode::Major;
  if (name == "minor") return Mode::Minor;
  throw InputError("mode must be 'major' or 'minor'");
}

py::dict position(const Position& p) {
  py::dict d;
  d["bar"] = p.bar;
  d["beat"] = to_string(p.beat);
  d["abs_beats"] = to_string(p.abs_beats);
  return d;
}

Array chroma_array(const Chromagram& c) {
  Array out({static_cast<py::ssize_t>(c.size()), py::ssize_t{12}});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t f = 0; f < c.size(); ++f)
    for (int k = 0; k < 12; ++k) v(f, k) = c.frames[f][static_cast<std::size_t>(k)];
  return out;
}

Chromagram chroma_from_array(const Array& a, double hop_s) {
  if (a.ndim() != 2 || a.shape(1) != 12) throw InputError("chroma must have shape (frames, 12)");
  Chromagram c;
  c.hop_s = hop_s;
  auto v = a.unchecked<2>();
  c.frames.resize(static_cast<std::size_t>(a.shape(0)));
  for (py::ssize_t f = 0; f < a.shape(0); ++f)
    for (int k = 0; k < 12; ++k) c.frames[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)] = v(f, k);
  return c;
}

std::vector<std::uint8_t> to_bytes(const py::bytes& b) {
  std::string s = b;
  return {s.begin(), s.end()};
}

rdf::TripleGraph graph_of(const std::string& turtle) { return rdf::parse_turtle(turtle); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "hamse native core";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto input = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", input.ptr());
  py::register_exception<BinaryParseError>(m, "BinaryParseError", input.ptr());
  py::register_exception<UnsupportedFormat>(m, "UnsupportedFormat", input.ptr());
  py::register_exception<DomainError>(m, "DomainError", input.ptr());
  py::register_exception<RangeError>(m, "RangeError", input.ptr());
  (void)error;

  py::class_<Score>(m, "Score")
      .def_property_readonly("title", [](const Score& s) { return s.title; })
      .def_readonly("work_ref", &Score::work_ref)
      .def_readonly("ticks_per_quarter", &Score::ticks_per_quarter)
      .def_property_readonly("event_count", &Score::event_count)
      .def_property_readonly("note_count", &Score::note_count)
      .def_property_readonly("end_beats", [](const Score& s) { return to_string(s.end_beats()); })
      .def_property_readonly("tempo_bpm", &Score::initial_tempo_bpm)
      .def_property_readonly("parts",
                             [](const Score& s) {
                               std::vector<std::string> names;
                               for (const auto& p : s.parts) names.push_back(p.name);
                               return names;
                             })
      .def("to_hts", [](const Score& s) { return write_hts(s); })
      .def("to_smf", [](const Score& s) {
        auto b = write_smf(s);
        return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
      })
      .def("__eq__", [](const Score& a, const Score& b) { return a == b; });

  m.def("parse_hts", [](const std::string& text) { return parse_hts(text); }, py::arg("text"));
  m.def("parse_smf", [](const py::bytes& b) { return parse_smf(to_bytes(b)); }, py::arg("data"));
  m.def("load_score", [](const std::string& path) { return load_score(path); }, py::arg("path"));

  m.def(
      "mine_patterns",
      [](const Score& s, const std::string& kind, bool include_rests, int n_min, int n_max, int min_count) {
        py::list out;
        for (const auto& p : mine_patterns(s, {family_of(kind), include_rests}, {n_min, n_max, min_count})) {
          py::list occ;
          for (const auto& o : p.occurrences) {
            py::dict d;
            d["part"] = o.part;
            d["voice"] = o.voice;
            d["start"] = position(o.start);
            d["end"] = position(o.end);
            occ.append(d);
          }
          py::dict d;
          d["key"] = p.key;
          d["count"] = p.count;
          d["length"] = p.length;
          d["occurrences"] = occ;
          out.append(d);
        }
        return out;
      },
      py::arg("score"), py::arg("kind") = "interval", py::arg("include_rests") = false, py::arg("n_min") = 2,
      py::arg("n_max") = 8, py::arg("min_count") = 2);

  m.def("chordify", [](const Score& s) {
    py::list out;
    for (const auto& c : chordify(s)) {
      py::dict d;
      d["onset"] = position(c.onset);
      d["duration"] = to_string(c.duration);
      d["pitches"] = c.pitches;
      d["label"] = c.label;
      out.append(d);
    }
    return out;
  });
  m.def("label_chord", &label_chord, py::arg("pitch_classes"), py::arg("bass_pc") = py::none());
  m.def("estimate_key", [](const Score& s) {
    auto k = estimate_key(s);
    py::dict d;
    d["tonic"] = pitch_class_name(k.tonic_pc);
    d["tonic_pc"] = k.tonic_pc;
    d["mode"] = to_string(k.mode);
    d["correlation"] = k.correlation;
    d["label"] = k.label();
    return d;
  });

  py::class_<AudioClip>(m, "AudioClip")
      .def(py::init([](const Array& samples, int sample_rate) {
             if (samples.ndim() != 1) throw InputError("samples must be one-dimensional");
             AudioClip c;
             c.sample_rate = sample_rate;
             c.samples.assign(samples.data(), samples.data() + samples.size());
             return c;
           }),
           py::arg("samples"), py::arg("sample_rate"))
      .def_readonly("sample_rate", &AudioClip::sample_rate)
      .def_property_readonly("duration_s", &AudioClip::duration_s)
      .def_property_readonly("samples", [](const AudioClip& c) { return Array(c.samples.size(), c.samples.data()); })
      .def("to_wav", [](const AudioClip& c) {
        auto b = write_wav_pcm16(c);
        return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
      });
  m.def("read_wav", [](const py::bytes& b) { return read_wav(to_bytes(b)); }, py::arg("data"));
  m.def("load_wav", [](const std::string& path) { return load_wav(path); }, py::arg("path"));

  py::class_<Chromagram>(m, "Chromagram")
      .def(py::init(&chroma_from_array), py::arg("frames"), py::arg("hop_s"))
      .def_readonly("hop_s", &Chromagram::hop_s)
      .def_property_readonly("frames", &chroma_array)
      .def("__len__", &Chromagram::size);
  m.def(
      "chroma_from_audio",
      [](const AudioClip& clip, int frame_len, int hop) {
        AudioChromaOptions o;
        o.frame_len = frame_len;
        o.hop = hop;
        return chroma_from_audio(clip, o);
      },
      py::arg("clip"), py::arg("frame_len") = 2048, py::arg("hop") = 512);
  m.def("chroma_from_score", &chroma_from_score, py::arg("score"), py::arg("tempo_bpm"), py::arg("hop_s"));

  m.def(
      "dtw",
      [](const Array& cost) {
        if (cost.ndim() != 2) throw InputError("cost must be two-dimensional");
        CostMatrix c(static_cast<std::size_t>(cost.shape(0)), static_cast<std::size_t>(cost.shape(1)));
        c.data.assign(cost.data(), cost.data() + cost.size());
        auto p = dtw(c);
        return py::make_tuple(p.total_cost, p.points);
      },
      py::arg("cost"));

  py::class_<AlignmentMap>(m, "AlignmentMap")
      .def_readonly("total_cost", &AlignmentMap::total_cost)
      .def_readonly("tempo_bpm", &AlignmentMap::tempo_bpm)
      .def_readonly("path", &AlignmentMap::path)
      .def_property_readonly("anchors",
                             [](const AlignmentMap& a) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& x : a.anchors) out.emplace_back(x.abs_beats, x.time_s);
                               return out;
                             })
      .def("beats_to_seconds", [](const AlignmentMap& a, double beats) { return beats_to_seconds(a, beats); })
      .def("bar_to_seconds", [](const AlignmentMap& a, const Score& s, int bar) {
        auto t = map_beats_to_seconds(a, s, {bar, Rational(0), bar + 1, Rational(0)});
        return py::make_tuple(t.start_s, t.end_s);
      });
  m.def(
      "align",
      [](const Chromagram& audio, const Chromagram& symbolic, double tempo_bpm, const std::string& recording) {
        return align(audio, symbolic, tempo_bpm, recording);
      },
      py::arg("audio"), py::arg("symbolic"), py::arg("tempo_bpm"), py::arg("recording") = "");

  m.def(
      "segment_structure",
      [](const Chromagram& c, double duration_s, int kernel_half, double threshold_sigmas, int min_distance,
         double merge_distance) {
        SegmenterOptions o{kernel_half, threshold_sigmas, min_distance, merge_distance};
        std::vector<std::tuple<double, double, std::string>> out;
        for (const auto& s : segment_structure(c, duration_s, o)) out.emplace_back(s.start_s, s.end_s, s.label);
        return out;
      },
      py::arg("chroma"), py::arg("duration_s"), py::arg("kernel_half") = 8, py::arg("threshold_sigmas") = 0.5,
      py::arg("min_distance") = 8, py::arg("merge_distance") = 0.15);

  m.def(
      "classify_emotion",
      [](double mean_rms, const std::string& mode, double tempo_bpm, double dissonance_rate) {
        auto t = classify_emotion(EmotionFeatures{mean_rms, mode_of(mode), tempo_bpm, dissonance_rate});
        py::dict d;
        d["quadrant"] = to_string(t.quadrant);
        d["valence"] = t.valence;
        d["arousal"] = t.arousal;
        return d;
      },
      py::arg("mean_rms"), py::arg("mode"), py::arg("tempo_bpm"), py::arg("dissonance_rate") = 0.0);
  m.def("mean_windowed_rms", &mean_windowed_rms, py::arg("clip"));

  m.def(
      "run_pipeline_json",
      [](const std::string& config) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(config);
        } catch (const nlohmann::json::exception& e) {
          throw InputError(std::string("config: ") + e.what());
        }
        auto out = run_pipeline(config_from_json(j));
        py::dict d;
        d["report"] = out.report;
        d["triples"] = out.graph.size();
        d["work_iri"] = out.metadata.work_iri();
        d["turtle"] = rdf::serialize_turtle(out.graph);
        return d;
      },
      py::arg("config"));

  m.def(
      "answer_cq",
      [](const std::string& turtle, int cq, const CqArgs& args) {
        if (cq < 1 || cq > kCompetencyQuestionCount) throw InputError("competency questions are numbered 1 to 12");
        auto r = answer_cq(graph_of(turtle), static_cast<CompetencyQuestion>(cq), args);
        return py::make_tuple(r.columns, r.rows);
      },
      py::arg("turtle"), py::arg("cq"), py::arg("args"));
  m.def(
      "answer_report", [](const std::string& turtle, const CqArgs& args) { return answer_report(graph_of(turtle), args); },
      py::arg("turtle"), py::arg("args"));
}
