"""Symbolic and audio music analysis into an RDF knowledge graph."""

import json as _json

from ._core import (
    AlignmentMap,
    AudioClip,
    BinaryParseError,
    Chromagram,
    DomainError,
    Error,
    InputError,
    ParseError,
    RangeError,
    Score,
    UnsupportedFormat,
    align,
    answer_cq,
    answer_report,
    chordify,
    chroma_from_audio,
    chroma_from_score,
    classify_emotion,
    dtw,
    estimate_key,
    label_chord,
    load_score,
    load_wav,
    mean_windowed_rms,
    mine_patterns,
    parse_hts,
    parse_smf,
    read_wav,
    run_pipeline_json,
    segment_structure,
)


def run_pipeline(config):
    """Runs every stage. `config` takes the same keys as a JSON config file."""
    return run_pipeline_json(_json.dumps(config))

__all__ = [name for name in dir() if not name.startswith("_")]
