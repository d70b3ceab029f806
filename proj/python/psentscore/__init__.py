"""Affective-content preservation scoring for dialogue summaries."""

import json

from ._psentscore import (
    DistributionSummary,
    Lexicon,
    Pair,
    PsentError,
    PSent,
    TagSet,
    __version__,
    average_ranks,
    ccc,
    compute_psent,
    distribution_summary,
    load_pairs,
    load_tags,
    mae,
    pearson,
    serialize_pairs,
    spearman,
    tag_corpus,
    token_spans,
    tokenize,
)
from . import _psentscore as _core

CHANNELS = ("all", "positive", "negative")


def score(pairs, tags, channels=CHANNELS, summary_policy="each", tagger="external"):
    """Score report as a dict; failed channels carry an "error" entry."""
    return json.loads(_core._score_report_json(pairs, tags, list(channels), summary_policy, tagger))


def filter_pairs(pairs, tags, mode):
    """Returns (kept pairs, filter report dict). mode: train-like | test-like."""
    kept, report = _core._filter(pairs, tags, mode)
    return kept, json.loads(report)


def distributions(pairs, tags, channel="all", drop_zero=False, summary_policy="each"):
    return json.loads(_core._distribution_json(pairs, tags, channel, drop_zero, summary_policy))


def evaluate_tagger(gold, predictions):
    """Metrics (percent) for aligned label sequences, e.g. [["o", "p"], ["n"]]."""
    return json.loads(_core._evaluate_labels_json(gold, predictions))


def evaluate_tagger_files(gold_path, lexicon=None, predictions_path=None):
    return json.loads(_core._evaluate_files_json(gold_path, lexicon, predictions_path))


__all__ = [
    "CHANNELS",
    "DistributionSummary",
    "Lexicon",
    "Pair",
    "PsentError",
    "PSent",
    "TagSet",
    "__version__",
    "average_ranks",
    "ccc",
    "compute_psent",
    "distribution_summary",
    "distributions",
    "evaluate_tagger",
    "evaluate_tagger_files",
    "filter_pairs",
    "load_pairs",
    "load_tags",
    "mae",
    "pearson",
    "score",
    "serialize_pairs",
    "spearman",
    "tag_corpus",
    "token_spans",
    "tokenize",
]
