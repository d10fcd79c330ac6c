"""Python surface over the native patch-migration core.

Operations that the core reports as JSON strings are parsed here, so callers
get plain dicts and lists.
"""

import json

try:
    from . import _miggpt as _core
except ImportError:  # local CMake build: the module sits on sys.path directly
    import _miggpt as _core

__all__ = [
    "fingerprint",
    "fingerprint_diagnostics",
    "signatures",
    "funccalls",
    "line_diff",
    "classify",
    "migration_points",
    "best_match",
    "semantic_score",
    "line_edit_distance",
    "retrieval_prompt",
    "retrieve",
    "migration_prompt",
    "migrate",
    "run_oracle",
    "extract_code_block",
    "fence_code",
]


def fingerprint(text):
    """Structural fingerprint of a C snippet as a list of node dicts."""
    return json.loads(_core.fingerprint_json(text))


def migration_points(s_old, s_old_patched):
    """Edit locations between a snippet and its patched form, with anchors."""
    return json.loads(_core.migration_points_json(s_old, s_old_patched))


def retrieve(s_old, file_new, responses, m=3):
    """Run the retrieval loop against scripted responses; returns a dict."""
    return json.loads(_core.retrieve(s_old, file_new, list(responses), m))


def migrate(s_old, s_old_patched, s_new, response):
    """Apply the migration step with one scripted response; returns a dict."""
    return json.loads(_core.migrate(s_old, s_old_patched, s_new, response))


def run_oracle(corpus_path, output_dir="", one_step=False, parallelism=1):
    """Replay a corpus with its ground-truth oracle backend; returns the report."""
    return json.loads(_core.run_oracle(corpus_path, output_dir, one_step, parallelism))


fingerprint_diagnostics = _core.fingerprint_diagnostics
signatures = _core.signatures
funccalls = _core.funccalls
line_diff = _core.line_diff
classify = _core.classify
best_match = _core.best_match
semantic_score = _core.semantic_score
line_edit_distance = _core.line_edit_distance
retrieval_prompt = _core.retrieval_prompt
migration_prompt = _core.migration_prompt
extract_code_block = _core.extract_code_block
fence_code = _core.fence_code
