"""Bundled example inputs and their golden CLI outputs."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import PropertyViolation

CORPUS_VERSION = 1


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str  # "cone" | "fan" | "monoid"
    file: str
    data: dict
    runs: tuple[tuple[str, ...], ...]  # extra CLI arguments per golden run
    lam: tuple[int, ...] | None = None

    def golden_name(self, k: int) -> str:
        return f"{self.name}__{k}.json"


def _root():
    return resources.files("torcells") / "corpus"


def corpus_path(name: str):
    return _root() / name


def load_corpus() -> list[CorpusEntry]:
    """Read the corpus index. A missing or malformed bundle raises
    :class:`PropertyViolation` since it can only come from a broken install."""
    try:
        index = json.loads((_root() / "index.json").read_text())
        if index.get("version") != CORPUS_VERSION:
            raise ValueError(f"corpus version {index.get('version')} != {CORPUS_VERSION}")
        out = []
        for e in index["entries"]:
            data = json.loads((_root() / e["file"]).read_text())
            lam = e.get("lambda")
            out.append(CorpusEntry(e["name"], e["kind"], e["file"], data,
                                   tuple(tuple(r) for r in e["runs"]),
                                   None if lam is None else tuple(lam)))
        return out
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise PropertyViolation(f"corrupted corpus bundle: {exc}") from None


def read_golden(entry: CorpusEntry, k: int) -> str | None:
    p = _root() / "goldens" / entry.golden_name(k)
    try:
        return p.read_text()
    except OSError:
        return None
