"""Rewrite the corpus goldens from the current code. Review the diff before committing."""
from pathlib import Path

from torcells.bundle import load_corpus
from torcells.cli import entry_output

GOLDENS = Path(__file__).resolve().parent.parent / "src" / "torcells" / "corpus" / "goldens"


def main():
    GOLDENS.mkdir(parents=True, exist_ok=True)
    for entry in load_corpus():
        for k in range(len(entry.runs)):
            (GOLDENS / entry.golden_name(k)).write_text(entry_output(entry, k))
            print("wrote", entry.golden_name(k))


if __name__ == "__main__":
    main()
