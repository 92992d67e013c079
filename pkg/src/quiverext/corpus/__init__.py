"""Regression problem files shipped with the package (regenerate with scripts/make_corpus.py)."""

from importlib import resources


def paths():
    """Sorted paths of the bundled problem files."""
    root = resources.files(__name__)
    return sorted(p for p in root.iterdir() if p.name.endswith(".json"))
