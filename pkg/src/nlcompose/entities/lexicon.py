"""Noun lexicon and noun extraction from argument descriptions.

Stands in for a part-of-speech tagger: a word is a noun when its lemma is in
the shipped lexicon or it carries a strongly nominal suffix. Deterministic by
construction.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z']*")
_NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ance", "ence", "ship", "hood")


def _read_data_lines(filename: str) -> list[str]:
    text = resources.files("nlcompose.entities").joinpath("data", filename).read_text("utf-8")
    return [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]


@lru_cache(maxsize=1)
def default_noun_lexicon() -> frozenset[str]:
    return frozenset(word.lower() for word in _read_data_lines("nouns.txt"))


def lemmatize_noun(token: str, lexicon: frozenset[str]) -> str | None:
    """Lexicon lemma for a (possibly plural) token, or None when not a noun."""
    word = token.lower()
    if word in lexicon:
        return word
    if word.endswith("ies") and word[:-3] + "y" in lexicon:
        return word[:-3] + "y"
    if word.endswith("es") and word[:-2] in lexicon:
        return word[:-2]
    if word.endswith("s") and not word.endswith("ss") and word[:-1] in lexicon:
        return word[:-1]
    return None


def extract_nouns(description: str, lexicon: frozenset[str] | None = None) -> list[str]:
    """Ordered, deduplicated noun lemmas appearing in a description."""
    lexicon = lexicon if lexicon is not None else default_noun_lexicon()
    nouns: list[str] = []
    for match in _WORD_RE.finditer(description):
        token = match.group(0)
        lemma = lemmatize_noun(token, lexicon)
        if lemma is None and token.lower().endswith(_NOUN_SUFFIXES):
            lemma = token.lower()
        if lemma is not None and lemma not in nouns:
            nouns.append(lemma)
    return nouns
