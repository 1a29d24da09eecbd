"""Phrase corpus expansion over the lexicon.

Phrases are drawn from the language ``(adj )+noun``: one to
``max_adjectives`` pairwise-distinct adjectives, in order, followed by a
single noun, joined with single spaces. Generation is pure and ordered:
adjective source order, nested left to right, noun order innermost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .lexicon import AdjectiveEntry, AdjectiveType, Lexicon


@dataclass(frozen=True)
class Phrase:
    adjectives: tuple[AdjectiveEntry, ...]
    noun: str

    @property
    def text(self) -> str:
        return " ".join([a.surface for a in self.adjectives] + [self.noun])

    @property
    def adjective_types(self) -> tuple[AdjectiveType, ...]:
        return tuple(a.type for a in self.adjectives)

    @property
    def term_surfaces(self) -> tuple[str, ...]:
        """All term texts: each adjective, then the noun."""
        return tuple(a.surface for a in self.adjectives) + (self.noun,)


@dataclass(frozen=True)
class PairQuadruple:
    """Two AN phrase pairs sharing nouns: (a1 n1, a1 n2) vs (a2 n1, a2 n2)."""

    a1: AdjectiveEntry
    a2: AdjectiveEntry
    n1: str
    n2: str

    def __post_init__(self) -> None:
        if self.a1.surface == self.a2.surface:
            raise ValueError("quadruple requires distinct adjectives")
        if self.n1 == self.n2:
            raise ValueError("quadruple requires distinct nouns")

    @property
    def phrase_texts(self) -> tuple[str, str, str, str]:
        """(a1 n1, a1 n2, a2 n1, a2 n2)."""
        return (
            f"{self.a1.surface} {self.n1}",
            f"{self.a1.surface} {self.n2}",
            f"{self.a2.surface} {self.n1}",
            f"{self.a2.surface} {self.n2}",
        )

    @property
    def key(self) -> str:
        return f"{self.a1.surface}|{self.a2.surface}|{self.n1}|{self.n2}"


def generate_phrases(lex: Lexicon, max_adjectives: int = 2) -> list[Phrase]:
    """All phrases with 1..max_adjectives ordered distinct adjectives and one
    noun. Empty adjective or noun list yields an empty corpus."""
    if max_adjectives < 1:
        raise ValueError("max_adjectives must be >= 1")
    phrases: list[Phrase] = []
    for k in range(1, max_adjectives + 1):
        for combo in itertools.permutations(lex.adjectives, k):
            for noun in lex.nouns:
                phrases.append(Phrase(adjectives=combo, noun=noun))
    return phrases


def generate_pair_quadruples(lex: Lexicon) -> Iterator[PairQuadruple]:
    """Every ordered adjective pair crossed with every unordered noun pair.

    Count is A*(A-1) * N*(N-1)/2; fewer than two adjectives or nouns gives
    an empty stream. Noun pairs are unordered because both sides of the
    pair relation are symmetric in the nouns; adjective order matters."""
    for a1 in lex.adjectives:
        for a2 in lex.adjectives:
            if a1.surface == a2.surface:
                continue
            for i, n1 in enumerate(lex.nouns):
                for n2 in lex.nouns[i + 1 :]:
                    yield PairQuadruple(a1=a1, a2=a2, n1=n1, n2=n2)


def phrase_texts_needed(
    phrases: Iterable[Phrase], quadruples: Iterable[PairQuadruple] = ()
) -> list[str]:
    """De-duplicated list of every text an embedding provider must cover:
    each phrase text, each constituent term, and all quadruple phrases.
    First-occurrence order; deterministic for deterministic inputs."""
    seen: dict[str, None] = {}
    for p in phrases:
        seen.setdefault(p.text)
        for term in p.term_surfaces:
            seen.setdefault(term)
    for q in quadruples:
        for text in q.phrase_texts:
            seen.setdefault(text)
        seen.setdefault(q.a1.surface)
        seen.setdefault(q.a2.surface)
        seen.setdefault(q.n1)
        seen.setdefault(q.n2)
    return list(seen)


def parse_phrase_text(text: str, lex: Lexicon) -> Phrase:
    """Split a generated text back into its terms (inverse of Phrase.text)."""
    words = text.split(" ")
    if len(words) < 2:
        raise ValueError(f"not a phrase: {text!r}")
    *adj_words, noun = words
    if noun not in lex.nouns:
        raise ValueError(f"unknown noun {noun!r} in {text!r}")
    by_surface = {a.surface: a for a in lex.adjectives}
    try:
        adjectives = tuple(by_surface[w] for w in adj_words)
    except KeyError as exc:
        raise ValueError(f"unknown adjective {exc.args[0]!r} in {text!r}") from None
    return Phrase(adjectives=adjectives, noun=noun)


def write_corpus(phrases: Iterable[Phrase], path) -> int:
    """Export one phrase text per line, in generation order. Returns count."""
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for p in phrases:
            fh.write(p.text + "\n")
            n += 1
    return n
