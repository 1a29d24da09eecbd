"""Typed adjective/noun lexicon: loading, validation, queries.

The lexicon file format is UTF-8 text, one record per line,
``surface<TAB>category``. Adjective categories are ``S-I``, ``S-NI``,
``NS-PL``, ``NS-PR``, ``AMB``; nouns use ``NOUN``. Lines starting with
``#`` are comments. A default lexicon ships with the package.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path


class LexiconFormatError(ValueError):
    """A line of the lexicon file does not match the record format."""


class LexiconValidationError(ValueError):
    """A structurally valid lexicon violates a content invariant."""


class AdjectiveType(enum.Enum):
    """The five adjective categories, by effect on the modified denotation."""

    SUBSECTIVE_INTERSECTIVE = "S-I"
    SUBSECTIVE_NON_INTERSECTIVE = "S-NI"
    NON_SUBSECTIVE_PLAIN = "NS-Pl"
    NON_SUBSECTIVE_PRIVATIVE = "NS-Pr"
    AMBIGUOUS = "A"

    @property
    def shorthand(self) -> str:
        return self.value


# Category tokens as they appear in lexicon files.
_FILE_TOKEN = {
    "S-I": AdjectiveType.SUBSECTIVE_INTERSECTIVE,
    "S-NI": AdjectiveType.SUBSECTIVE_NON_INTERSECTIVE,
    "NS-PL": AdjectiveType.NON_SUBSECTIVE_PLAIN,
    "NS-PR": AdjectiveType.NON_SUBSECTIVE_PRIVATIVE,
    "AMB": AdjectiveType.AMBIGUOUS,
}
_TOKEN_FOR_TYPE = {t: tok for tok, t in _FILE_TOKEN.items()}
_NOUN_TOKEN = "NOUN"


@dataclass(frozen=True)
class AdjectiveEntry:
    surface: str
    type: AdjectiveType


@dataclass(frozen=True)
class Lexicon:
    """Immutable, validated word lists. Safe to share across threads."""

    adjectives: tuple[AdjectiveEntry, ...]
    nouns: tuple[str, ...]

    def adjective_surfaces(self) -> tuple[str, ...]:
        return tuple(a.surface for a in self.adjectives)

    def type_of(self, surface: str) -> AdjectiveType:
        for a in self.adjectives:
            if a.surface == surface:
                return a.type
        raise KeyError(surface)


def _check_token(surface: str, where: str) -> None:
    if not surface:
        raise LexiconValidationError(f"empty surface in {where}")
    if any(ch.isspace() for ch in surface):
        raise LexiconValidationError(
            f"surface {surface!r} in {where} contains whitespace; "
            "entries must be single tokens"
        )


def validate_lexicon(adjectives: list[AdjectiveEntry], nouns: list[str]) -> Lexicon:
    """Apply the content invariants and return the immutable Lexicon."""
    seen_adj: set[str] = set()
    for a in adjectives:
        _check_token(a.surface, "adjective list")
        if a.surface in seen_adj:
            raise LexiconValidationError(f"duplicate adjective {a.surface!r}")
        seen_adj.add(a.surface)
    seen_noun: set[str] = set()
    for n in nouns:
        _check_token(n, "noun list")
        if n in seen_noun:
            raise LexiconValidationError(f"duplicate noun {n!r}")
        seen_noun.add(n)
    overlap = seen_adj & seen_noun
    if overlap:
        word = sorted(overlap)[0]
        raise LexiconValidationError(
            f"{word!r} appears in both the adjective and noun lists"
        )
    return Lexicon(adjectives=tuple(adjectives), nouns=tuple(nouns))


def parse_lexicon(text: str) -> Lexicon:
    """Parse lexicon file content. Raises LexiconFormatError with the line
    number on malformed records and LexiconValidationError on bad content."""
    adjectives: list[AdjectiveEntry] = []
    nouns: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconFormatError(
                f"line {lineno}: expected 'surface<TAB>category', got {raw!r}"
            )
        surface, token = parts[0].strip(), parts[1].strip()
        if token == _NOUN_TOKEN:
            nouns.append(surface)
        elif token in _FILE_TOKEN:
            adjectives.append(AdjectiveEntry(surface, _FILE_TOKEN[token]))
        else:
            raise LexiconFormatError(
                f"line {lineno}: unknown category {token!r} for {surface!r}"
            )
    # Files must carry a usable alphabet; the Lexicon type itself may be empty.
    if not adjectives:
        raise LexiconValidationError("empty adjective section (empty alphabet)")
    if not nouns:
        raise LexiconValidationError("empty noun section (empty alphabet)")
    return validate_lexicon(adjectives, nouns)


def load_lexicon(path: str | Path) -> Lexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def serialize_lexicon(lex: Lexicon) -> str:
    """Render a Lexicon back to file format; parse_lexicon round-trips it."""
    lines = [f"{a.surface}\t{_TOKEN_FOR_TYPE[a.type]}" for a in lex.adjectives]
    lines += [f"{n}\t{_NOUN_TOKEN}" for n in lex.nouns]
    return "\n".join(lines) + "\n"


def save_lexicon(lex: Lexicon, path: str | Path) -> None:
    Path(path).write_text(serialize_lexicon(lex), encoding="utf-8")


_DEFAULT: Lexicon | None = None


def default_lexicon() -> Lexicon:
    """The bundled 61-adjective / 12-noun lexicon (cached)."""
    global _DEFAULT
    if _DEFAULT is None:
        data = files("adjcomp").joinpath("data/lexicon.tsv").read_text("utf-8")
        _DEFAULT = parse_lexicon(data)
    return _DEFAULT


def default_lexicon_path() -> Path:
    return Path(str(files("adjcomp").joinpath("data/lexicon.tsv")))


def count_by_type(lex: Lexicon) -> dict[AdjectiveType, int]:
    """Adjective counts per category; always contains all five keys."""
    counts = {t: 0 for t in AdjectiveType}
    for a in lex.adjectives:
        counts[a.type] += 1
    return counts


def adjectives_of_type(lex: Lexicon, t: AdjectiveType) -> list[str]:
    """Surfaces of the given category, in source order."""
    return [a.surface for a in lex.adjectives if a.type == t]
