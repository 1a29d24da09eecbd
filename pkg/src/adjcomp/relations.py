"""Metamorphic relation evaluation and consistency aggregation.

Three relations over embedded phrases:

* intersectivity: every phrase-to-term distance is bounded by every
  pairwise term distance (non-strict),
* pair intersectivity: the noun-swap distance under the first adjective
  is strictly smaller than under the second,
* non-subsectivity: the phrase sits at least as close to its adjective
  as to its noun (non-strict).

A RelationOutcome records satisfaction plus the margin at the binding
comparison (right-hand side minus left-hand side). Margins whose
magnitude falls below TIE_EPS are snapped to exactly 0.0: they are
floating-point renderings of algebraically exact ties, and the tie rule
(non-strict relations satisfied, strict relation violated) must apply
to them deterministically.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .geometry import cosine_distance, unit_rows
from .lexicon import AdjectiveType
from .phrasegen import PairQuadruple, Phrase
from .providers import MissingVectorError

TIE_EPS = 1e-12


class RelationKind(enum.Enum):
    INTERSECTIVITY = "intersectivity"
    PAIR_INTERSECTIVITY = "pair-intersectivity"
    NON_SUBSECTIVITY = "non-subsectivity"


@dataclass(frozen=True)
class RelationOutcome:
    relation: RelationKind
    key: str
    type_tags: tuple[AdjectiveType, ...]
    satisfied: bool
    margin: float


@dataclass(frozen=True)
class ConsistencyCell:
    group: AdjectiveType | tuple[AdjectiveType, AdjectiveType]
    satisfied_count: int
    total_count: int

    @property
    def rate(self) -> float:
        return self.satisfied_count / self.total_count


def snap_tie(margin: float) -> float:
    return 0.0 if abs(margin) < TIE_EPS else margin


def _lookup(emb: Mapping[str, np.ndarray], text: str) -> np.ndarray:
    try:
        return emb[text]
    except KeyError:
        raise MissingVectorError(text) from None


def eval_intersectivity(p: Phrase, emb: Mapping[str, np.ndarray]) -> RelationOutcome:
    """Satisfied iff max over terms t of d(phrase, t) is at most the min
    over term pairs of d(t_j, t_k). For an AN phrase this is exactly
    d(P,A) <= d(A,N) and d(P,N) <= d(A,N)."""
    phrase_vec = _lookup(emb, p.text)
    terms = [_lookup(emb, t) for t in p.term_surfaces]
    max_pt = max(cosine_distance(phrase_vec, t) for t in terms)
    min_tt = min(
        cosine_distance(terms[j], terms[k])
        for j in range(len(terms))
        for k in range(j + 1, len(terms))
    )
    margin = snap_tie(min_tt - max_pt)
    return RelationOutcome(
        relation=RelationKind.INTERSECTIVITY,
        key=p.text,
        type_tags=p.adjective_types,
        satisfied=margin >= 0.0,
        margin=margin,
    )


def eval_pair_intersectivity(
    q: PairQuadruple, emb: Mapping[str, np.ndarray]
) -> RelationOutcome:
    """Satisfied iff d(a1 n1, a1 n2) < d(a2 n1, a2 n2), strictly; a tie
    violates the relation."""
    t11, t12, t21, t22 = q.phrase_texts
    lhs = cosine_distance(_lookup(emb, t11), _lookup(emb, t12))
    rhs = cosine_distance(_lookup(emb, t21), _lookup(emb, t22))
    margin = snap_tie(rhs - lhs)
    return RelationOutcome(
        relation=RelationKind.PAIR_INTERSECTIVITY,
        key=q.key,
        type_tags=(q.a1.type, q.a2.type),
        satisfied=margin > 0.0,
        margin=margin,
    )


def eval_nonsubsectivity(p: Phrase, emb: Mapping[str, np.ndarray]) -> RelationOutcome:
    """Satisfied iff d(phrase, adjective) <= d(phrase, noun); requires an
    AN phrase (exactly one adjective)."""
    if len(p.adjectives) != 1:
        raise ValueError(
            f"non-subsectivity is defined for AN phrases, got {len(p.adjectives)} adjectives"
        )
    phrase_vec = _lookup(emb, p.text)
    d_pa = cosine_distance(phrase_vec, _lookup(emb, p.adjectives[0].surface))
    d_pn = cosine_distance(phrase_vec, _lookup(emb, p.noun))
    margin = snap_tie(d_pn - d_pa)
    return RelationOutcome(
        relation=RelationKind.NON_SUBSECTIVITY,
        key=p.text,
        type_tags=p.adjective_types,
        satisfied=margin >= 0.0,
        margin=margin,
    )


class _RowIndex:
    """Unit-row matrix over the texts a batch evaluation needs."""

    def __init__(self, emb: Mapping[str, np.ndarray], texts: Sequence[str]):
        order = list(dict.fromkeys(texts))
        self.row = {t: i for i, t in enumerate(order)}
        self.U = unit_rows([_lookup(emb, t) for t in order], names=order)

    def rows(self, texts: Iterable[str]) -> np.ndarray:
        row = self.row
        return np.fromiter((row[t] for t in texts), dtype=np.int64)


def eval_intersectivity_batch(
    phrases: Sequence[Phrase], emb: Mapping[str, np.ndarray]
) -> list[RelationOutcome]:
    """Kernel-backed equivalent of eval_intersectivity over a corpus."""
    if not phrases:
        return []
    needed: list[str] = []
    for p in phrases:
        needed.append(p.text)
        needed.extend(p.term_surfaces)
    index = _RowIndex(emb, needed)
    phrase_rows = index.rows(p.text for p in phrases)
    term_rows = index.rows(t for p in phrases for t in p.term_surfaces)
    offsets = np.zeros(len(phrases) + 1, dtype=np.int64)
    np.cumsum([len(p.term_surfaces) for p in phrases], out=offsets[1:])
    margins = kernels.intersectivity_margins(index.U, phrase_rows, term_rows, offsets)
    out = []
    for p, m in zip(phrases, margins):
        margin = snap_tie(float(m))
        out.append(
            RelationOutcome(
                relation=RelationKind.INTERSECTIVITY,
                key=p.text,
                type_tags=p.adjective_types,
                satisfied=margin >= 0.0,
                margin=margin,
            )
        )
    return out


def eval_pair_intersectivity_batch(
    quadruples: Sequence[PairQuadruple], emb: Mapping[str, np.ndarray]
) -> list[RelationOutcome]:
    if not quadruples:
        return []
    texts = [t for q in quadruples for t in q.phrase_texts]
    index = _RowIndex(emb, texts)
    r11 = index.rows(q.phrase_texts[0] for q in quadruples)
    r12 = index.rows(q.phrase_texts[1] for q in quadruples)
    r21 = index.rows(q.phrase_texts[2] for q in quadruples)
    r22 = index.rows(q.phrase_texts[3] for q in quadruples)
    margins = kernels.pair_margins(index.U, r11, r12, r21, r22)
    out = []
    for q, m in zip(quadruples, margins):
        margin = snap_tie(float(m))
        out.append(
            RelationOutcome(
                relation=RelationKind.PAIR_INTERSECTIVITY,
                key=q.key,
                type_tags=(q.a1.type, q.a2.type),
                satisfied=margin > 0.0,
                margin=margin,
            )
        )
    return out


def eval_nonsubsectivity_batch(
    phrases: Sequence[Phrase], emb: Mapping[str, np.ndarray]
) -> list[RelationOutcome]:
    if not phrases:
        return []
    for p in phrases:
        if len(p.adjectives) != 1:
            raise ValueError(
                f"non-subsectivity is defined for AN phrases; {p.text!r} has "
                f"{len(p.adjectives)} adjectives"
            )
    needed: list[str] = []
    for p in phrases:
        needed += [p.text, p.adjectives[0].surface, p.noun]
    index = _RowIndex(emb, needed)
    p_rows = index.rows(p.text for p in phrases)
    a_rows = index.rows(p.adjectives[0].surface for p in phrases)
    n_rows = index.rows(p.noun for p in phrases)
    margins = kernels.nonsubsectivity_margins(index.U, p_rows, a_rows, n_rows)
    out = []
    for p, m in zip(phrases, margins):
        margin = snap_tie(float(m))
        out.append(
            RelationOutcome(
                relation=RelationKind.NON_SUBSECTIVITY,
                key=p.text,
                type_tags=p.adjective_types,
                satisfied=margin >= 0.0,
                margin=margin,
            )
        )
    return out


def aggregate(
    outcomes: Iterable[RelationOutcome], grouping: str
) -> list[ConsistencyCell]:
    """Consistency per group.

    grouping "by-type" keys each outcome by its single adjective type;
    "by-ordered-type-pair" keys by the ordered (first, second) tag pair.
    Group order follows first occurrence in the outcome stream, which is
    deterministic for deterministic corpora.
    """
    if grouping not in ("by-type", "by-ordered-type-pair"):
        raise ValueError(f"unknown grouping {grouping!r}")
    want = 1 if grouping == "by-type" else 2
    sat: dict = {}
    tot: dict = {}
    for o in outcomes:
        if len(o.type_tags) != want:
            raise ValueError(
                f"outcome {o.key!r} carries {len(o.type_tags)} type tags; "
                f"grouping {grouping!r} needs {want}"
            )
        key = o.type_tags[0] if want == 1 else o.type_tags
        tot[key] = tot.get(key, 0) + 1
        if o.satisfied:
            sat[key] = sat.get(key, 0) + 1
    return [
        ConsistencyCell(group=k, satisfied_count=sat.get(k, 0), total_count=tot[k])
        for k in tot
    ]


def overall_rate(outcomes: Sequence[RelationOutcome]) -> float | None:
    if not outcomes:
        return None
    return sum(1 for o in outcomes if o.satisfied) / len(outcomes)


def tie_count(outcomes: Iterable[RelationOutcome]) -> int:
    return sum(1 for o in outcomes if o.margin == 0.0)
