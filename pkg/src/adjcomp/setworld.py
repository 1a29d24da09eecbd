"""Brute-force set-world simulator.

Nouns denote subsets of a finite universe; adjectives either denote
sets themselves (intersective) or act as set-to-set operators
(subsective / privative / plain). The simulator checks, under Jaccard
distance, the set-level counterparts of the distance relations the
embedding harness evaluates, providing the ground truth the embedding
results are compared against.

Operator constructions are minimal models of each category:
subsective intersects with a fixed mask, privative returns a fixed
subset of the input's complement, plain returns a fixed random subset
of the universe. Non-intersective adjectives have no denotation of
their own; where a relation needs one, a proxy set (union of operator
images over sampled inputs) is used and labelled as such.
"""

from __future__ import annotations

import enum
import hashlib
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

CATEGORIES = ("intersective", "subsective", "privative", "plain")


def jaccard_distance(x: Iterable[int], y: Iterable[int]) -> float:
    """1 - |x & y| / |x | y|, with d(empty, empty) = 0 by convention."""
    xs, ys = frozenset(x), frozenset(y)
    union = xs | ys
    if not union:
        return 0.0
    return 1.0 - len(xs & ys) / len(union)


class OperatorKind(enum.Enum):
    SUBSECTIVE = "subsective"
    PRIVATIVE = "privative"
    PLAIN = "plain"


@dataclass(frozen=True)
class SetOperator:
    """Set-to-set adjective meaning, parameterized by a fixed mask."""

    kind: OperatorKind
    mask: frozenset[int]
    universe: frozenset[int]

    def __call__(self, s: frozenset[int]) -> frozenset[int]:
        if self.kind is OperatorKind.SUBSECTIVE:
            return s & self.mask
        if self.kind is OperatorKind.PRIVATIVE:
            return (self.universe - s) & self.mask
        return self.mask


@dataclass
class DenotationUniverse:
    universe_size: int
    noun_sets: dict[str, frozenset[int]] = field(default_factory=dict)
    intersective_sets: dict[str, frozenset[int]] = field(default_factory=dict)
    operators: dict[str, SetOperator] = field(default_factory=dict)
    proxies: dict[str, frozenset[int]] = field(default_factory=dict)

    @property
    def universe(self) -> frozenset[int]:
        return frozenset(range(self.universe_size))

    def proxy_for(self, adjective: str) -> frozenset[int]:
        """The adjective's own set when intersective; else the operator's
        precomputed proxy (a modelling device, not a denotation)."""
        if adjective in self.intersective_sets:
            return self.intersective_sets[adjective]
        if adjective in self.proxies:
            return self.proxies[adjective]
        raise KeyError(f"no set or proxy for adjective {adjective!r}")


def compose(universe: DenotationUniverse, adjective: str, noun: str) -> frozenset[int]:
    """Phrase denotation: intersection for intersective adjectives,
    operator application otherwise."""
    if noun not in universe.noun_sets:
        raise KeyError(f"unknown noun {noun!r}")
    noun_set = universe.noun_sets[noun]
    if adjective in universe.intersective_sets:
        return universe.intersective_sets[adjective] & noun_set
    if adjective in universe.operators:
        return universe.operators[adjective](noun_set)
    raise KeyError(f"unknown adjective {adjective!r}")


def check_eq1(universe: DenotationUniverse, adjective: str, noun: str) -> bool:
    """Both bounding conjuncts of the intersective set relation:
    d(P, N) <= d(N, A) and d(P, A) <= d(N, A)."""
    p = compose(universe, adjective, noun)
    n = universe.noun_sets[noun]
    a = universe.proxy_for(adjective)
    bound = jaccard_distance(n, a)
    return jaccard_distance(p, n) <= bound and jaccard_distance(p, a) <= bound


def check_eq2(
    universe: DenotationUniverse, adjectives: Sequence[str], noun: str
) -> bool:
    """Multi-adjective version over intersective sets: with P the
    intersection of all term sets, max_i d(P, T_i) <= min_{j<k} d(T_j, T_k)."""
    if len(adjectives) < 2:
        raise ValueError("need at least two adjectives")
    for a in adjectives:
        if a not in universe.intersective_sets:
            raise ValueError(f"adjective {a!r} is not intersective")
    terms = [universe.intersective_sets[a] for a in adjectives] + [
        universe.noun_sets[noun]
    ]
    p = terms[0]
    for t in terms[1:]:
        p = p & t
    max_pt = max(jaccard_distance(p, t) for t in terms)
    min_tt = min(
        jaccard_distance(terms[j], terms[k])
        for j in range(len(terms))
        for k in range(j + 1, len(terms))
    )
    return max_pt <= min_tt


def check_ni(universe: DenotationUniverse, adjective: str, noun: str) -> bool:
    """Set counterpart of the non-subsectivity relation:
    d(P, A) <= d(P, N) with A the adjective's set or proxy."""
    p = compose(universe, adjective, noun)
    return jaccard_distance(p, universe.proxy_for(adjective)) <= jaccard_distance(
        p, universe.noun_sets[noun]
    )


def verify_intersective_bound(max_size: int = 6) -> tuple[int, int]:
    """Exhaustively check that P = C & W satisfies both conjuncts of the
    intersective relation, for every universe size up to max_size and every
    pair of nonempty C, W. Returns (holds, total)."""
    holds = 0
    total = 0
    for n in range(1, max_size + 1):
        members = [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
        for ci in range(1, 1 << n):
            c = members[ci]
            for wi in range(1, 1 << n):
                w = members[wi]
                p = c & w
                bound = jaccard_distance(w, c)
                ok = (
                    jaccard_distance(p, w) <= bound
                    and jaccard_distance(p, c) <= bound
                )
                total += 1
                holds += ok
    return holds, total


def _trial_rng(seed: int, category: str, index: int) -> random.Random:
    h = hashlib.blake2b(digest_size=8)
    h.update(seed.to_bytes(8, "little", signed=True))
    h.update(category.encode("ascii"))
    h.update(index.to_bytes(8, "little", signed=False))
    return random.Random(int.from_bytes(h.digest(), "little"))


def _random_subset(rng: random.Random, size: int, nonempty: bool = False) -> frozenset[int]:
    while True:
        s = frozenset(i for i in range(size) if rng.random() < 0.5)
        if s or not nonempty:
            return s


@dataclass(frozen=True)
class SetRelationReport:
    """Per-category satisfaction rates for the set-world relations.

    rates maps (category, relation) to a rate in [0, 1]; categories with
    zero requested trials are absent rather than zero. privative_disjoint
    counts trials where the composed set was nonempty and at Jaccard
    distance exactly 1 from the noun set.
    """

    seed: int
    universe_size: int
    trials: dict[str, int]
    rates: dict[tuple[str, str], float]
    privative_nonempty: int = 0
    privative_disjoint: int = 0

    def to_records(self) -> list[dict]:
        recs = []
        for (category, relation), rate in sorted(self.rates.items()):
            recs.append(
                {
                    "category": category,
                    "relation": relation,
                    "rate": rate,
                    "trials": self.trials[category],
                    "seed": self.seed,
                    "universe_size": self.universe_size,
                }
            )
        return recs

    def render(self) -> str:
        lines = [f"set-world simulation: seed={self.seed} universe={self.universe_size}"]
        width = max(len(c) for c in self.trials) if self.trials else 8
        for category in CATEGORIES:
            if category not in self.trials:
                continue
            cells = []
            for relation in ("eq1", "eq2", "ni"):
                rate = self.rates.get((category, relation))
                cells.append(f"{relation}={rate:.4f}" if rate is not None else f"{relation}=-")
            lines.append(
                f"  {category:<{width}}  trials={self.trials[category]:<7d} "
                + "  ".join(cells)
            )
        if "privative" in self.trials:
            lines.append(
                f"  privative compositions disjoint from noun: "
                f"{self.privative_disjoint}/{self.privative_nonempty} nonempty cases"
            )
        return "\n".join(lines)


def _build_trial(
    rng: random.Random, category: str, universe_size: int
) -> DenotationUniverse:
    uni = DenotationUniverse(universe_size=universe_size)
    full = uni.universe
    uni.noun_sets["n"] = _random_subset(rng, universe_size, nonempty=True)
    if category == "intersective":
        uni.intersective_sets["a"] = _random_subset(rng, universe_size, nonempty=True)
        uni.intersective_sets["b"] = _random_subset(rng, universe_size, nonempty=True)
    else:
        kind = OperatorKind(category)
        mask = _random_subset(rng, universe_size)
        op = SetOperator(kind=kind, mask=mask, universe=full)
        uni.operators["a"] = op
        # proxy: union of images over the noun set and a few sampled inputs
        images = [op(uni.noun_sets["n"])]
        for _ in range(3):
            images.append(op(_random_subset(rng, universe_size)))
        proxy: frozenset[int] = frozenset()
        for img in images:
            proxy |= img
        uni.proxies["a"] = proxy
    return uni


def run_simulation(
    seed: int,
    universe_size: int = 8,
    trials: int = 1000,
    category_mix: Mapping[str, int] | None = None,
) -> SetRelationReport:
    """Sample random universes per category and measure relation rates.

    Deterministic given (seed, universe_size, trial counts): each trial
    draws from its own blake2b-derived generator, so results are
    independent of evaluation order.
    """
    if universe_size < 1:
        raise ValueError("universe_size must be >= 1")
    mix = dict(category_mix) if category_mix is not None else {c: trials for c in CATEGORIES}
    for cat in mix:
        if cat not in CATEGORIES:
            raise ValueError(f"unknown category {cat!r}")
    counts: dict[tuple[str, str], int] = {}
    totals: dict[tuple[str, str], int] = {}
    privative_nonempty = 0
    privative_disjoint = 0
    for category, n_trials in mix.items():
        for i in range(n_trials):
            rng = _trial_rng(seed, category, i)
            uni = _build_trial(rng, category, universe_size)
            checks: list[tuple[str, bool]] = [
                ("eq1", check_eq1(uni, "a", "n")),
                ("ni", check_ni(uni, "a", "n")),
            ]
            if category == "intersective":
                checks.append(("eq2", check_eq2(uni, ["a", "b"], "n")))
            for relation, ok in checks:
                key = (category, relation)
                totals[key] = totals.get(key, 0) + 1
                counts[key] = counts.get(key, 0) + ok
            if category == "privative":
                p = compose(uni, "a", "n")
                if p:
                    privative_nonempty += 1
                    if jaccard_distance(p, uni.noun_sets["n"]) == 1.0:
                        privative_disjoint += 1
    rates = {key: counts.get(key, 0) / total for key, total in totals.items()}
    trials_by_cat = {cat: n for cat, n in mix.items() if n > 0}
    rates = {k: v for k, v in rates.items() if k[0] in trials_by_cat}
    return SetRelationReport(
        seed=seed,
        universe_size=universe_size,
        trials=trials_by_cat,
        rates=rates,
        privative_nonempty=privative_nonempty,
        privative_disjoint=privative_disjoint,
    )


def save_report(report: SetRelationReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in report.to_records():
            fh.write(json.dumps(rec) + "\n")
