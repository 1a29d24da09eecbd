"""Command-line pipeline: generate, evaluate, oracle.

Every run writes artifacts stamped with a config digest; runs with the
same digest are byte-identical. Exit codes signal operational failure
only, never low consistency rates.
"""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import __version__, kernels
from .lexicon import (
    Lexicon,
    default_lexicon,
    load_lexicon,
    serialize_lexicon,
)
from .phrasegen import (
    generate_pair_quadruples,
    generate_phrases,
    phrase_texts_needed,
    write_corpus,
)
from .providers import (
    CachingProvider,
    EmbeddingStore,
    RemoteProvider,
    ToyEmbedder,
    embed_into_store,
    load_store,
)
from .relations import (
    aggregate,
    eval_intersectivity_batch,
    eval_nonsubsectivity_batch,
    eval_pair_intersectivity_batch,
    overall_rate,
    tie_count,
)
from .report import (
    TableKind,
    ResultsBundle,
    compare_against_reference,
    parse_table,
    render_table,
)
from .setworld import CATEGORIES, run_simulation, save_report

RELATION_NAMES = ("an", "aan", "pairs", "nonsub")

_TABLE_FOR_RELATION = {
    "an": TableKind.AN_INTERSECTIVITY,
    "aan": TableKind.AAN_INTERSECTIVITY,
    "pairs": TableKind.PAIR_INTERSECTIVITY,
    "nonsub": TableKind.NON_SUBSECTIVITY,
}


@dataclass
class RunConfig:
    """Everything that determines a run's numbers (not its location)."""

    lexicon_path: str | None = None
    max_adjectives: int = 2
    provider: str = "toy:0:256"
    relations: tuple[str, ...] = RELATION_NAMES
    seed: int = 0
    batch_size: int = 256
    cache: bool = False

    def load_lexicon(self) -> Lexicon:
        if self.lexicon_path is None:
            return default_lexicon()
        return load_lexicon(self.lexicon_path)

    def digest(self) -> str:
        lex_sha = hashlib.sha256(
            serialize_lexicon(self.load_lexicon()).encode("utf-8")
        ).hexdigest()
        payload = {
            "lexicon_sha256": lex_sha,
            "max_adjectives": self.max_adjectives,
            "provider": self.provider,
            "relations": list(self.relations),
            "seed": self.seed,
            "batch_size": self.batch_size,
            "kernel_backend": kernels.backend_name(),
            "version": __version__,
        }
        blob = json.dumps(payload, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()


def parse_provider_spec(spec: str, batch_size: int = 64):
    """toy:SEED:DIM | file:PATH | http:URL:MODEL -> provider instance."""
    scheme, _, rest = spec.partition(":")
    if scheme == "toy":
        try:
            seed_s, dim_s = rest.split(":")
            return ToyEmbedder(seed=int(seed_s), dim=int(dim_s))
        except ValueError:
            raise click.BadParameter(f"expected toy:SEED:DIM, got {spec!r}") from None
    if scheme == "file":
        if not rest:
            raise click.BadParameter(f"expected file:PATH, got {spec!r}")
        return load_store(rest)
    if scheme == "http":
        url, sep, model = rest.rpartition(":")
        if not sep or not url or not model:
            raise click.BadParameter(f"expected http:URL:MODEL, got {spec!r}")
        return RemoteProvider(endpoint=url, model_id=model, batch_size=batch_size)
    raise click.BadParameter(f"unknown provider scheme in {spec!r}")


def _parse_relations(value: str) -> tuple[str, ...]:
    if value == "all":
        return RELATION_NAMES
    names = tuple(v.strip() for v in value.split(",") if v.strip())
    for name in names:
        if name not in RELATION_NAMES:
            raise click.BadParameter(
                f"unknown relation {name!r}; choose from {', '.join(RELATION_NAMES)} or 'all'"
            )
    if not names:
        raise click.BadParameter("no relations selected")
    return names


def _phrase_length_label(n_adjectives: int) -> str:
    return "A" * n_adjectives + "N"


def run_generation(config: RunConfig, out_dir: Path) -> dict:
    lex = config.load_lexicon()
    phrases = generate_phrases(lex, config.max_adjectives)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus_path = out_dir / "corpus.txt"
    write_corpus(phrases, corpus_path)
    counts: dict[str, int] = {}
    for p in phrases:
        label = _phrase_length_label(len(p.adjectives))
        counts[label] = counts.get(label, 0) + 1
    digest = config.digest()
    # corpus.txt stays pure one-phrase-per-line; the digest lives alongside
    meta = {"digest": digest, "counts": counts, "total": len(phrases)}
    (out_dir / "generate.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return {
        "corpus_path": corpus_path,
        "counts": counts,
        "total": len(phrases),
        "digest": digest,
    }


def run_evaluation(config: RunConfig, out_dir: Path) -> dict:
    """Full pipeline: corpus, embeddings, relations, tables. Returns a
    summary dict mirroring run.json."""
    lex = config.load_lexicon()
    digest = config.digest()
    out_dir.mkdir(parents=True, exist_ok=True)

    phrases = generate_phrases(lex, config.max_adjectives)
    an_phrases = [p for p in phrases if len(p.adjectives) == 1]
    aan_phrases = [p for p in phrases if len(p.adjectives) == 2]
    needed_phrases = []
    if "an" in config.relations or "nonsub" in config.relations:
        needed_phrases += an_phrases
    if "aan" in config.relations:
        needed_phrases += aan_phrases
    quadruples = (
        list(generate_pair_quadruples(lex)) if "pairs" in config.relations else []
    )
    texts = phrase_texts_needed(needed_phrases, quadruples)

    provider = parse_provider_spec(config.provider, batch_size=config.batch_size)
    if config.cache and not isinstance(provider, EmbeddingStore):
        cache_dir = out_dir / "cache"
        cache_dir.mkdir(parents=True, exist_ok=True)
        safe_id = provider.model_id.replace("/", "_").replace(":", "_")
        provider = CachingProvider(provider, cache_dir / f"{safe_id}.jsonl")
    store = embed_into_store(provider, texts, batch_size=config.batch_size)

    bundle = ResultsBundle(model_id=store.model_id or provider.model_id)
    summary: dict = {
        "digest": digest,
        "model": bundle.model_id,
        "kernel_backend": kernels.backend_name(),
        "seed": config.seed,
        "provider": config.provider,
        "relations": list(config.relations),
        "lexicon": {
            "adjectives": len(lex.adjectives),
            "nouns": len(lex.nouns),
        },
        "corpus": {
            "an_phrases": len(an_phrases),
            "aan_phrases": len(aan_phrases),
            "unique_texts": len(texts),
            "quadruples": len(quadruples),
        },
        "global_rates": {},
        "ties": {},
        "artifacts": [],
    }

    evaluated = {
        "an": lambda: eval_intersectivity_batch(an_phrases, store),
        "aan": lambda: eval_intersectivity_batch(aan_phrases, store),
        "pairs": lambda: eval_pair_intersectivity_batch(quadruples, store),
        "nonsub": lambda: eval_nonsubsectivity_batch(an_phrases, store),
    }
    for name in config.relations:
        outcomes = evaluated[name]()
        kind = _TABLE_FOR_RELATION[name]
        grouping = "by-type" if name in ("an", "nonsub") else "by-ordered-type-pair"
        bundle.cells[kind] = aggregate(outcomes, grouping)
        summary["global_rates"][name] = overall_rate(outcomes)
        summary["ties"][name] = tie_count(outcomes)

        stem = kind.value.replace("-", "_")
        outcome_path = out_dir / f"outcomes_{stem}.jsonl"
        with open(outcome_path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"config_digest": digest, "relation": name}) + "\n")
            for o in outcomes:
                fh.write(
                    json.dumps(
                        {
                            "relation": o.relation.value,
                            "key": o.key,
                            "types": [t.shorthand for t in o.type_tags],
                            "satisfied": o.satisfied,
                            "margin": o.margin,
                        }
                    )
                    + "\n"
                )
        summary["artifacts"].append(outcome_path.name)
        for fmt, suffix in (("csv", "csv"), ("markdown", "md")):
            table_path = out_dir / f"table_{stem}.{suffix}"
            table_path.write_text(
                render_table(bundle, kind, fmt, header_comment=f"config {digest}"),
                encoding="utf-8",
            )
            summary["artifacts"].append(table_path.name)

    bundle.metadata = {k: v for k, v in summary.items() if k != "artifacts"}
    run_path = out_dir / "run.json"
    run_path.write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    summary["bundle"] = bundle
    return summary


@click.group()
@click.version_option(__version__)
def main():
    """Consistency tests of embedding models on adjective-noun phrases."""


def _common_options(fn):
    fn = click.option(
        "--lexicon",
        "lexicon_path",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="Lexicon file (default: bundled).",
    )(fn)
    fn = click.option("--max-adjectives", type=int, default=2, show_default=True)(fn)
    fn = click.option(
        "--out",
        "out_dir",
        type=click.Path(file_okay=False, path_type=Path),
        default=Path("adjcomp-out"),
        show_default=True,
    )(fn)
    fn = click.option("--seed", type=int, default=0, show_default=True)(fn)
    return fn


@main.command()
@_common_options
def generate(lexicon_path, max_adjectives, out_dir, seed):
    """Expand the phrase corpus and write one phrase per line."""
    config = RunConfig(
        lexicon_path=lexicon_path, max_adjectives=max_adjectives, seed=seed
    )
    result = run_generation(config, out_dir)
    parts = [f"{label}: {n}" for label, n in sorted(result["counts"].items(), key=lambda kv: len(kv[0]))]
    click.echo(", ".join(parts + [f"total: {result['total']}"]))
    click.echo(f"wrote {result['corpus_path']}")


@main.command()
@_common_options
@click.option(
    "--provider",
    required=True,
    help="toy:SEED:DIM | file:PATH | http:URL:MODEL",
)
@click.option(
    "--relations",
    default="all",
    show_default=True,
    help=f"comma list of {', '.join(RELATION_NAMES)}, or 'all'",
)
@click.option("--batch-size", type=int, default=256, show_default=True)
@click.option("--cache/--no-cache", default=False, show_default=True)
@click.option(
    "--reference",
    "reference_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Reference table CSV for regression comparison.",
)
@click.option("--reference-kind", default=None, help="Table kind of --reference.")
@click.option(
    "--reference-model",
    default=None,
    help="Reference row to compare against (default: provider model id).",
)
@click.option("--tolerance", type=float, default=0.05, show_default=True)
def evaluate(
    lexicon_path,
    max_adjectives,
    out_dir,
    seed,
    provider,
    relations,
    batch_size,
    cache,
    reference_path,
    reference_kind,
    reference_model,
    tolerance,
):
    """Embed the corpus and evaluate the selected relations."""
    config = RunConfig(
        lexicon_path=lexicon_path,
        max_adjectives=max_adjectives,
        provider=provider,
        relations=_parse_relations(relations),
        seed=seed,
        batch_size=batch_size,
        cache=cache,
    )
    try:
        summary = run_evaluation(config, out_dir)
    except Exception as exc:  # operational failure -> nonzero exit
        raise click.ClickException(str(exc)) from exc
    click.echo(f"config digest: {summary['digest']}")
    for name, rate in summary["global_rates"].items():
        rate_s = "n/a" if rate is None else f"{rate:.4f}"
        click.echo(f"{name}: rate={rate_s} ties={summary['ties'][name]}")
    if reference_path is not None:
        if reference_kind is None:
            raise click.ClickException("--reference requires --reference-kind")
        kind = TableKind(reference_kind)
        reference = parse_table(Path(reference_path).read_text(encoding="utf-8"))
        deviations = compare_against_reference(
            summary["bundle"],
            kind,
            reference,
            tolerance,
            reference_model=reference_model,
        )
        dev_path = out_dir / "deviations.jsonl"
        with open(dev_path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"config_digest": summary["digest"]}) + "\n")
            for d in deviations:
                fh.write(
                    json.dumps(
                        {
                            "model": d.model,
                            "column": d.column,
                            "observed": d.observed,
                            "reference": d.reference,
                        }
                    )
                    + "\n"
                )
        click.echo(
            f"regression vs {reference_path}: {len(deviations)} deviation(s) "
            f"above tolerance {tolerance}"
        )
        for d in deviations:
            obs = "missing" if d.observed is None else f"{d.observed:.4f}"
            ref = "missing" if d.reference is None else f"{d.reference:.4f}"
            click.echo(f"  {d.column}: observed={obs} reference={ref}")


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--universe-size", type=int, default=8, show_default=True)
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option(
    "--categories",
    default=",".join(CATEGORIES),
    show_default=True,
    help="comma list of categories to simulate",
)
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("adjcomp-out"),
    show_default=True,
)
def oracle(seed, universe_size, trials, categories, out_dir):
    """Run the set-world simulation and report per-category rates."""
    names = [c.strip() for c in categories.split(",") if c.strip()]
    for name in names:
        if name not in CATEGORIES:
            raise click.ClickException(
                f"unknown category {name!r}; choose from {', '.join(CATEGORIES)}"
            )
    mix = {name: trials for name in names}
    report = run_simulation(
        seed=seed, universe_size=universe_size, trials=trials, category_mix=mix
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = Path(out_dir) / "setworld_report.jsonl"
    save_report(report, report_path)
    click.echo(report.render())
    click.echo(f"wrote {report_path}")


if __name__ == "__main__":
    sys.exit(main())
