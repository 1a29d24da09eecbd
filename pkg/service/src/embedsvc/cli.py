"""Serve embedding models over HTTP.

Examples:
    embedsvc --static glove=vectors/glove.txt --port 8099
    embedsvc --sentence minilm --sentence bert --port 8099
    embedsvc --sentence mymodel=org/checkpoint-name
"""

from __future__ import annotations

import sys

import click

from .backends import SentenceEncoder, StaticWordVectors
from .registry import KNOWN_CHECKPOINTS, ModelRegistry


def _split_spec(spec: str) -> tuple[str, str | None]:
    model_id, sep, rest = spec.partition("=")
    return model_id, (rest if sep else None)


def build_registry(static_specs, sentence_specs) -> ModelRegistry:
    registry = ModelRegistry()
    for spec in static_specs:
        model_id, path = _split_spec(spec)
        if path is None:
            raise click.BadParameter(f"expected ID=PATH, got {spec!r}")
        registry.add(model_id, StaticWordVectors(path))
    for spec in sentence_specs:
        model_id, checkpoint = _split_spec(spec)
        pooling = "native-sentence-vector"
        if checkpoint is None:
            if model_id not in KNOWN_CHECKPOINTS:
                raise click.BadParameter(
                    f"no known checkpoint for {model_id!r}; pass ID=CHECKPOINT "
                    f"(known ids: {', '.join(sorted(KNOWN_CHECKPOINTS))})"
                )
            checkpoint, pooling = KNOWN_CHECKPOINTS[model_id]
        try:
            backend = SentenceEncoder(checkpoint, pooling=pooling)
        except Exception as exc:
            raise click.ClickException(
                f"cannot load {model_id!r} from {checkpoint!r}: {exc}"
            ) from exc
        registry.add(model_id, backend)
    return registry


@click.command()
@click.option(
    "--static",
    "static_specs",
    multiple=True,
    help="Static word-vector model, ID=PATH. Repeatable.",
)
@click.option(
    "--sentence",
    "sentence_specs",
    multiple=True,
    help="Sentence-encoder model, ID or ID=CHECKPOINT. Repeatable.",
)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8099, show_default=True)
def main(static_specs, sentence_specs, host, port):
    """Start the embedding service."""
    registry = build_registry(static_specs, sentence_specs)
    if len(registry) == 0:
        raise click.ClickException("no models configured; pass --static or --sentence")
    ids = ", ".join(e.id for e in registry.entries())
    click.echo(f"serving {len(registry)} model(s): {ids}")

    import uvicorn

    from .app import create_app

    uvicorn.run(create_app(registry), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
