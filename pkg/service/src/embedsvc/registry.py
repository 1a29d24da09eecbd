"""Model registry: unique ids mapped to loaded backends.

KNOWN_CHECKPOINTS documents the public checkpoints used for the eight
model families the service is normally run with; families not
installed (or without downloaded weights) are simply absent from the
registry at serve time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# family id -> (sentence-transformers checkpoint, pooling style)
KNOWN_CHECKPOINTS = {
    "bert": ("sentence-transformers/bert-base-nli-mean-tokens", "mean-tokens"),
    "sbert": ("sentence-transformers/bert-base-nli-mean-tokens", "mean-tokens"),
    "distilroberta": ("sentence-transformers/all-distilroberta-v1", "mean-tokens"),
    "t5": ("sentence-transformers/sentence-t5-base", "native-sentence-vector"),
    "dpr": (
        "sentence-transformers/facebook-dpr-question_encoder-single-nq-base",
        "cls-token",
    ),
    "labse": ("sentence-transformers/LaBSE", "cls-token"),
    "minilm": ("sentence-transformers/all-MiniLM-L6-v2", "mean-tokens"),
    "glove": (
        "sentence-transformers/average_word_embeddings_glove.6B.300d",
        "mean-static-words",
    ),
    "word2vec": (
        "sentence-transformers/average_word_embeddings_komninos",
        "mean-static-words",
    ),
}


@dataclass(frozen=True)
class RegistryEntry:
    id: str
    dim: int
    pooling: str
    backend: object = field(compare=False)


class ModelRegistry:
    def __init__(self):
        self._entries: dict[str, RegistryEntry] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, model_id: str) -> bool:
        return model_id in self._entries

    def add(self, model_id: str, backend) -> RegistryEntry:
        if model_id in self._entries:
            raise ValueError(f"duplicate model id {model_id!r}")
        entry = RegistryEntry(
            id=model_id,
            dim=int(backend.dim),
            pooling=getattr(backend, "pooling", "native-sentence-vector"),
            backend=backend,
        )
        self._entries[model_id] = entry
        return entry

    def get(self, model_id: str) -> RegistryEntry | None:
        return self._entries.get(model_id)

    def entries(self) -> list[RegistryEntry]:
        return list(self._entries.values())
