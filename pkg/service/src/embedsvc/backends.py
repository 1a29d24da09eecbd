"""Embedding backends: static word vectors with mean pooling, and
sentence-encoder checkpoints via sentence-transformers (optional)."""

from __future__ import annotations

import threading
from pathlib import Path

import numpy as np


class AllOovError(ValueError):
    """Every word of a text is out of vocabulary for a static model."""

    def __init__(self, text: str):
        super().__init__(f"all words out of vocabulary in {text!r}")
        self.text = text


class StaticWordVectors:
    """Word-vector table with mean pooling over in-vocabulary words.

    File format: one ``word v1 v2 ... vd`` record per line (an optional
    leading ``count dim`` header line is skipped). Out-of-vocabulary
    words are dropped from the mean; a fully OOV text raises AllOovError.
    """

    pooling = "mean-static-words"

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._vectors: dict[str, np.ndarray] = {}
        dim: int | None = None
        with open(self.path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh):
                parts = line.rstrip("\n").split(" ")
                if lineno == 0 and len(parts) == 2:
                    continue  # word2vec-style header
                if len(parts) < 2:
                    continue
                word, values = parts[0], parts[1:]
                vec = np.asarray([float(v) for v in values], dtype=np.float64)
                if dim is None:
                    dim = vec.shape[0]
                elif vec.shape[0] != dim:
                    raise ValueError(
                        f"{self.path}:{lineno + 1}: dimension {vec.shape[0]} != {dim}"
                    )
                self._vectors[word] = vec
        if dim is None:
            raise ValueError(f"{self.path}: no vectors found")
        self.dim = dim

    def __contains__(self, word: str) -> bool:
        return word in self._vectors

    def encode(self, texts: list[str]) -> list[np.ndarray]:
        out = []
        for text in texts:
            known = [self._vectors[w] for w in text.split() if w in self._vectors]
            if not known:
                raise AllOovError(text)
            out.append(np.mean(np.stack(known), axis=0))
        return out


class SentenceEncoder:
    """sentence-transformers checkpoint behind the backend interface.

    Inference is serialized with a lock; most torch models are not safe
    for concurrent encode calls on one instance.
    """

    def __init__(self, checkpoint: str, pooling: str = "native-sentence-vector"):
        from sentence_transformers import SentenceTransformer

        self.checkpoint = checkpoint
        self.pooling = pooling
        self._model = SentenceTransformer(checkpoint)
        self._lock = threading.Lock()
        self.dim = int(self._model.get_sentence_embedding_dimension())

    def encode(self, texts: list[str]) -> list[np.ndarray]:
        with self._lock:
            matrix = self._model.encode(
                list(texts), convert_to_numpy=True, show_progress_bar=False
            )
        return [np.asarray(row, dtype=np.float64) for row in matrix]
