"""Embedding acquisition: deterministic toy embedder, file-backed store,
HTTP client, and a persistent per-model cache.

Vector file format (line-delimited JSON): first a metadata line
``{"model": <str>, "dim": <int>}``, then one record per line
``{"text": <str>, "vector": [<finite numbers>]}``.
"""

from __future__ import annotations

import hashlib
import json
import math
import threading
import time
from pathlib import Path
from typing import Iterator, Protocol, Sequence

import numpy as np

from .geometry import mean_pool

_U53 = float(1 << 53)


class VectorFileError(ValueError):
    """A vector file is malformed or internally inconsistent."""


class MissingVectorError(KeyError):
    """A required text has no stored vector."""

    def __init__(self, text: str):
        super().__init__(text)
        self.text = text

    def __str__(self) -> str:
        return f"no embedding stored for text {self.text!r}"


class TransportError(RuntimeError):
    """The embedding service could not be reached or answered an error."""


class ProtocolError(RuntimeError):
    """The embedding service answered with a malformed or misaligned body."""


class EmbeddingDataError(ValueError):
    """An embedding contains non-finite components."""


class EmbeddingProvider(Protocol):
    """Positionally aligned batch embedding with a stable model id.

    Implementations must be deterministic: the same text embeds to the
    same vector for the lifetime of the instance, and all vectors share
    one dimension.
    """

    model_id: str

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]: ...


def _hash_unit_component(seed: int, word: str, index: int) -> float:
    # blake2b-64 of le64(seed) || utf8(word) || le64(index); top 53 bits
    # mapped to [0, 1), then to [-1, 1). Every step is exact in IEEE-754
    # doubles, so word vectors are bit-reproducible across platforms.
    h = hashlib.blake2b(digest_size=8)
    h.update(seed.to_bytes(8, "little", signed=True))
    h.update(word.encode("utf-8"))
    h.update(index.to_bytes(8, "little", signed=False))
    x = int.from_bytes(h.digest(), "little") >> 11
    return 2.0 * (x / _U53) - 1.0


class ToyEmbedder:
    """Deterministic stand-in for a static word-vector model.

    Each word maps to a fixed unit-norm vector of dimension ``dim`` whose
    raw components are ``_hash_unit_component(seed, word, i)``; a text
    embeds as the mean pool of its space-separated words, without
    renormalization. Bit-reproducible for a given (seed, dim).
    """

    def __init__(self, seed: int, dim: int):
        if dim < 2:
            raise ValueError("dim must be >= 2")
        self.seed = int(seed)
        self.dim = int(dim)
        self.model_id = f"toy-{self.seed}-{self.dim}"
        self._words: dict[str, np.ndarray] = {}

    def word_vector(self, word: str) -> np.ndarray:
        vec = self._words.get(word)
        if vec is None:
            raw = np.array(
                [_hash_unit_component(self.seed, word, i) for i in range(self.dim)]
            )
            norm = math.sqrt(float(np.dot(raw, raw)))
            if norm == 0.0:  # unreachable in practice with dim >= 2
                raise ValueError(f"degenerate word vector for {word!r}")
            vec = raw / norm
            vec.setflags(write=False)
            self._words[word] = vec
        return vec

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        out = []
        for text in texts:
            if not text:
                raise ValueError("cannot embed empty text")
            words = text.split(" ")
            if any(w == "" for w in words):
                raise ValueError(f"malformed text {text!r}")
            out.append(mean_pool([self.word_vector(w) for w in words]))
        return out


class EmbeddingStore:
    """In-memory text -> vector map with one dimension per model id.

    Also usable directly as a provider over already-embedded texts: embed()
    raises MissingVectorError for texts it does not hold.
    """

    def __init__(self, model_id: str = "", dim: int | None = None):
        self.model_id = model_id
        self.dim = dim
        self._vectors: dict[str, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, text: str) -> bool:
        return text in self._vectors

    def __getitem__(self, text: str) -> np.ndarray:
        try:
            return self._vectors[text]
        except KeyError:
            raise MissingVectorError(text) from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbeddingStore):
            return NotImplemented
        return (
            self.model_id == other.model_id
            and self.dim == other.dim
            and self._vectors.keys() == other._vectors.keys()
            and all(
                np.array_equal(v, other._vectors[k]) for k, v in self._vectors.items()
            )
        )

    def texts(self) -> list[str]:
        return list(self._vectors)

    def items(self) -> Iterator[tuple[str, np.ndarray]]:
        return iter(self._vectors.items())

    def add(self, text: str, vector) -> None:
        vec = np.asarray(vector, dtype=np.float64)
        if vec.ndim != 1:
            raise VectorFileError(f"vector for {text!r} is not 1-D")
        if not np.all(np.isfinite(vec)):
            raise EmbeddingDataError(f"non-finite components in vector for {text!r}")
        if self.dim is None:
            self.dim = int(vec.shape[0])
        elif vec.shape[0] != self.dim:
            raise VectorFileError(
                f"dimension clash for {text!r}: store is {self.dim}, "
                f"record is {vec.shape[0]}"
            )
        if text in self._vectors:
            raise VectorFileError(f"duplicate text {text!r}")
        vec.setflags(write=False)
        self._vectors[text] = vec

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        return [self[t] for t in texts]


def save_store(store: EmbeddingStore, path: str | Path) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        meta = {"model": store.model_id, "dim": store.dim if store.dim else 0}
        fh.write(json.dumps(meta) + "\n")
        for text, vec in store.items():
            fh.write(json.dumps({"text": text, "vector": vec.tolist()}) + "\n")


def load_store(path: str | Path) -> EmbeddingStore:
    """Load a vector file. A zero-byte file is an empty store; dimension is
    undefined until the first record."""
    path = Path(path)
    store: EmbeddingStore | None = None
    declared_dim: int | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for idx, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise VectorFileError(f"record {idx}: invalid JSON ({exc})") from None
            if store is None:
                if not isinstance(obj, dict) or "model" not in obj or "dim" not in obj:
                    raise VectorFileError(
                        "record 0: expected metadata line with 'model' and 'dim'"
                    )
                declared_dim = int(obj["dim"]) or None
                store = EmbeddingStore(model_id=str(obj["model"]), dim=declared_dim)
                continue
            if (
                not isinstance(obj, dict)
                or "text" not in obj
                or "vector" not in obj
                or not isinstance(obj["vector"], list)
            ):
                raise VectorFileError(
                    f"record {idx}: expected {{'text', 'vector'}} object"
                )
            try:
                store.add(str(obj["text"]), obj["vector"])
            except (VectorFileError, EmbeddingDataError) as exc:
                raise VectorFileError(f"record {idx}: {exc}") from None
    return store if store is not None else EmbeddingStore()


class CachingProvider:
    """Wrap a provider with a persistent per-model vector-file cache.

    Writes are append-only and serialized by a lock; a warm cache makes
    embed() a pure lookup, so warm and cold runs produce identical
    vectors for a deterministic inner provider.
    """

    def __init__(self, inner: EmbeddingProvider, path: str | Path):
        self.inner = inner
        self.model_id = inner.model_id
        self.path = Path(path)
        self._lock = threading.Lock()
        if self.path.exists():
            self._store = load_store(self.path)
            if self._store.model_id and self._store.model_id != inner.model_id:
                raise VectorFileError(
                    f"cache at {self.path} belongs to model "
                    f"{self._store.model_id!r}, not {inner.model_id!r}"
                )
            self._needs_meta = not self._store.model_id and not len(self._store)
        else:
            self._store = EmbeddingStore(model_id=inner.model_id)
            self._needs_meta = True

    def __len__(self) -> int:
        return len(self._store)

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        missing = [t for t in dict.fromkeys(texts) if t not in self._store]
        if missing:
            fresh = self.inner.embed(missing)
            with self._lock:
                with open(self.path, "a", encoding="utf-8") as fh:
                    if self._needs_meta:
                        meta = {
                            "model": self.model_id,
                            "dim": int(fresh[0].shape[0]),
                        }
                        fh.write(json.dumps(meta) + "\n")
                        self._needs_meta = False
                    for text, vec in zip(missing, fresh):
                        self._store.add(text, vec)
                        fh.write(
                            json.dumps({"text": text, "vector": vec.tolist()}) + "\n"
                        )
        return [self._store[t] for t in texts]


class RemoteProvider:
    """Client for the embedding service protocol.

    POST <endpoint>/embed with {"model", "texts"} returns {"model", "dim",
    "vectors"}. Requests are batched; transient failures (connection
    errors, HTTP 5xx) retry with exponential backoff before raising
    TransportError.
    """

    def __init__(
        self,
        endpoint: str,
        model_id: str,
        batch_size: int = 64,
        timeout: float = 60.0,
        max_retries: int = 3,
        backoff: float = 0.5,
    ):
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        self.endpoint = endpoint.rstrip("/")
        self.model_id = model_id
        self.batch_size = batch_size
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff

    def _post_batch(self, batch: Sequence[str]) -> list[np.ndarray]:
        import requests

        url = f"{self.endpoint}/embed"
        body = {"model": self.model_id, "texts": list(batch)}
        last_error: Exception | None = None
        for attempt in range(self.max_retries):
            try:
                resp = requests.post(url, json=body, timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = exc
            else:
                if resp.status_code >= 500:
                    last_error = TransportError(
                        f"{url} answered {resp.status_code}: {resp.text[:200]}"
                    )
                elif resp.status_code != 200:
                    raise TransportError(
                        f"{url} answered {resp.status_code}: {resp.text[:200]}"
                    )
                else:
                    return self._parse_batch(resp, len(batch))
            if attempt + 1 < self.max_retries:
                time.sleep(self.backoff * (2**attempt))
        raise TransportError(f"giving up on {url} after {self.max_retries} attempts: {last_error}")

    def _parse_batch(self, resp, expected: int) -> list[np.ndarray]:
        try:
            payload = resp.json()
            vectors = payload["vectors"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ProtocolError(f"malformed response body: {exc}") from None
        if not isinstance(vectors, list) or len(vectors) != expected:
            got = len(vectors) if isinstance(vectors, list) else "no"
            raise ProtocolError(f"requested {expected} vectors, got {got}")
        out = []
        for vec in vectors:
            arr = np.asarray(vec, dtype=np.float64)
            if arr.ndim != 1:
                raise ProtocolError("vector is not a flat list of numbers")
            if not np.all(np.isfinite(arr)):
                raise EmbeddingDataError("service returned non-finite components")
            out.append(arr)
        dims = {v.shape[0] for v in out}
        if len(dims) > 1:
            raise ProtocolError(f"mixed dimensions in one response: {sorted(dims)}")
        return out

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        if not texts:
            return []
        out: list[np.ndarray] = []
        for start in range(0, len(texts), self.batch_size):
            out.extend(self._post_batch(texts[start : start + self.batch_size]))
        dims = {v.shape[0] for v in out}
        if len(dims) > 1:
            raise ProtocolError(f"mixed dimensions across batches: {sorted(dims)}")
        return out


def list_remote_models(endpoint: str, timeout: float = 30.0) -> list[dict]:
    import requests

    url = f"{endpoint.rstrip('/')}/models"
    try:
        resp = requests.get(url, timeout=timeout)
    except requests.RequestException as exc:
        raise TransportError(f"cannot reach {url}: {exc}") from None
    if resp.status_code != 200:
        raise TransportError(f"{url} answered {resp.status_code}")
    try:
        return list(resp.json()["models"])
    except (ValueError, KeyError, TypeError) as exc:
        raise ProtocolError(f"malformed /models response: {exc}") from None


def embed_into_store(
    provider: EmbeddingProvider, texts: Sequence[str], batch_size: int = 256
) -> EmbeddingStore:
    """Embed unique texts through a provider and collect an EmbeddingStore."""
    store = EmbeddingStore(model_id=provider.model_id)
    unique = list(dict.fromkeys(texts))
    for start in range(0, len(unique), batch_size):
        chunk = unique[start : start + batch_size]
        for text, vec in zip(chunk, provider.embed(chunk)):
            store.add(text, vec)
    return store
