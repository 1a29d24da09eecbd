import numpy as np
import pytest

WORDS = ["red", "fake", "dog", "wall", "old", "king"]


@pytest.fixture(scope="session")
def vector_file(tmp_path_factory):
    """Small deterministic word-vector table, dim 8."""
    rng = np.random.default_rng(99)
    path = tmp_path_factory.mktemp("vectors") / "words.txt"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(WORDS)} 8\n")
        for word in WORDS:
            vec = rng.standard_normal(8)
            fh.write(word + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")
    return path


@pytest.fixture()
def registry(vector_file):
    from embedsvc.backends import StaticWordVectors
    from embedsvc.registry import ModelRegistry

    reg = ModelRegistry()
    reg.add("tiny-static", StaticWordVectors(vector_file))
    return reg


@pytest.fixture()
def client(registry):
    from fastapi.testclient import TestClient

    from embedsvc.app import create_app

    return TestClient(create_app(registry))
