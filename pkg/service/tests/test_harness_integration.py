"""End-to-end: the evaluation harness consuming this service over HTTP.

The harness is driven only through its public surfaces (the remote
provider protocol and the command line); skipped when it is not
installed.
"""

import json
import socket
import subprocess
import sys
import threading
import time

import pytest

adjcomp = pytest.importorskip("adjcomp")

from adjcomp.lexicon import AdjectiveEntry, AdjectiveType, Lexicon, save_lexicon
from adjcomp.providers import RemoteProvider, list_remote_models


@pytest.fixture(scope="module")
def live_server(tmp_path_factory):
    import uvicorn

    from embedsvc.app import create_app
    from embedsvc.backends import StaticWordVectors
    from embedsvc.registry import ModelRegistry

    rng_path = tmp_path_factory.mktemp("vectors") / "words.txt"
    import numpy as np

    rng = np.random.default_rng(4)
    words = ["red", "fake", "dog", "wall"]
    with open(rng_path, "w", encoding="utf-8") as fh:
        for word in words:
            vec = rng.standard_normal(12)
            fh.write(word + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")

    registry = ModelRegistry()
    registry.add("tiny-static", StaticWordVectors(rng_path))

    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]

    config = uvicorn.Config(
        create_app(registry), host="127.0.0.1", port=port, log_level="error"
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("uvicorn did not start")
        time.sleep(0.05)
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)


def test_models_listing_via_harness_client(live_server):
    models = list_remote_models(live_server)
    assert models == [{"id": "tiny-static", "dim": 12}]


def test_remote_provider_roundtrip(live_server):
    provider = RemoteProvider(live_server, "tiny-static", batch_size=2)
    vectors = provider.embed(["red dog", "fake wall", "red", "dog"])
    assert len(vectors) == 4
    assert all(v.shape == (12,) for v in vectors)
    # static model: phrase vector is the word mean
    import numpy as np

    np.testing.assert_allclose(
        vectors[0], (vectors[2] + vectors[3]) / 2.0, atol=1e-5
    )


def test_harness_cli_evaluates_against_service(live_server, tmp_path):
    lex = Lexicon(
        adjectives=(
            AdjectiveEntry("red", AdjectiveType.SUBSECTIVE_INTERSECTIVE),
            AdjectiveEntry("fake", AdjectiveType.NON_SUBSECTIVE_PRIVATIVE),
        ),
        nouns=("dog", "wall"),
    )
    lex_path = tmp_path / "lex.tsv"
    save_lexicon(lex, lex_path)
    out_dir = tmp_path / "out"
    cmd = [
        sys.executable,
        "-m",
        "adjcomp.cli",
        "evaluate",
        "--lexicon",
        str(lex_path),
        "--provider",
        f"http:{live_server}:tiny-static",
        "--relations",
        "an,nonsub",
        "--out",
        str(out_dir),
    ]
    proc = subprocess.run(cmd, capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    run = json.loads((out_dir / "run.json").read_text())
    assert run["model"] == "tiny-static"
    assert run["corpus"]["an_phrases"] == 4
    assert (out_dir / "table_an_intersectivity.csv").exists()
    assert (out_dir / "table_non_subsectivity.csv").exists()
