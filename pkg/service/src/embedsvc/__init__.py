"""embedsvc: HTTP sidecar exposing embedding models behind a small
batch protocol (GET /models, POST /embed)."""

__version__ = "0.1.0"
