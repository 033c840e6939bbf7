from __future__ import annotations

import pytest


@pytest.fixture(autouse=True)
def _isolated_cache_env(monkeypatch, tmp_path):
    # Keep every test away from the real user cache directory.
    monkeypatch.setenv("QPROFILES_CACHE", str(tmp_path / "bounds.jsonl"))
