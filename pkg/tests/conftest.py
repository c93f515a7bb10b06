import os

os.environ.setdefault("SCHUBERT_CHECK_EXPANSIONS", "1")
os.environ.setdefault("SCHUBERT_QUIET", "1")

import pytest
from hypothesis import settings

import config

config.CHECK_EXPANSIONS = True

settings.register_profile("schubertist", derandomize=True, deadline=None, print_blob=True)
settings.register_profile("dev", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "schubertist"))


@pytest.fixture
def no_disk_cache(monkeypatch):
    monkeypatch.setattr(config, "CACHE_PATH", "")
