from __future__ import annotations

import os

import pytest
from hypothesis import settings

from plumbzeta import build_context, zoo

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def ctxs():
    return {name: build_context(zoo.load(name)) for name in zoo.NAMES}
