from __future__ import annotations

import pytest

from gwrecon.config import settings
from gwrecon.domain.schubert import Grassmannian


@pytest.fixture(autouse=True)
def _no_cache_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:  # pyright: ignore[reportUnusedFunction]
    # A GWRECON_CACHE in the developer's shell must not leak into CLI tests.
    monkeypatch.setattr(settings, "cache_path", "")


@pytest.fixture
def g24() -> Grassmannian:
    return Grassmannian(2, 4)
