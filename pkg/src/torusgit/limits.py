"""Enumeration caps shared by the engine entry points and the CLI."""
from __future__ import annotations

import os
from math import comb

from .errors import ScaleGuardError

MAX_SUBSETS = 1 << 16
MAX_PLUECKER = 3003
ENV = "VGIT_MAX_SUBSETS"


def _override() -> int | None:
    raw = os.environ.get(ENV)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ScaleGuardError(f"{ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ScaleGuardError(f"{ENV} must be positive")
    return value


def check_weights(m: int) -> None:
    cap = _override() or MAX_SUBSETS
    if (1 << m) > cap:
        raise ScaleGuardError(f"{m} weights need 2^{m} state sets, above the cap of {cap} (set {ENV})")


def check_pluecker(n: int, m: int) -> None:
    cap = _override() or MAX_PLUECKER
    if comb(m, n + 1) > cap:
        raise ScaleGuardError(f"C({m},{n + 1}) Pluecker weights exceed the cap of {cap} (set {ENV})")
