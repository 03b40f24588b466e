"""Enumeration budgets.  ``COMAX_BUDGET`` overrides every cap at once."""
import os

DEFAULT_PAIR_BUDGET = 1 << 16
DEFAULT_ELEMENT_CAP = 100_000
PID_STABILIZATION_BOUND = 64


def _override():
    raw = os.environ.get("COMAX_BUDGET")
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        return None
    return value if value > 0 else None


def pair_budget() -> int:
    return _override() or DEFAULT_PAIR_BUDGET


def element_cap() -> int:
    return _override() or DEFAULT_ELEMENT_CAP
