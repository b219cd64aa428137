"""Size limits for the exponential oracles.

Defaults can be raised per call, through :func:`override`, or for a whole
process with ``ALGDET_GUARD_OVERRIDE="expansion=26,ryser=32"``.
"""
from __future__ import annotations

import contextlib
import dataclasses
import os
from dataclasses import dataclass

from .errors import ParseError, SizeGuardError

ENV_VAR = "ALGDET_GUARD_OVERRIDE"


@dataclass(frozen=True)
class Guards:
    bruteforce: int = 8       # n! permutation sums
    expansion: int = 24       # 2^n memoised Laplace expansion
    ryser: int = 30           # 2^n inclusion-exclusion
    cycle_covers: int = 14    # explicit cycle-cover enumeration
    sat: int = 20             # 2^n_v assignments


def parse_overrides(text: str) -> dict:
    out = {}
    names = {f.name for f in dataclasses.fields(Guards)}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, val = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in names or not val.strip().isdigit():
            raise ParseError("bad guard override %r (expected name=int, names: %s)"
                             % (item, ", ".join(sorted(names))))
        out[key] = int(val)
    return out


_active: list = []


def current() -> Guards:
    g = Guards()
    env = os.environ.get(ENV_VAR)
    if env:
        g = dataclasses.replace(g, **parse_overrides(env))
    for extra in _active:
        g = dataclasses.replace(g, **extra)
    return g


@contextlib.contextmanager
def override(**limits):
    """Temporarily raise (or lower) named guards inside a ``with`` block."""
    _active.append(limits)
    try:
        yield current()
    finally:
        _active.remove(limits)


def check(name: str, size: int, limit: int | None = None, what: str = "n") -> None:
    limit = getattr(current(), name) if limit is None else limit
    if size > limit:
        raise SizeGuardError("%s guard: %s = %d exceeds limit %d (raise it with "
                             "--guard %s=%d or %s)" % (name, what, size, limit, name, size, ENV_VAR))
