"""Backend selection for the hot kernels.

The compiled GMP/Cython module is used when it imports; otherwise the
pure-Python reference is used.  :func:`use_backend` switches explicitly,
which the benchmark and the equivalence tests rely on.
"""
from __future__ import annotations

from contextlib import contextmanager
from types import ModuleType

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS: dict[str, ModuleType | None] = {"compiled": _compiled, "python": _pykernels}
_active: ModuleType = _compiled if _compiled is not None else _pykernels


def available() -> list[str]:
    return [name for name, mod in _BACKENDS.items() if mod is not None]


def backend() -> str:
    return "compiled" if _active is _compiled and _compiled is not None else "python"


def set_backend(name: str) -> None:
    global _active
    mod = _BACKENDS.get(name)
    if mod is None:
        raise ValueError(f"backend {name!r} unavailable; choose from {available()}")
    _active = mod


@contextmanager
def use_backend(name: str):
    previous = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def sturm_tower(coeffs) -> list[tuple[int, int, int, int, int, int]]:
    return _active.sturm_tower(coeffs)


def cosine_grid_sign_changes(A, resolution: int, tol: float) -> int:
    import numpy as np

    return int(_active.cosine_grid_sign_changes(
        np.ascontiguousarray(A, dtype=float), int(resolution), float(tol)))
