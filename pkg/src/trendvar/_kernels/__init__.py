"""Kernel backend selection.

Prefers the compiled Cython extension and falls back to the pure-numpy
implementation when it is unavailable. Both consume pre-drawn uniforms
positionally, so switching backend does not change results (sign-only
kernels are bit-identical; see _fallback for the one round-off caveat).
"""

from __future__ import annotations

from . import _fallback

try:
    from . import _core  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _core = None

_impl = _core if _core is not None else _fallback

BACKEND = "compiled" if _core is not None else "fallback"

crw_terminal = _impl.crw_terminal
semiparam_terminal = _impl.semiparam_terminal
renewal_block = _impl.renewal_block


def get_backend(name: str):
    """Return a kernel module by name ("compiled" or "fallback"), or None."""
    if name == "fallback":
        return _fallback
    if name == "compiled":
        return _core
    raise ValueError(f"unknown backend {name!r}")
