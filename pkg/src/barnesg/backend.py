"""Kernel backend selection.

The hot kernels exist twice: a Cython extension (``barnesg._ckernels``) and a
pure-Python mirror (``barnesg._pykernels``). The compiled core is preferred
when importable; ``BARNESG_BACKEND=pure`` or ``=compiled`` forces a choice.
Both implement the same algorithms, so results agree to roundoff and the whole
test suite runs under either.
"""

from __future__ import annotations

import os

from . import _pykernels

_forced = os.environ.get("BARNESG_BACKEND", "").strip().lower()
if _forced not in ("", "pure", "compiled"):
    raise ImportError(
        f"BARNESG_BACKEND must be 'pure' or 'compiled', got {_forced!r}")

if _forced == "pure":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        if _forced == "compiled":
            raise ImportError(
                "BARNESG_BACKEND=compiled but the extension is not built")
        _impl = _pykernels

loggamma = _impl.loggamma
digamma = _impl.digamma
trigamma = _impl.trigamma
gn_sum = _impl.gn_sum
cd_sums = _impl.cd_sums


def backend_name() -> str:
    """Active kernel backend: 'compiled' or 'pure'."""
    return _impl.backend_name()


def available_backends() -> list[str]:
    out = ["pure"]
    try:
        from . import _ckernels  # noqa: F401
        out.insert(0, "compiled")
    except ImportError:
        pass
    return out
