"""Kernel backend selection: compiled extension when available, else pure Python.

The compiled module (mdverify._modp, built from _modp.pyx) and the pure
module (_modp_py) export the same functions.  Import order:

  1. MDVERIFY_PURE=1 in the environment forces the pure backend.
  2. Otherwise the compiled extension is tried first.
  3. Anything failing falls back to pure Python silently; `backend_name()`
     reports what is actually in use.
"""

from __future__ import annotations

import os

from . import _modp_py

if os.environ.get("MDVERIFY_PURE", "") == "1":
    _impl = _modp_py
else:
    try:
        from . import _modp as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _modp_py

trim = _impl.trim
mul_mod = _impl.mul_mod
rem_mod = _impl.rem_mod
gcd_mod = _impl.gcd_mod
divexact_mod = _impl.divexact_mod
eval_mod = _impl.eval_mod
bivar_eval_mod = _impl.bivar_eval_mod
bivar_update_mod = _impl.bivar_update_mod


def backend_name() -> str:
    return _impl.BACKEND


def pure_backend():
    """The pure-Python module itself (used by the benchmark)."""
    return _modp_py


def compiled_backend():
    """The compiled module or None when it is not built."""
    try:
        from . import _modp  # type: ignore[attr-defined]

        return _modp
    except ImportError:
        return None
