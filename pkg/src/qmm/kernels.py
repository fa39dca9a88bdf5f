"""Kernel backend selection: compiled extension if built, else pure Python.

``python -m qmm.kernels`` prints the active backend.  The compiled backend is
optional; build it with ``python setup_ext.py build_ext --inplace``.
"""

from __future__ import annotations

try:
    from qmm import _kern_c as _impl  # type: ignore[attr-defined]
except ImportError:
    from qmm import _kern_py as _impl

BACKEND = _impl.BACKEND
dict_mul = _impl.dict_mul
dict_addmul = _impl.dict_addmul
dict_content = _impl.dict_content
dict_scale_exact = _impl.dict_scale_exact

if __name__ == "__main__":
    print(BACKEND)
