"""Backend selection for the numerical kernels.

The compiled extension ``_ckernels`` is used when it imports cleanly;
otherwise, or when the environment variable ``PONCELET_BACKEND`` is set to
``python``, the numpy implementations in ``_pykernels`` are used.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("PONCELET_BACKEND", "").lower() != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

horner = _impl.horner
horner_deriv = _impl.horner_deriv
aberth = _impl.aberth
jacobi_eigh = _impl.jacobi_eigh
jacobi_svd = _impl.jacobi_svd


def backends():
    """Return a dict mapping available backend names to kernel modules."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
