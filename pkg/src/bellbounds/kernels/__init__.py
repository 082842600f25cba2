"""Hot numerical kernels with a compiled core and a pure-numpy fallback.

The Cython extension ``_core`` is used when it was built; otherwise the numpy
implementation in ``fallback`` takes over.  Set the environment variable
``BELLBOUNDS_PURE=1`` to force the fallback (used by the benchmark and the
backend-parity tests).  Both backends expose the same API:

    eigh(H)                     -> (eigenvalues, eigenvector columns)
    batch_expectations(p, op)   -> per-row Tr[W' op]
    assemble_root_matrices(p)   -> Hermitian square roots B per row
    BACKEND                     -> "compiled" or "python"
"""

import os

from . import fallback

assemble_root_matrices = fallback.assemble_root_matrices

if os.environ.get("BELLBOUNDS_PURE") == "1":
    _impl = fallback
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = fallback

eigh = _impl.eigh
batch_expectations = _impl.batch_expectations
BACKEND = _impl.BACKEND
