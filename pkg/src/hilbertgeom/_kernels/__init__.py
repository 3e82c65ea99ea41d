"""Chart-level numeric kernels with a compiled fast path.

Importing this package picks the Cython extension when it is built and falls
back to the numpy implementation otherwise.  Set HILBERTGEOM_PURE_PYTHON=1 to
force the fallback (used by the benchmark and the parity tests).
"""

import os

from . import _impl_py

BACKEND = "python"
_impl = _impl_py

if os.environ.get("HILBERTGEOM_PURE_PYTHON", "") != "1":
    try:
        from . import _impl_cy as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

INF_T = _impl_py.INF_T

chord_roots_ellipsoid = _impl.chord_roots_ellipsoid
chord_roots_polytope = _impl.chord_roots_polytope
cr_distance = _impl.cr_distance
finsler_factor = _impl.finsler_factor
pair_distance_ellipsoid = _impl.pair_distance_ellipsoid
pair_distance_polytope = _impl.pair_distance_polytope
density_ellipsoid = _impl.density_ellipsoid
density_polytope = _impl.density_polytope
