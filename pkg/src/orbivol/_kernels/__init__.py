"""Hot numeric kernels with a compiled core and a numpy fallback.

The two entry points used by the rest of the package are

* ``quat_matmul(a, b)``      -- quaternion matrix product on (r, k, 4) arrays
* ``bracket_batch(table, x, y)`` -- batched Lie bracket in basis coordinates

Backend choice happens once, at import: the Cython extension is used
when it imported cleanly, unless ORBIVOL_KERNEL forces one side
("cy" or "py").  Both backends are kept importable so they can be
benchmarked against each other (see benchmarks/bench_kernels.py).
"""

import os

from . import pykernels

_requested = os.environ.get("ORBIVOL_KERNEL", "").strip().lower()

cykernels = None
if _requested != "py":
    try:
        from . import _cykernels as cykernels
    except ImportError:
        cykernels = None
        if _requested == "cy":
            raise ImportError(
                "ORBIVOL_KERNEL=cy but the compiled kernel module is not "
                "available; build it with `pip install -e .` or drop the "
                "override")

if cykernels is not None:
    backend_name = "cy"
    quat_matmul = cykernels.quat_matmul
    bracket_batch = cykernels.bracket_batch
else:
    backend_name = "py"
    quat_matmul = pykernels.quat_matmul
    bracket_batch = pykernels.bracket_batch

BracketTable = pykernels.BracketTable

__all__ = ["quat_matmul", "bracket_batch", "BracketTable", "backend_name",
           "pykernels", "cykernels"]
