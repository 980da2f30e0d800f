"""Backend selection for the enumeration kernels.

The compiled extension is used when it imports; setting
``KWISING_PURE_PYTHON=1`` forces the pure-Python versions.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("KWISING_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

even_subgraph_sum = _impl.even_subgraph_sum
spin_config_sum = _impl.spin_config_sum
unicyclic_sum = _impl.unicyclic_sum
boundary_sum = _impl.boundary_sum

__all__ = ["BACKEND", "even_subgraph_sum", "spin_config_sum", "unicyclic_sum", "boundary_sum"]
