"""Hot-loop kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it imports; set ``NETMATCH_PURE_PYTHON=1``
to force the fallback. ``BACKEND`` names the active one.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("NETMATCH_PURE_PYTHON") != "1":
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        _impl = _ckernels
        BACKEND = "cython"

hopcroft_karp = _impl.hopcroft_karp
triangles_per_node = _impl.triangles_per_node
alternating_classes = _impl.alternating_classes


def available_backends():
    """Map of backend name to kernel module, for tests and benchmarks."""
    backends = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        backends["cython"] = _ckernels
    return backends
