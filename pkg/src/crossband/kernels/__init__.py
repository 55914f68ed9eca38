"""Hot kernels with a compiled backend and a pure-Python fallback.

The Cython extension ``_ckernels`` is used when it was built; otherwise the
numpy implementation in ``_pykernels`` takes over. Set
``CROSSBAND_BACKEND=python`` to force the fallback. Both backends return
bitwise-identical results.
"""

import importlib
import os

from crossband.kernels import _pykernels

BACKENDS = ("cython", "python")


def load_backend(name: str):
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module("crossband.kernels._ckernels")
    raise ValueError(f"unknown kernel backend {name!r}; choose from {BACKENDS}")


def available_backends() -> list[str]:
    names = []
    for name in BACKENDS:
        try:
            load_backend(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select():
    wanted = os.environ.get("CROSSBAND_BACKEND", "").strip().lower()
    if wanted:
        return load_backend(wanted)
    try:
        return load_backend("cython")
    except ImportError:
        return _pykernels


backend = _select()
BACKEND = backend.NAME

census_descriptors = backend.census_descriptors
census_volume = backend.census_volume
sgm_aggregate = backend.sgm_aggregate
