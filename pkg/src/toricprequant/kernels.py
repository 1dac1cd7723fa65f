"""Backend selection for the integer hot kernels.

The compiled extension ``_kernels`` is preferred; the pure-Python module is
used when it is missing. ``use_backend`` switches explicitly (benchmarks and
cross-checking tests rely on it).
"""

from . import _pykernels

try:
    from . import _kernels as _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = ("cython", "python") if _ckernels is not None else ("python",)
_active = _ckernels if _ckernels is not None else _pykernels


def backend() -> str:
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name: str) -> None:
    global _active
    if name == "python":
        _active = _pykernels
    elif name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available in this install")
        _active = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")


def canonical_matrix(vectors, n):
    return _active.canonical_matrix(vectors, n)


def unimodular_inverse(columns):
    return _pykernels.unimodular_inverse(columns)


def ridge_extensions(ridge, opposite, old_normal, verts, normals, candidates, allow_new):
    return _active.ridge_extensions(ridge, opposite, old_normal, verts, normals, candidates, allow_new)
