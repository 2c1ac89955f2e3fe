"""Kernel backend selection.

The compiled extension is used when importable; set ``EDGEDEPTH_PURE=1``
to force the pure-Python twin.  The compiled exact-rank path guards its
int64 arithmetic and raises OverflowError when entries grow past the
guard; those calls are transparently rerun on the pure backend, which
uses unbounded Python ints.
"""

import os

from . import pykernels

if os.environ.get("EDGEDEPTH_PURE"):
    _impl = None
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = None

BACKEND = pykernels.BACKEND if _impl is None else _impl.BACKEND

if _impl is None:
    minimal_indices = pykernels.minimal_indices
    lcm_closure = pykernels.lcm_closure
    koszul_facets = pykernels.koszul_facets
    rank_mod_p = pykernels.rank_mod_p
    rank_exact = pykernels.rank_exact
    homology_ranks = pykernels.homology_ranks
    koszul_homology = pykernels.koszul_homology
else:
    minimal_indices = _impl.minimal_indices
    lcm_closure = _impl.lcm_closure
    koszul_facets = _impl.koszul_facets
    rank_mod_p = _impl.rank_mod_p

    def rank_exact(cols, nrows):
        try:
            return _impl.rank_exact(cols, nrows)
        except OverflowError:
            return pykernels.rank_exact(cols, nrows)

    def homology_ranks(facets, s, charac):
        try:
            return _impl.homology_ranks(facets, s, charac)
        except OverflowError:
            return pykernels.homology_ranks(facets, s, charac)

    def koszul_homology(b, gens, charac):
        try:
            return _impl.koszul_homology(b, gens, charac)
        except OverflowError:
            return pykernels.koszul_homology(b, gens, charac)
