"""Exact Ext^1 computations for conformal modules over Virasoro and current conformal algebras."""

import json

from . import _confext
from ._confext import ConfextError, degree_bound_caveat, recursion_coeff

__all__ = ["ext", "classify", "table", "recursion_coeff", "ConfextError", "degree_bound_caveat"]


def ext(alg, sub, quot, dpart=8, dlam=8, probe=True):
    """Ext^1(quot, sub) within the degree bounds, as a dict (ext_dim, basis, certificates, flags)."""
    return json.loads(_confext.ext_json(alg, sub, quot, dpart, dlam, probe))


def classify(lo, hi, sqrt=0):
    """Lower weights admitting a degree-n cocycle, for n in lo..hi."""
    return json.loads(_confext.classify_json(lo, hi, sqrt))


def table(section):
    """Recomputed dimension table of one section (2..5)."""
    return json.loads(_confext.table_json(section))
