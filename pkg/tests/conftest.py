"""Shared fixtures: the standard test families and cached heavy computations.

Saddle solves at n = 10^6 and long exact-count tables are expensive; they are
computed once per session and shared between the module tests and the
acceptance suite.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from partasym import (Binomial, PowerSum, StructureKind, dirichlet_data,
                      delta_expansion, eval_weights, exact_counts,
                      normalize_family, solve_delta)

STD_FAMILIES = {
    "ones": PowerSum(((Fraction(1), Fraction(1)),)),          # b_k = 1
    "kplus1": Binomial(1),                                    # b_k = k + 1
    "binom2": Binomial(2),                                    # b_k = C(k+2, 2)
}

ALL_KINDS = (StructureKind.PARTITION, StructureKind.SELECTION,
             StructureKind.ASSEMBLY)


class SharedCache:
    """Lazily computed weights, counts, expansions and saddle solutions."""

    def __init__(self):
        self._weights: dict = {}
        self._counts: dict = {}
        self._dexp: dict = {}
        self._saddle: dict = {}

    def family(self, name):
        return STD_FAMILIES[name]

    def weights(self, name, nmax):
        key = name
        have = self._weights.get(key)
        if have is None or len(have) < nmax + 1:
            self._weights[key] = eval_weights(normalize_family(STD_FAMILIES[name]),
                                              nmax)
        return self._weights[key]

    def counts(self, name, kind, nmax):
        key = (name, int(kind))
        have = self._counts.get(key)
        if have is None or have.nmax < nmax:
            b = self.weights(name, nmax)
            self._counts[key] = exact_counts(kind, b, nmax)
        return self._counts[key]

    def dexp(self, name, kind):
        key = (name, int(kind))
        if key not in self._dexp:
            dd = dirichlet_data(normalize_family(STD_FAMILIES[name]))
            self._dexp[key] = delta_expansion(kind, dd)
        return self._dexp[key]

    def saddle(self, name, kind, n):
        key = (name, int(kind), n)
        if key not in self._saddle:
            b = self.weights(name, max(n, 1))
            de = self.dexp(name, kind)
            hint = float(de.lead) * n**(-1.0 / (float(de.rho_r) + 1.0))
            self._saddle[key] = solve_delta(kind, b, n, delta_hint=hint)
        return self._saddle[key]


@pytest.fixture(scope="session")
def shared() -> SharedCache:
    return SharedCache()


@pytest.fixture(autouse=True)
def _restore_precision():
    from mpmath import mp
    dps = mp.dps
    yield
    mp.dps = dps
