"""Arithmetic exclusion of BH(n, q) parameters.

If some H in BH(n, q) has an eigenvector in the q-th roots of unity with
eigenvalue lam in Z[zeta_q], then lam is a sum of n q-th roots of unity and
|lam|^2 = n.  Writing y_r for how often zeta^r occurs, (y_0, ..., y_{q-1}) is a
composition of n into q parts, and the parameters are excluded when no
composition reaches squared modulus exactly n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isclose
from typing import Iterator

from .cyclotomic import CycElt, embed_complex
from .exceptions import BudgetExceeded

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class Composition:
    n: int
    q: int
    y: tuple

    def element(self) -> CycElt:
        """sum_r y_r zeta^r."""
        return CycElt(self.q, self.y)


def composition_count(n: int, q: int) -> int:
    return comb(n + q - 1, q - 1)


def _check_budget(n: int, q: int, budget: int) -> None:
    count = composition_count(n, q)
    if count > budget:
        raise BudgetExceeded(f"{count} compositions of {n} into {q} parts exceed budget {budget}")


def _compositions(n: int, q: int) -> Iterator[tuple]:
    if q == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, q - 1):
            yield (first,) + rest


def compositions_iter(n: int, q: int, budget: int = DEFAULT_BUDGET) -> Iterator[Composition]:
    """Compositions of n into q parts, y_0 = n first (descending lexicographic)."""
    if n < 0 or q < 1:
        raise ValueError("need n >= 0 and q >= 1")
    _check_budget(n, q, budget)
    for y in _compositions(n, q):
        yield Composition(n, q, y)


@dataclass(frozen=True)
class NormValue:
    value: float | int
    exact: bool


def norm_values(n: int, q: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Map canonical |lam|^2 -> CycElt over all compositions, deduplicated exactly."""
    seen = {}
    for comp in compositions_iter(n, q, budget):
        nrm = comp.element().norm_sq()
        seen.setdefault(nrm.canonical(), nrm)
    return seen


def admissible_norms(n: int, q: int, budget: int = DEFAULT_BUDGET) -> list[NormValue]:
    """Distinct values of |sum_r y_r zeta^r|^2, ascending.

    Rational values are reported as exact integers; the rest (possible only
    for q outside {1, 2, 3, 4, 6}) as doubles with ``exact=False``.
    """
    out = []
    for nrm in norm_values(n, q, budget).values():
        m = nrm.as_integer()
        if m is not None:
            out.append(NormValue(m, True))
        else:
            out.append(NormValue(embed_complex(nrm).real, False))
    out.sort(key=lambda v: v.value)
    # distinct irrational elements may still embed to the same real number
    merged = []
    for v in out:
        if merged and not v.exact and not merged[-1].exact and isclose(v.value, merged[-1].value, abs_tol=1e-9):
            continue
        merged.append(v)
    return merged


def is_excluded(n: int, q: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True when no composition gives |lam|^2 - n = 0 in Z[zeta_q]."""
    for comp in compositions_iter(n, q, budget):
        if (comp.element().norm_sq() - n).is_zero():
            return False
    return True


@dataclass
class ExclusionRow:
    n: int
    q: int
    count: int
    values: list
    excluded: bool

    def text(self) -> str:
        vals = ";".join(_fmt(v) for v in self.values)
        verdict = "EXCLUDED" if self.excluded else "NOT EXCLUDED"
        return f"{self.n} {self.q} {self.count} {vals} {verdict}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "compositions": self.count,
            "values": [{"value": v.value, "exact": v.exact} for v in self.values],
            "excluded": self.excluded,
        }


def _fmt(v: NormValue) -> str:
    return str(v.value) if v.exact else f"{v.value:.6f}"


def exclusion_row(n: int, q: int, budget: int = DEFAULT_BUDGET) -> ExclusionRow:
    values = admissible_norms(n, q, budget)
    return ExclusionRow(n, q, composition_count(n, q), values, is_excluded(n, q, budget))
