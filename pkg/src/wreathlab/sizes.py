"""Closed-form wreath-product size formulas, catalog rows, and plot data.

For a tower with m = [L^c : F], k = [K : F] and kc = [K^c : F]:

* regular route:  (m / kc)^kc * kc
* coset route:    (m / k)^k * kc

All evaluation is exact big-integer arithmetic; natural logs are taken last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisibilityViolationError


def regular_size(m: int, kc: int) -> int:
    """(m/kc)^kc * kc as an exact integer."""
    if kc < 1:
        raise DivisibilityViolationError("kc must be at least 1")
    if m % kc != 0:
        raise DivisibilityViolationError(f"{kc} does not divide {m}")
    return (m // kc) ** kc * kc


def omega_size(m: int, k: int, kc: int) -> int:
    """(m/k)^k * kc as an exact integer."""
    if k < 1 or kc < k:
        raise DivisibilityViolationError("need 1 <= k <= kc")
    if m % k != 0:
        raise DivisibilityViolationError(f"{k} does not divide {m}")
    return (m // k) ** k * kc


def _factor_str(n: int) -> str:
    if n == 1:
        return "1"
    parts = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            parts.append(f"{d}^{e}" if e > 1 else str(d))
        d += 1
    if n > 1:
        parts.append(str(n))
    return "*".join(parts)


@dataclass(frozen=True)
class SizeRow:
    """One catalog row: coefficients of the two size formulas in lowest terms."""

    k: int
    kc: int
    group_name: str
    dihedral: bool

    @property
    def regular_coeff(self) -> Fraction:
        return Fraction(1, self.kc ** (self.kc - 1))

    @property
    def omega_coeff(self) -> Fraction:
        return Fraction(self.kc, self.k**self.k)

    def regular_formula(self) -> str:
        den = self.kc ** (self.kc - 1)
        if den == 1:
            return f"m^{self.kc}"
        ds = _factor_str(den) if den >= 1000 else str(den)
        ds = f"({ds})" if "*" in ds else ds
        return f"m^{self.kc}/{ds}"

    def omega_formula(self) -> str:
        c = self.omega_coeff
        num = "" if c.numerator == 1 else str(c.numerator)
        if c.denominator == 1:
            return f"{num}m^{self.k}"
        ds = _factor_str(c.denominator) if c.denominator >= 1000 else str(c.denominator)
        ds = f"({ds})" if "*" in ds else ds
        return f"{num}m^{self.k}/{ds}"

    def regular_at(self, m: int) -> int:
        return regular_size(m, self.kc)

    def omega_at(self, m: int) -> int:
        return omega_size(m, self.k, self.kc)


_TABLE: dict[int, list[SizeRow]] = {
    2: [SizeRow(2, 2, "C2", False)],
    3: [SizeRow(3, 3, "C3", False), SizeRow(3, 6, "S3", True)],
    4: [
        SizeRow(4, 4, "C4", False),
        SizeRow(4, 4, "C2xC2", False),
        SizeRow(4, 8, "D4", True),
        SizeRow(4, 12, "A4", False),
        SizeRow(4, 24, "S4", False),
    ],
    5: [
        SizeRow(5, 5, "C5", False),
        SizeRow(5, 10, "D5", True),
        SizeRow(5, 20, "F5", False),
        SizeRow(5, 60, "A5", False),
        SizeRow(5, 120, "S5", False),
    ],
}


def table1(kf: int) -> list[SizeRow]:
    """Catalog rows (bottom-group candidates and size formulas) for [K:F] = kf."""
    if kf not in _TABLE:
        raise ValueError(f"no catalog rows for [K:F] = {kf} (supported: 2..5)")
    return list(_TABLE[kf])


def find_row(kf: int, group: str) -> SizeRow:
    for row in table1(kf):
        if row.group_name == group:
            return row
    names = ", ".join(r.group_name for r in table1(kf))
    raise ValueError(f"group {group!r} not in the kf={kf} catalog ({names})")


@dataclass(frozen=True)
class FigureRow:
    m: int
    log_regular: float
    log_omega: float
    marker: str


def figure_data(kf: int, group: str, m_max: int) -> list[FigureRow]:
    """Log-size rows for m over multiples of kc up to m_max.

    The m = 2*kc row carries the "2kc" marker (the reference line in the plots).
    """
    row = find_row(kf, group)
    out = []
    m = row.kc
    while m <= m_max:
        out.append(
            FigureRow(
                m=m,
                log_regular=math.log(row.regular_at(m)),
                log_omega=math.log(row.omega_at(m)),
                marker="2kc" if m == 2 * row.kc else "",
            )
        )
        m += row.kc
    return out


FIGURE_CSV_HEADER = "m,log_regular,log_omega,marker"


def figure_csv(rows: list[FigureRow]) -> str:
    lines = [FIGURE_CSV_HEADER]
    for r in rows:
        lines.append(f"{r.m},{r.log_regular!r},{r.log_omega!r},{r.marker}")
    return "\n".join(lines) + "\n"


def crossover_report(kf: int, group: str, m_max: int) -> dict:
    """Per-m comparison of the two sizes, plus whether the observed pattern
    matches: equality everywhere for Galois rows; above m = 3kc the regular
    size dominates; at m = 2kc equality holds exactly for dihedral bottom groups.
    """
    row = find_row(kf, group)
    comparisons = []
    matches = True
    m = row.kc
    while m <= m_max:
        reg, om = row.regular_at(m), row.omega_at(m)
        relation = "eq" if reg == om else ("gt" if reg > om else "lt")
        comparisons.append({"m": m, "regular": reg, "omega": om, "relation": relation})
        if row.k == row.kc:
            if relation != "eq":
                matches = False
        else:
            if m == 2 * row.kc and (relation == "eq") != row.dihedral:
                matches = False
            if m >= 3 * row.kc and relation != "gt":
                matches = False
        m += row.kc
    return {
        "kf": kf,
        "group": group,
        "is_galois_row": row.k == row.kc,
        "is_dihedral": row.dihedral,
        "comparisons": comparisons,
        "matches_observed_pattern": matches,
    }


def tower_size_comparison(l_deg: int, lc_deg: int, k: int, kc: int) -> dict:
    """Compare the sharp wreath size ([L:K])^k * kc against the coset-route
    size ([L^c:F]/k)^k * kc for the same tower, with the exact ratio.
    """
    sharp = omega_size(l_deg, k, kc)
    coset = omega_size(lc_deg, k, kc)
    if coset % sharp != 0:
        raise DivisibilityViolationError("sharp size does not divide the coset-route size")
    ratio = coset // sharp
    return {
        "sharp_size": sharp,
        "sharp_factored": _factor_str(sharp),
        "coset_size": coset,
        "coset_factored": _factor_str(coset),
        "ratio": ratio,
        "ratio_factored": _factor_str(ratio),
        "note": (
            f"exact ratio is {ratio} (~{ratio / 1e6:.1f} million); "
            "larger round-number claims overstate it"
        ),
    }
