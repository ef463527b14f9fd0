"""Exact evaluation of the closed-form bounds on set-pair systems and on the
number of maximal intersecting families.

Values are exact integers or fractions wherever the formula allows; only the
bounds on M(n, k), which are astronomically large, are reported as log2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .core import binomial

Number = Union[int, Fraction, float]

ASYMPTOTIC = "asymptotic reference"
ANOMALY = "implicit-hypothesis anomaly"


@dataclass(frozen=True)
class BoundReport:
    name: str
    params: dict
    value: Number
    anchor: str
    kind: str = "exact"  # exact | rational | log2
    flags: tuple[str, ...] = ()
    note: str = ""

    def to_json(self, refs: bool = True) -> dict:
        out = {"name": self.name, "params": dict(self.params), "kind": self.kind,
               "value": format_number(self.value)}
        if self.flags:
            out["flags"] = list(self.flags)
        if self.note:
            out["note"] = self.note
        if refs:
            out["anchor"] = self.anchor
        return out


def format_number(value: Number) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return "inf" if math.isinf(value) else repr(value)
    return str(value)


def _require_k_le_l(k: int, l: int, what: str) -> None:
    if k > l:
        raise ValueError(f"{what} assumes k <= l, got k={k}, l={l}")


def _require_positive(**kw: int) -> None:
    for name, v in kw.items():
        if v < 1:
            raise ValueError(f"{name} must be positive, got {v}")


def bollobas_pair_bound(k: int, l: int) -> int:
    """Maximum number of pairs in a (k,l) cross (or skew) system."""
    return binomial(k + l, l)


def tuza_n_bounds(k: int, l: int) -> tuple[Fraction, int]:
    """(strict lower, upper) bounds on n(k,l) for k <= l.

    upper = sum_{i=1}^{2k-2} C(i, floor(i/2)) + sum_{i=2k-1}^{k+l-1} C(i, l)
    """
    _require_positive(k=k, l=l)
    _require_k_le_l(k, l, "Tuza's vertex bound")
    lower = Fraction(binomial(k + l + 1, k + 1), 4)
    upper = sum(binomial(i, i // 2) for i in range(1, 2 * k - 1))
    upper += sum(binomial(i, l) for i in range(2 * k - 1, k + l))
    return lower, upper


def tuza_per_level_upper(k: int, l: int) -> int:
    """Level-by-level reading of the Tuza argument for k <= l:
    sum_{i=1}^{2k-1} C(i, floor(i/2)) + sum_{i=2k}^{k+l-1} C(i, k).

    Agrees with the summation above when k == l and stays consistent with
    exhaustive values when k < l (n(2,3) = 10 <= 12).
    """
    _require_positive(k=k, l=l)
    _require_k_le_l(k, l, "Tuza's vertex bound")
    return (sum(binomial(i, i // 2) for i in range(1, 2 * k))
            + sum(binomial(i, k) for i in range(2 * k, k + l)))


def s_of_k(k: int) -> tuple[int, Fraction]:
    """S(k) = sum_{i=1}^{2k-1} C(i, floor(i/2)) and s(k) = S(k) / C(2k, k)."""
    _require_positive(k=k)
    big_s = sum(binomial(i, i // 2) for i in range(1, 2 * k))
    return big_s, Fraction(big_s, binomial(2 * k, k))


def lemma_g_bound(k: int, l: int) -> int:
    """n(k,l) <= C(k+l, l+1) + C(k+l, k+1)."""
    _require_positive(k=k, l=l)
    return binomial(k + l, l + 1) + binomial(k + l, k + 1)


def n1_lower(k: int, l: int) -> int:
    return k + l + binomial(k + l, k + 1)


def n1_upper(k: int, l: int) -> int:
    _require_k_le_l(k, l, "the skew vertex upper bound")
    return binomial(k + l + 2, k + 1) - binomial(k + l, k) - 2


def n1_upper_all_levels(k: int, l: int) -> int:
    """Skew upper bound with the top peeling level (at most one pair) kept."""
    _require_k_le_l(k, l, "the skew vertex upper bound")
    return binomial(k + l + 2, k + 1) - binomial(k + l, k) - 1


def n1_bounds(k: int, l: int) -> tuple[int, int]:
    _require_positive(k=k, l=l)
    return n1_lower(k, l), n1_upper(k, l)


def n2_lower(k: int, l: int) -> int:
    _require_positive(k=k, l=l)
    return k + l - 1 + 3 * binomial(k + l - 1, k - 1)


def erdos_lovasz_lower(k: int) -> int:
    """2k-2 + 2 C(2k-2, k-1) <= n(k,k)."""
    return 2 * k - 2 + 2 * binomial(2 * k - 2, k - 1)


def f_bounds(k: int) -> tuple[Fraction, Fraction, Fraction]:
    """(C(2k,k)/8, 2k-2 + C(2k-2,k-1)/2, (3/2) C(2k-2,k-1))."""
    _require_positive(k=k)
    c = binomial(2 * k - 2, k - 1)
    return Fraction(binomial(2 * k, k), 8), 2 * k - 2 + Fraction(c, 2), Fraction(3 * c, 2)


def m_upper_log2(n: int, k: int, g: int) -> float:
    """log2 of 2^(2^g) * C(n, g); +inf once 2^g no longer fits a float."""
    if g < 1:
        raise ValueError("g must be at least 1")
    c = binomial(n, g)
    tail = math.log2(c) if c else -math.inf
    try:
        return float(2 ** g) + tail
    except OverflowError:
        return math.inf


def m_lower_log2(n: int, f: int) -> float:
    """log2 of C(n, f), a lower bound on M(n, k) when f = f(k)."""
    c = binomial(n, f)
    return math.log2(c) if c else -math.inf


def bdds_m_upper_exact(n: int, k: int) -> int:
    """sum_{j=1}^{C(2k,k)/2} C(C(n,k), j)."""
    _require_positive(n=n, k=k)
    top = binomial(2 * k, k) // 2
    v = binomial(n, k)
    return sum(binomial(v, j) for j in range(1, top + 1))


def bdds_m_upper_log2(n: int, k: int) -> float:
    total = bdds_m_upper_exact(n, k)
    return math.log2(total) if total else -math.inf


def mmax_bounds(k: int, l: int) -> tuple[int, int]:
    """(floor((k+l)^(k+l) / (k^k l^l)), 2 C(k+l, k))."""
    _require_positive(k=k, l=l)
    return (k + l) ** (k + l) // (k ** k * l ** l), 2 * binomial(k + l, k)


def m_theorem_window(n: int, k: int) -> tuple[float, float]:
    c = binomial(2 * k, k)
    lg = math.log2(n)
    return c * lg / 8, 1.1 * c * lg


def bound_reports(k: int, l: int | None = None, n: int | None = None) -> list[BoundReport]:
    """Every bound applicable at (k, l[, n]) as a list of reports.

    Bounds whose hypotheses fail are skipped; k = 1 values that contradict
    brute force are kept but flagged.
    """
    l = k if l is None else l
    _require_positive(k=k, l=l)
    out: list[BoundReport] = []
    p_kl = {"k": k, "l": l}
    add = out.append

    add(BoundReport("bollobas_pair_bound", p_kl, bollobas_pair_bound(k, l),
                    "Bollobas set-pair inequality: m <= C(k+l,l)"))
    if k <= l:
        lo, up = tuza_n_bounds(k, l)
        if (k, l) == (1, 1):
            note = "brute force gives n(1,1) = 2; the formula needs k >= 2"
        elif k == 1:
            note = "formula undercounts at k = 1"
        elif k < l:
            note = "C(i,l) terms undercount when k < l; exhaustive n(2,3) = 10 exceeds the (2,3) value 8"
        else:
            note = ""
        flags = (ANOMALY,) if note else ()
        add(BoundReport("tuza_n_lower", p_kl, lo, "Tuza: C(k+l+1,k+1)/4 < n(k,l)", "rational"))
        add(BoundReport("tuza_n_upper", p_kl, up, "Tuza: summation upper bound on n(k,l)",
                        flags=flags, note=note))
        if k < l:
            add(BoundReport("tuza_per_level_upper", p_kl, tuza_per_level_upper(k, l),
                            "Tuza argument summed level by level with C(i,k) terms",
                            flags=("corrected reading",)))
    add(BoundReport("two_binomial_upper", p_kl, lemma_g_bound(k, l),
                    "n(k,l) <= C(k+l,l+1) + C(k+l,k+1)"))
    lo1 = n1_lower(k, l)
    add(BoundReport("n1_lower", p_kl, lo1, "colex skew construction: k+l+C(k+l,k+1) <= n1(k,l)"))
    if k <= l:
        up1 = n1_upper(k, l)
        if lo1 > up1:
            note = f"lower {lo1} exceeds upper {up1}"
        elif (k, l) == (2, 2):
            note = "exhaustive n1(2,2) = 13 exceeds this value"
        else:
            note = ""
        add(BoundReport("n1_upper", p_kl, up1, "skew peeling: n1(k,l) <= C(k+l+2,k+1)-C(k+l,k)-2",
                        flags=(ANOMALY,) if note else (), note=note))
        add(BoundReport("n1_upper_all_levels", p_kl, n1_upper_all_levels(k, l),
                        "skew peeling with the top level kept: C(k+l+2,k+1)-C(k+l,k)-1",
                        flags=("corrected reading",)))
    lo2 = n2_lower(k, l)
    add(BoundReport("n2_lower", p_kl, lo2, "triple construction: k+l-1+3C(k+l-1,k-1) <= n2(k,l)",
                    flags=(ANOMALY,) if k == 1 else (),
                    note="the construction reaches only l+2 points at k = 1" if k == 1 else ""))
    tz, conj = mmax_bounds(k, l)
    add(BoundReport("mmax_tuza", p_kl, tz, "Tuza: m_max(k,l) <= (k+l)^(k+l)/(k^k l^l), floored"))
    add(BoundReport("mmax_conjecture", p_kl, conj, "conjectured m_max(k,l) <= 2C(k+l,k)",
                    flags=("conjecture",)))

    p_k = {"k": k}
    big_s, small_s = s_of_k(k)
    add(BoundReport("S", p_k, big_s, "S(k) = sum_{i=1}^{2k-1} C(i, floor(i/2)) >= n(k,k)"))
    add(BoundReport("s", p_k, small_s, "s(k) = S(k)/C(2k,k), tends to 1", "rational",
                    flags=(ASYMPTOTIC,)))
    if k >= 2:
        add(BoundReport("erdos_lovasz_lower", p_k, erdos_lovasz_lower(k),
                        "Erdos-Lovasz construction: 2k-2+2C(2k-2,k-1) <= n(k,k)"))
        add(BoundReport("n_kk_upper_1.1", p_k, Fraction(11, 10) * binomial(2 * k, k),
                        "n(k,k) <= 1.1 C(2k,k)", "rational"))
    eighth, flo, maj = f_bounds(k)
    add(BoundReport("f_eighth", p_k, eighth, "C(2k,k)/8 < f lower bound", "rational"))
    add(BoundReport("f_lower", p_k, flo, "2k-2 + C(2k-2,k-1)/2 <= f(k)", "rational"))
    add(BoundReport("f_majumder", p_k, maj, "Majumder: f(k) <= (1+o(1)) (3/2) C(2k-2,k-1)",
                    "rational", flags=(ASYMPTOTIC,),
                    note="not a proven bound at finite k"))

    if n is not None:
        p_nk = {"n": n, "k": k}
        add(BoundReport("bdds_m_upper_log2", p_nk, bdds_m_upper_log2(n, k),
                        "M(n,k) <= sum_{j<=C(2k,k)/2} C(C(n,k),j)", "log2"))
        # g(k) <= S(k): plug the best proven value in
        add(BoundReport("m_upper_log2", {**p_nk, "g": big_s}, m_upper_log2(n, k, big_s),
                        "M(n,k) <= 2^(2^g(k)) C(n,g(k)), with g(k) <= S(k)", "log2"))
        lo_w, up_w = m_theorem_window(n, k)
        add(BoundReport("m_window_lower_log2", p_nk, lo_w, "limsup log M / (C(2k,k) log n) >= 1/8",
                        "log2", flags=(ASYMPTOTIC,)))
        add(BoundReport("m_window_upper_log2", p_nk, up_w, "limsup log M / (C(2k,k) log n) <= 1.1",
                        "log2", flags=(ASYMPTOTIC,)))
    return out
