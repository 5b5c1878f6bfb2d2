"""Exact-rational truncated power series and the algebraic closed forms.

Everything here is exact: coefficients are ``fractions.Fraction``, binomials
are big ints, and no floating point enters except in the growth-rate root
finder, which is explicitly numeric.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import comb

from .towers import peak_attachments


@dataclass(frozen=True)
class Series:
    """Power series truncated at a fixed order, with exact coefficients."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    @staticmethod
    def zero(order: int) -> "Series":
        return Series(tuple(Fraction(0) for _ in range(order + 1)))

    @staticmethod
    def from_coeffs(values, order: int) -> "Series":
        out = [Fraction(0)] * (order + 1)
        for n, v in enumerate(values):
            if n > order:
                break
            out[n] = Fraction(v)
        return Series(tuple(out))

    @staticmethod
    def x_power(k: int, order: int) -> "Series":
        out = [Fraction(0)] * (order + 1)
        if 0 <= k <= order:
            out[k] = Fraction(1)
        return Series(tuple(out))

    def _check(self, other: "Series") -> None:
        if self.order != other.order:
            raise ValueError("series orders differ")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        return Series(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Series") -> "Series":
        self._check(other)
        return Series(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "Series":
        c = Fraction(c)
        return Series(tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "Series":
        """Multiply by x^k (k >= 0) or divide by x^-k checking divisibility."""
        n = self.order
        if k >= 0:
            return Series(tuple(Fraction(0) for _ in range(min(k, n + 1)))
                          + self.coeffs[:max(n + 1 - k, 0)])
        j = -k
        if any(self.coeffs[i] for i in range(min(j, n + 1))):
            raise ValueError(f"series is not divisible by x^{j}")
        return Series(self.coeffs[j:] + tuple(Fraction(0) for _ in range(j)))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


def series_mul(a: Series, b: Series) -> Series:
    a._check(b)
    n = a.order
    ac, bc = a.coeffs, b.coeffs
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(ac):
        if not ai:
            continue
        for j in range(n + 1 - i):
            if bc[j]:
                out[i + j] += ai * bc[j]
    return Series(tuple(out))


def series_div(a: Series, b: Series) -> Series:
    a._check(b)
    if b.coeffs[0] == 0:
        raise ZeroDivisionError("divisor has zero constant term")
    n = a.order
    bc = b.coeffs
    out: list[Fraction] = []
    for m in range(n + 1):
        s = a.coeffs[m]
        for i in range(m):
            if out[i] and bc[m - i]:
                s -= out[i] * bc[m - i]
        out.append(s / bc[0])
    return Series(tuple(out))


def sqrt_one_minus_4x(order: int) -> Series:
    """The series S with S(0) = 1 and S^2 = 1 - 4x, to the given order."""
    out = [Fraction(1)]
    for m in range(1, order + 1):
        target = Fraction(-4) if m == 1 else Fraction(0)
        s = sum(out[i] * out[m - i] for i in range(1, m))
        out.append((target - s) / 2)
    return Series(tuple(out))


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing zeros must be trimmed")

    @staticmethod
    def from_coeffs(values) -> "IntPolynomial":
        values = list(values)
        while values and values[-1] == 0:
            values.pop()
        return IntPolynomial(tuple(int(v) for v in values))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial.from_coeffs(out)

    def to_series(self, order: int) -> Series:
        return Series.from_coeffs(self.coeffs, order)


@dataclass(frozen=True)
class AlgebraicForm:
    """(p + q * sqrt(1-4x)) / r with integer polynomials and r(0) != 0."""

    p: IntPolynomial
    q: IntPolynomial
    r: IntPolynomial

    def __post_init__(self):
        if not self.r.coeffs or self.r.coeffs[0] == 0:
            raise ValueError("denominator must have nonzero constant term")

    def evaluate(self, order: int) -> Series:
        root = sqrt_one_minus_4x(order)
        num = self.p.to_series(order) + series_mul(self.q.to_series(order), root)
        return series_div(num, self.r.to_series(order))


def _load_forms() -> dict:
    text = resources.files("staircase_diagrams").joinpath(
        "data/algebraic_forms.json").read_text()
    return json.loads(text)


def algebraic_form(name: str) -> AlgebraicForm:
    data = _load_forms()[name]
    return AlgebraicForm(IntPolynomial.from_coeffs(data["p"]),
                         IntPolynomial.from_coeffs(data["q"]),
                         IntPolynomial.from_coeffs(data["r"]))


def ballot_count(n: int, k: int) -> int:
    """Number of Dyck paths from (k, 1) to (n, n): C(2n-k, n-k) * k / (2n-k)."""
    if not (1 <= k <= n):
        raise ValueError("need 1 <= k <= n")
    value = Fraction(comb(2 * n - k, n - k) * k, 2 * n - k)
    if value.denominator != 1:
        raise ArithmeticError("ballot count is not integral")
    return int(value)


def i_k_series(k: int, order: int) -> Series:
    """Increasing connected diagrams with first block of length k, by size."""
    if k < 1:
        raise ValueError("k must be positive")
    out = [Fraction(0)] * (order + 1)
    for n in range(k, order + 1):
        out[n] = Fraction(ballot_count(n, k))
    return Series(tuple(out))


def ib_k_series(k: int, order: int) -> Series:
    """Increasing broken diagrams with first block of length k.

    (1-x) I_k(x) / x  -  x^(k-1)  +  x^k, with the division done as a shift
    (I_k has no constant term).
    """
    ik = i_k_series(k, order + 1)
    one_minus_x = Series.from_coeffs([1, -1], order + 1)
    num = series_mul(one_minus_x, ik)
    shifted = Series(num.coeffs[1:])
    return (shifted - Series.x_power(k - 1, order)) + Series.x_power(k, order)


def i_series(order: int) -> Series:
    """All increasing connected diagrams: sum over k of I_k."""
    out = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        out[n] = sum(Fraction(ballot_count(n, k)) for k in range(1, n + 1))
    return Series(tuple(out))


def i_series_closed(order: int, printed: bool = False) -> Series:
    """Closed form for I(x).

    The corrected form (1 - 2x - sqrt(1-4x)) / (2x) matches the ballot sums;
    ``printed=True`` evaluates the verbatim (1 - 2x sqrt(1-4x)) / (2x) for
    the discrepancy report.
    """
    root = sqrt_one_minus_4x(order + 1)
    two_x = Series.from_coeffs([0, 2], order + 1)
    one = Series.from_coeffs([1], order + 1)
    if printed:
        num = one - series_mul(two_x, root)
    else:
        num = one - two_x - root
    if num.coeffs[0] != 0:
        raise ValueError("numerator is not divisible by x")
    return Series(num.coeffs[1:]).scale(Fraction(1, 2))


def br_series(order: int) -> Series:
    """Increasing broken diagrams: (1-x) I(x) / x - 1."""
    i = i_series(order + 1)
    num = series_mul(Series.from_coeffs([1, -1], order + 1), i)
    return Series(num.coeffs[1:]) - Series.from_coeffs([1], order)


def b_k_series(k: int, order: int) -> Series:
    """Diagrams over a path with first block length k and second block above.

    I(x) IB_k(x) / (1 - Br(x)^2).
    """
    i = i_series(order)
    ibk = ib_k_series(k, order)
    br = br_series(order)
    denom = Series.from_coeffs([1], order) - series_mul(br, br)
    return series_div(series_mul(i, ibk), denom)


# --- tower shapes and the assembled E(x) ---------------------------------


def sd_series(lengths: tuple[int, ...], order: int,
              b_cache: dict | None = None) -> Series:
    """Joins of a tower with a regular part, by main-path coverage.

    x^k + x^x1 B_(k-x1) + x^x2 B_(k-x2); a bare x^k term counts the
    tower standing alone.
    """
    k, x1, x2 = peak_attachments(tuple(lengths))
    total = Series.x_power(k, order)
    for shift in (x1, x2):
        kk = k - shift
        if b_cache is not None:
            if kk not in b_cache:
                b_cache[kk] = b_k_series(kk, order)
            bk = b_cache[kk]
        else:
            bk = b_k_series(kk, order)
        total = total + bk.shift(shift)
    return total


def _continuation_data() -> dict:
    text = resources.files("staircase_diagrams").joinpath(
        "data/continuation_table.json").read_text()
    return json.loads(text)


def load_continuation_rows() -> list[dict]:
    return _continuation_data()["rows"]


def load_d_continuation_rows() -> list[dict]:
    return _continuation_data()["d_rows"]


def tower_shapes_for_row(row: dict, k: int):
    """Concrete length tuples of a table row at peak length k.

    Mirrored shapes are included when the row is marked symmetric; the
    (a, k, b) row enumerates ordered pairs, which already covers mirrors.
    """
    family = row["family"]
    shapes: list[tuple[int, ...]] = []
    if family == "k":
        shapes.append((k,))
    elif family == "kk":
        shapes.append((k, k))
    elif family == "ak":
        shapes.extend((a, k) for a in range(1, k))
    elif family == "akb":
        shapes.extend((a, k, b) for a in range(1, k) for b in range(1, k))
    elif family == "abk":
        shapes.extend((a, b, k) for b in range(2, k) for a in range(1, b))
    elif family == "aak":
        shapes.extend((a, a, k) for a in range(1, k))
    elif family == "akk":
        shapes.extend((a, k, k) for a in range(1, k))
    elif family == "abck":
        shapes.extend((a, b, c, k) for c in range(3, k)
                      for b in range(2, c) for a in range(1, b))
    elif family == "abbk":
        shapes.extend((a, b, b, k) for b in range(2, k) for a in range(1, b))
    elif family == "aabk":
        shapes.extend((a, a, b, k) for b in range(2, k) for a in range(1, b))
    elif family == "abkc":
        shapes.extend((a, b, k, c) for b in range(2, k)
                      for a in range(1, b) for c in range(1, k))
    else:
        raise ValueError(f"unknown family {family!r}")
    if row["mirror_doubles"]:
        shapes.extend([tuple(reversed(s)) for s in shapes])
    return shapes


def all_completable_shapes(order: int) -> list[tuple[tuple[int, ...], int]]:
    """(shape, continuation count) pairs for every shape with k <= order."""
    out = []
    for row in load_continuation_rows():
        for k in range(1, order + 1):
            for shape in tower_shapes_for_row(row, k):
                out.append((shape, row["count"]))
    return out


def e_assembled(order: int) -> Series:
    """Fully supported connected diagrams over type E, assembled from the
    tower classification: x^3 * sum over towers of cont * SD.

    The shape sum is aggregated first: each tower contributes its bare x^k
    term plus two shifted B-series terms, so the whole sum collapses to one
    weight polynomial per B-series base.
    """
    return _assemble_from_rows(load_continuation_rows(), order, 3)


def row_generating_function_printed(row: dict, order: int,
                                    b_cache: dict | None = None) -> Series:
    """The verbatim second-table formula for a row (before symmetry), for
    cross-checking against the direct shape sums."""
    if b_cache is None:
        b_cache = {}

    def bk(k: int) -> Series:
        if k not in b_cache:
            b_cache[k] = b_k_series(k, order)
        return b_cache[k]

    total = Series.zero(order)
    fam = row["family"]
    for k in range(1, order + 1):
        xk = Series.x_power(k, order)
        if fam == "abck":
            part = Series.zero(order)
            for x1 in range(1, k):
                part = part + bk(k - x1).shift(x1).scale(
                    Fraction((x1 - 2) * (x1 - 1), 2))
            part = part + bk(k).scale(Fraction((k - 3) * (k - 2) * (k - 1), 6)) + xk
        elif fam in ("abbk", "aabk", "abk"):
            part = Series.zero(order)
            for x1 in range(1, k):
                part = part + bk(k - x1).shift(x1).scale(x1 - 1)
            part = part + bk(k).scale(Fraction((k - 2) * (k - 1), 2)) + xk
        elif fam == "akb":
            part = Series.zero(order)
            for x1 in range(1, k):
                part = part + bk(k - x1).shift(x1).scale(2 * (k - 1))
            part = part + xk.scale((k - 1) ** 2)
        elif fam in ("aak", "akk", "ak"):
            part = Series.zero(order)
            for x1 in range(1, k):
                part = part + bk(k - x1).shift(x1)
            part = part + bk(k).scale(k - 1) + xk.scale(k - 1)
        elif fam == "abkc":
            part = Series.zero(order)
            for x1 in range(1, k):
                part = part + bk(k - x1).shift(x1).scale(
                    Fraction((k - 2) * (k - 1), 2) + (k - 1) * (x1 - 1))
            part = part + xk.scale(Fraction((k - 2) * (k - 1) ** 2, 2))
        elif fam in ("kk", "k"):
            part = bk(k).scale(2) + xk
        else:
            raise ValueError(fam)
        total = total + part
    return total


def row_shape_sum(row: dict, order: int, b_cache: dict | None = None) -> Series:
    """Direct sum of SD over the row's shapes (before symmetry doubling)."""
    if b_cache is None:
        b_cache = {}
    total = Series.zero(order)
    for k in range(1, order + 1):
        shapes = tower_shapes_for_row(dict(row, mirror_doubles=False), k)
        for shape in shapes:
            total = total + sd_series(shape, order, b_cache)
    return total


def _assemble_from_rows(rows: list[dict], order: int, minor_count: int) -> Series:
    """Common core of the star assemblies: x^minors * sum cont * SD."""
    inner = max(order - minor_count, 0)
    bare = [0] * (order + 1)
    weights: dict[int, list[int]] = {}
    for row in rows:
        cont = row["count"]
        if cont == 0:
            continue
        for k in range(1, inner + 1):
            for shape in tower_shapes_for_row(row, k):
                kk, x1, x2 = peak_attachments(shape)
                bare[kk] += cont
                for shift in (x1, x2):
                    w = weights.setdefault(kk - shift, [0] * (order + 1))
                    w[shift] += cont
    total = Series.from_coeffs(bare, order)
    for base, w in sorted(weights.items()):
        total = total + series_mul(b_k_series(base, order),
                                   Series.from_coeffs(w, order))
    return total.shift(minor_count)


def d_full_assembled(order: int) -> Series:
    """Fully supported diagrams over the two-leaf stars Γ(m,1,1), assembled
    from the same tower classification with the (1,1) minor continuation
    counts.  Includes the degenerate path value at x^3."""
    return _assemble_from_rows(load_d_continuation_rows(), order, 2)


def path_full_assembled(order: int) -> Series:
    """Fully supported diagrams over a path: a block of length k at the
    near end continues above or below, or stands alone."""
    total = Series.zero(order)
    for k in range(1, order + 1):
        total = total + Series.x_power(k, order) + b_k_series(k, order).scale(2)
    return total


def path_all_assembled(order: int) -> Series:
    """All diagrams over a path (empty included, constant term 1): covered
    stretches separated by gaps of uncovered vertices."""
    one = Series.from_coeffs([1], order)
    one_minus_x = Series.from_coeffs([1, -1], order)
    a = path_full_assembled(order)
    denom = series_mul(one_minus_x,
                       one_minus_x - series_mul(Series.x_power(1, order), a))
    return series_div(one, one_minus_x) + series_div(a, denom)


def e_closed(order: int, corrected: bool = False) -> Series:
    name = "e_connected_corrected" if corrected else "e_connected"
    return algebraic_form(name).evaluate(order)


def e_disc_closed(order: int, corrected: bool = False) -> Series:
    name = "e_disconnected_corrected" if corrected else "e_disconnected"
    return algebraic_form(name).evaluate(order)


def e_disc_extended(order: int) -> Series:
    """The disconnected series assembled entirely from in-repo formulas,
    valid to any order: path and D-star inputs come from the tower
    assemblies rather than enumeration."""
    return e_disc_assembled(order,
                            path_all_assembled(order),
                            path_full_assembled(order),
                            d_full_assembled(order),
                            e_assembled(order))


def e_disc_assembled(order: int, path_all: Series, path_full: Series,
                     d_full: Series, e_conn: Series) -> Series:
    """Total diagrams over type E from the four-vertex case split.

    ``path_all``: all diagrams over a path by size, with constant term 1
    for the empty path.  ``path_full``: fully supported path diagrams
    (constant term 0).  ``d_full``: fully supported diagrams over the
    3-branch stars Γ(m,1,1) including the degenerate Γ(0,1,1)=path(3)
    term at x^3.  ``e_conn``: fully supported diagrams over Γ(m,2,1)
    including the degenerate m=0,1 values at x^4, x^5.

    The split: either the branch vertex is uncovered (both minor branches
    and the main branch free: 12 x^4 T) or the centre component covers a
    main prefix classified by minor coverage, followed by a gap and an
    arbitrary remainder (factor 1 + x T).
    """
    for s in (path_all, path_full, d_full, e_conn):
        if s.order != order:
            raise ValueError("input series must share the target order")
    t = path_all
    a = path_full
    x = Series.x_power(1, order)
    one = Series.from_coeffs([1], order)
    three_x2 = Series.from_coeffs([0, 0, 3], order)
    inner = (a.scale(2)
             + (a - x).shift(-1).scale(3)
             + (a - x - three_x2).shift(-2)
             + d_full.shift(-2)
             + e_conn.shift(-3))
    tail = one + series_mul(x, t)
    return (series_mul(t, Series.x_power(4, order)).scale(12)
            + series_mul(Series.x_power(3, order), series_mul(tail, inner)))


@dataclass(frozen=True)
class GrowthEstimate:
    ratios: tuple[Fraction, ...]
    first_n: int
    alpha: float

    @property
    def reference_ratio(self) -> float:
        return 1.0 / self.alpha


def growth_root_alpha() -> float:
    """Real root of 4x^3 - 8x^2 + 6x - 1 near 0.228."""
    def f(x: float) -> float:
        return ((4 * x - 8) * x + 6) * x - 1
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def growth_ratios(s: Series, from_n: int) -> GrowthEstimate:
    if from_n < 0 or from_n + 1 > s.order:
        raise ValueError("ratio range outside series order")
    ratios = []
    for n in range(from_n, s.order):
        if s[n] == 0:
            raise ValueError(f"zero coefficient at n={n}")
        ratios.append(s[n + 1] / s[n])
    return GrowthEstimate(tuple(ratios), from_n, growth_root_alpha())


def series_to_csv(s: Series) -> str:
    lines = ["n,numerator,denominator"]
    for n, c in enumerate(s.coeffs):
        lines.append(f"{n},{c.numerator},{c.denominator}")
    return "\n".join(lines) + "\n"
