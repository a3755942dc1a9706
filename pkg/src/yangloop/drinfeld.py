"""Deciding finite-dimensionality of highest-weight data and reconstructing
the classifying monic polynomials, by exact Hankel / linear algebra.

Polynomials are lists of Fractions in ascending order of the exponent, and
are monic.  Highest-weight series enter as their expansion coefficients:

* current side:   1 + hbar * sum_k d_k u**(-k-1)       (additive shift)
* loop side:      sum_k delta_k z**(-k), delta_0 = kappa * theta**n
                  (multiplicative shift theta = q**(d_i a_ii), solved
                  scalar kappa)

The reconstruction ascends through candidate degrees, solves the exact
linear system, and certifies minimality with the Hankel rank of the
coefficient sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .cartan import CartanDatum
from .gaussian import rat
from .series import Series, VarSpec, inverse


# -- exact dense linear algebra over Q -------------------------------------------

def matrix_rank(rows) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        col += 1
        rank += 1
    return rank


def solve_exact(rows, rhs):
    """Solve rows * x = rhs exactly; None when inconsistent, free vars -> 0."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(m)):
        if m[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = m[i][ncols]
    return x


def hankel_rank(coeffs, size: int) -> int:
    """Rank of the size x size Hankel matrix (c_{i+j})."""
    if 2 * size - 1 > len(coeffs):
        raise ValueError("not enough coefficients for that Hankel size")
    return matrix_rank([[coeffs[i + j] for j in range(size)] for i in range(size)])


# -- forward expansions ------------------------------------------------------------

def _lower_series(poly, spec: VarSpec) -> Series:
    """P(u)/u**deg as a series in u**-1 (monic P)."""
    n = len(poly) - 1
    return Series.from_terms(
        spec, [((j - n,), c) for j, c in enumerate(poly) if c])


def ratio_series_neg(num, den, nterms: int):
    """Coefficients c_k of num/den = 1 + sum c_k u**(-k-1), both monic of
    equal degree, expanded at infinity."""
    if len(num) != len(den) or num[-1] != 1 or den[-1] != 1:
        raise ValueError("need monic polynomials of equal degree")
    spec = VarSpec((), 0, loop="u", loop_order=nterms)
    s = _lower_series(num, spec) * inverse(_lower_series(den, spec))
    return [s.coefficient_of_loop(-k - 1).as_constant().re for k in range(nterms)]


def ratio_series_pos(num, den, nterms: int):
    """Coefficients of num/den expanded around zero, starting with z**0;
    requires nonzero constant terms."""
    if den[0] == 0 or num[0] == 0:
        raise ValueError("expansion around zero needs nonzero free terms")
    spec = VarSpec((), 0, loop="u", loop_order=nterms)
    up = Series.from_terms(spec, [((j,), c) for j, c in enumerate(num) if c])
    dn = Series.from_terms(spec, [((j,), c) for j, c in enumerate(den) if c])
    s = up * inverse(dn)
    return [s.coefficient_of_loop(k).as_constant().re for k in range(nterms)]


def poly_shift_arg(poly, s: Fraction):
    """Coefficients of P(u + s)."""
    n = len(poly) - 1
    out = [Fraction(0)] * (n + 1)
    for j, c in enumerate(poly):
        if not c:
            continue
        for t in range(j + 1):
            out[t] += c * comb(j, t) * s ** (j - t)
    return out


def poly_scale_arg(poly, theta: Fraction):
    """Coefficients of P(theta * z)."""
    return [c * theta**j for j, c in enumerate(poly)]


def expand_shifted(poly, shift: Fraction, nterms: int):
    """c_k with P(u+shift)/P(u) = 1 + sum c_k u**(-k-1)."""
    return ratio_series_neg(poly_shift_arg(poly, shift), poly, nterms)


def expand_scaled(poly, theta: Fraction, kappa: Fraction, nterms: int):
    """delta_k with kappa * P(theta z)/P(z) = sum delta_k z**(-k) at infinity."""
    n = len(poly) - 1
    num = poly_scale_arg(poly, theta)
    lead = num[-1]          # theta**n
    c = ratio_series_neg([x / lead for x in num], poly, nterms - 1)
    out = [kappa * lead] + [kappa * lead * x for x in c]
    return out


def expand_scaled_pos(poly, theta: Fraction, kappa: Fraction, nterms: int):
    """The same function expanded around zero (nonzero free term needed)."""
    vals = ratio_series_pos(poly_scale_arg(poly, theta), poly, nterms)
    return [kappa * x for x in vals]


# -- reconstructions ----------------------------------------------------------------

def reconstruct_ratio(coeffs, max_deg: int):
    """Minimal monic P, Q of equal degree <= max_deg with
    P/Q = 1 + sum coeffs[k] u**(-k-1); None if no degree works.

    Needs at least 2*max_deg + 1 coefficients.  Returns (P, Q, n).
    """
    coeffs = [rat(c) for c in coeffs]
    if len(coeffs) < 2 * max_deg + 1:
        raise ValueError("need at least 2*max_deg + 1 coefficients")
    for n in range(max_deg + 1):
        nrows = len(coeffs) - n
        rows = [[coeffs[j + m - 1] for j in range(n)] for m in range(1, nrows + 1)]
        rhs = [-coeffs[n + m - 1] for m in range(1, nrows + 1)]
        q = solve_exact(rows, rhs)
        if q is None:
            continue
        Q = q + [Fraction(1)]
        P = [Q[t] + sum(Q[j] * coeffs[j - t - 1] for j in range(t + 1, n + 1))
             for t in range(n)] + [Fraction(1)]
        if ratio_series_neg(P, Q, len(coeffs)) == coeffs:
            return P, Q, n
    return None


def reconstruct_shifted(coeffs, shift: Fraction, max_deg: int):
    """Minimal monic P with P(u+shift)/P(u) = 1 + sum coeffs[k] u**(-k-1);
    None if no degree <= max_deg works."""
    coeffs = [rat(c) for c in coeffs]
    shift = rat(shift)
    if shift == 0:
        raise ValueError("shift must be nonzero")
    if len(coeffs) < 2 * max_deg + 1:
        raise ValueError("need at least 2*max_deg + 1 coefficients")
    for n in range(max_deg + 1):
        rows, rhs = [], []
        # polynomial part: coefficient of u**t of P(u+s) - S(u) P(u), t < n
        for t in range(n):
            row = [Fraction(0)] * n
            b = Fraction(0)
            for j in range(n + 1):
                co = comb(j, t) * shift ** (j - t) if j >= t else Fraction(0)
                if j == t:
                    co -= 1
                if j > t:
                    co -= coeffs[j - t - 1]
                if j < n:
                    row[j] = co
                else:
                    b -= co
            rows.append(row)
            rhs.append(b)
        # tail: coefficient of u**-m must vanish
        for m in range(1, len(coeffs) - n + 1):
            row = [coeffs[j + m - 1] for j in range(n)]
            rows.append(row)
            rhs.append(-coeffs[n + m - 1])
        p = solve_exact(rows, rhs)
        if p is None:
            continue
        P = p + [Fraction(1)]
        if expand_shifted(P, shift, len(coeffs)) == coeffs:
            return P, n
    return None


def reconstruct_scaled(deltas, theta: Fraction, max_deg: int):
    """Minimal monic P (nonzero free term) and scalar kappa with
    kappa * P(theta z)/P(z) = sum deltas[k] z**(-k); None if impossible."""
    deltas = [rat(c) for c in deltas]
    theta = rat(theta)
    if theta in (0, 1, -1):
        raise ValueError("scale must differ from 0 and +/-1")
    if len(deltas) < 2 * max_deg + 2:
        raise ValueError("need at least 2*max_deg + 2 coefficients")
    if deltas[0] == 0:
        return None
    for n in range(max_deg + 1):
        kappa = deltas[0] / theta**n
        # kappa * P(theta z) - S(z) P(z) = 0; S = sum deltas[k] z^-k
        rows, rhs = [], []
        for t in range(n):          # coefficient of z**t, t < n
            row = [Fraction(0)] * n
            b = Fraction(0)
            for j in range(n + 1):
                co = Fraction(0)
                if j == t:
                    co += kappa * theta**t - deltas[0]
                elif j > t:
                    co -= deltas[j - t]
                if j < n:
                    row[j] = co
                else:
                    b -= co
            rows.append(row)
            rhs.append(b)
        for m in range(1, len(deltas) - n):
            row = [deltas[j + m] for j in range(n)]
            rows.append(row)
            rhs.append(-deltas[n + m])
        p = solve_exact(rows, rhs)
        if p is None:
            continue
        P = p + [Fraction(1)]
        if P[0] == 0:
            continue
        if expand_scaled(P, theta, kappa, len(deltas)) == deltas:
            return P, kappa, n
    return None


# -- highest-weight classification ---------------------------------------------------

@dataclass(frozen=True)
class HighestWeight:
    """Highest-weight data, one coefficient list per node.

    side "yangian": node i carries the list d_{i,k} of Theorem-style
    coefficients (the series is 1 + hbar * sum d_k u**(-k-1)), and ``scalar``
    is the rational hbar value.  side "qloop": node i carries the list
    delta+_{i,k} (starting at k = 0) plus optionally the around-zero list
    under ``minus``; ``scalar`` is the rational q value.
    """

    side: str
    nodes: dict
    scalar: Fraction = Fraction(1)
    minus: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.side not in ("yangian", "qloop"):
            raise ValueError("side must be 'yangian' or 'qloop'")

    def to_json(self) -> dict:
        out = {"side": self.side, "hbar": str(self.scalar),
               "nodes": [{"i": i, "coeffs": [str(c) for c in cs]}
                         for i, cs in sorted(self.nodes.items())]}
        for entry in out["nodes"]:
            if entry["i"] in self.minus:
                entry["coeffs_minus"] = [str(c) for c in self.minus[entry["i"]]]
        return out

    @staticmethod
    def from_json(obj: dict) -> "HighestWeight":
        nodes, minus = {}, {}
        for entry in obj["nodes"]:
            i = int(entry["i"])
            nodes[i] = [Fraction(c) for c in entry["coeffs"]]
            if "coeffs_minus" in entry:
                minus[i] = [Fraction(c) for c in entry["coeffs_minus"]]
        return HighestWeight(obj["side"], nodes, Fraction(obj.get("hbar", "1")), minus)


@dataclass
class DrinfeldResult:
    finite_dimensional: bool
    polys: dict                      # node -> {"P": [...], "Q": [...]?, "kappa": ...?}
    certificates: dict               # node -> {"hankel_rank": int, "max_deg": int}

    def to_json(self) -> dict:
        out = {"finite_dimensional": self.finite_dimensional, "polys": []}
        for i, rec in sorted(self.polys.items()):
            entry = {"i": i, "P": [str(c) for c in rec["P"]]}
            if "Q" in rec:
                entry["Q"] = [str(c) for c in rec["Q"]]
            if "kappa" in rec:
                entry["kappa"] = str(rec["kappa"])
            out["polys"].append(entry)
        out["certificates"] = {
            str(i): cert for i, cert in sorted(self.certificates.items())}
        return out


def classify(hw: HighestWeight, datum: CartanDatum, max_deg: int) -> DrinfeldResult:
    """Apply the per-node reconstructions; finite-dimensional iff they all
    succeed (and, loop side, the two one-sided expansions agree)."""
    polys, certs = {}, {}
    ok = True
    for i in range(1, datum.size + 1):
        coeffs = [rat(c) for c in hw.nodes.get(i, [])]
        if hw.side == "yangian":
            series = [hw.scalar * c for c in coeffs]   # u**(-k-1) coefficients
            need = 2 * max_deg + 1
            if len(series) < need:
                raise ValueError(f"node {i}: need {need} coefficients")
            if i == datum.odd_node:
                got = reconstruct_ratio(series, max_deg)
                if got is None:
                    ok = False
                    certs[i] = {"hankel_rank": hankel_rank(series, max_deg + 1),
                                "max_deg": max_deg}
                else:
                    P, Q, n = got
                    polys[i] = {"P": P, "Q": Q}
                    certs[i] = {"hankel_rank": n, "max_deg": max_deg}
            else:
                shift = Fraction(datum.d(i) * datum.a_entry(i, i), 2) * hw.scalar
                got = reconstruct_shifted(series, shift, max_deg)
                if got is None:
                    ok = False
                    certs[i] = {"hankel_rank": hankel_rank(series, max_deg + 1),
                                "max_deg": max_deg}
                else:
                    P, n = got
                    polys[i] = {"P": P}
                    certs[i] = {"hankel_rank": n, "max_deg": max_deg}
        else:
            deltas = coeffs
            need = 2 * max_deg + 2
            if len(deltas) < need:
                raise ValueError(f"node {i}: need {need} coefficients")
            if i == datum.odd_node:
                if deltas[0] != 1:
                    ok = False
                    certs[i] = {"reason": "leading coefficient must be 1"}
                    continue
                got = reconstruct_ratio(deltas[1:], max_deg)
                if got is None:
                    ok = False
                    certs[i] = {"hankel_rank": hankel_rank(deltas[1:], max_deg + 1),
                                "max_deg": max_deg}
                    continue
                P, Q, n = got
                if P[0] == 0 or Q[0] == 0:
                    ok = False
                    certs[i] = {"reason": "zero free term"}
                    continue
                polys[i] = {"P": P, "Q": Q}
                certs[i] = {"hankel_rank": n, "max_deg": max_deg}
                if i in hw.minus:
                    got_minus = ratio_series_pos(P, Q, len(hw.minus[i]))
                    if got_minus != [rat(c) for c in hw.minus[i]]:
                        ok = False
                        certs[i]["reason"] = "plus/minus expansions disagree"
            else:
                theta = hw.scalar ** (datum.d(i) * datum.a_entry(i, i))
                got = reconstruct_scaled(deltas, theta, max_deg)
                if got is None:
                    ok = False
                    certs[i] = {"hankel_rank": hankel_rank(deltas[1:], max_deg + 1),
                                "max_deg": max_deg}
                    continue
                P, kappa, n = got
                polys[i] = {"P": P, "kappa": kappa}
                certs[i] = {"hankel_rank": n, "max_deg": max_deg}
                if i in hw.minus:
                    got_minus = expand_scaled_pos(P, theta, kappa, len(hw.minus[i]))
                    if got_minus != [rat(c) for c in hw.minus[i]]:
                        ok = False
                        certs[i]["reason"] = "plus/minus expansions disagree"
    return DrinfeldResult(ok, polys, certs)
