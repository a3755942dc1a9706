"""Cartan-side series for the current (Yangian-type) half: highest-weight
series h(u) from root data, logarithmic coordinates t(u), the even kernel
G(v), the twist exponent gamma_i(v), the g-coefficient series, and the
closed-form evaluation of h_r / t_r on root data.

Two bookkeeping conventions are supported for h(u):

* ``section2``:  h(u) = 1 + hbar * sum h_r u**(-r-1); the generator h_r acts
  on the highest vector by (ratio coefficient)/hbar.
* ``section41``: h(u) = 1 + sum h_r u**(-r-1) with hbar absorbed; h_r acts
  by the ratio coefficient itself.

The ratio expansion and the t-coordinates are identical in both; only the
readout of h-eigenvalues differs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .cartan import CartanDatum, hbar_over_q_minus_qinv
from .gaussian import Coeff, rat
from .series import (Series, VarSpec, borel, divide_by_var,
                     exact_div_difference, exp, inverse, log)


@dataclass(frozen=True)
class NodeRoots:
    """Roots (a_p, b_p) of one node's numerator/denominator polynomials.

    Entries are either graded variable names (formal mode) or exact
    rationals (evaluation mode); a node uses one mode throughout.
    """

    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("need equally many a- and b-roots")
        kinds = {isinstance(x, str) for x in self.a + self.b}
        if len(kinds) > 1:
            raise ValueError("mixed formal/rational roots on one node")
        if self.rational:
            bs = [rat(x) for x in self.b]
            if len(set(bs)) != len(bs):
                raise ValueError("rational b-roots must be pairwise distinct")

    @property
    def count(self) -> int:
        return len(self.a)

    @property
    def rational(self) -> bool:
        return bool(self.a) and not isinstance(self.a[0], str)

    def to_json(self, node: int) -> dict:
        enc = lambda x: x if isinstance(x, str) else str(rat(x))
        return {"node": node, "a": [enc(x) for x in self.a],
                "b": [enc(x) for x in self.b]}

    @staticmethod
    def from_json(obj: dict) -> "NodeRoots":
        dec = lambda x: x if ("/" not in x and not x.lstrip("-").isdigit()) else Fraction(x)
        return NodeRoots(tuple(dec(x) for x in obj["a"]),
                         tuple(dec(x) for x in obj["b"]))


@dataclass(frozen=True)
class YContext:
    datum: CartanDatum
    spec: VarSpec
    roots: dict = field(default_factory=dict)     # node -> NodeRoots
    convention: str = "section41"

    def __post_init__(self):
        if self.convention not in ("section2", "section41"):
            raise ValueError("convention must be section2 or section41")

    def node_roots(self, i: int) -> NodeRoots:
        try:
            return self.roots[i]
        except KeyError:
            raise KeyError(f"no root data for node {i}") from None


def _root_series(spec: VarSpec, value) -> Series:
    if isinstance(value, str):
        return Series.var(spec, value)
    return Series.constant(spec, rat(value))


def root_series(ctx: YContext, i: int):
    nr = ctx.node_roots(i)
    return ([_root_series(ctx.spec, x) for x in nr.a],
            [_root_series(ctx.spec, x) for x in nr.b])


# -- highest-weight series -------------------------------------------------------

def h_from_roots(ctx: YContext, i: int) -> Series:
    """Expansion of prod_p (u - a_p)/(u - b_p) in powers of u**-1."""
    spec = ctx.spec
    if not spec.loop:
        raise ValueError("context spec needs a loop variable")
    uinv = Series.var(spec, spec.loop, -1)
    avals, bvals = root_series(ctx, i)
    num = Series.one(spec)
    for aa in avals:
        num = num * (Series.one(spec) - aa * uinv)
    den = Series.one(spec)
    for bb in bvals:
        den = den * (Series.one(spec) - bb * uinv)
    return num * inverse(den)


def h_coefficient(ctx: YContext, h: Series, r: int) -> Series:
    """Eigenvalue of the generator h_r read off the ratio expansion."""
    c = h.coefficient_of_loop(-r - 1)
    if ctx.convention == "section2":
        return divide_by_var(c, "hbar")
    return c


def t_from_h(h: Series) -> Series:
    """t(u) = (1/hbar) log h(u); requires constant term 1."""
    return divide_by_var(log(h), "hbar")


def h_from_t(t: Series) -> Series:
    """Inverse of t_from_h: h = exp(hbar * t(u))."""
    return exp(t.shift_var("hbar", 1))


def hbar_t_from_roots(ctx: YContext, i: int) -> Series:
    """hbar * t(u) = log of the root ratio; carries no hbar itself."""
    return log(h_from_roots(ctx, i))


def borel_t(t: Series, target: str = "v") -> Series:
    """Transform of the logarithmic generating function, normalized with one
    power of hbar: sum_r (hbar t_r) v**r / r!."""
    return borel(t.shift_var("hbar", 1), target)


def exp_difference_series(ctx: YContext, i: int, target: str = "v") -> Series:
    """Independent closed form sum_p (e**(b_p v) - e**(a_p v)) / v."""
    spec = ctx.spec
    vvar = Series.var(spec, target)
    avals, bvals = root_series(ctx, i)
    total = Series.zero(spec)
    for aa, bb in zip(avals, bvals):
        total = total + (exp(bb * vvar) - exp(aa * vvar))
    return divide_by_var(total, target)


# -- the even kernel and the twist exponent ---------------------------------------

def cartan_kernel(spec: VarSpec, vname: str = "v", sign: int = 1) -> Series:
    """G(v) = -log(2 sinh(v/2) / v), an even series with zero constant term.

    ``sign`` flips the overall sign; the flipped kernel is a mutation seam
    used by the expected-failure guards.
    """
    ratio = Series.zero(spec)
    top = spec.max_degree
    j = 0
    while 2 * j <= top:
        ratio = ratio + Series.monomial(
            spec, {vname: 2 * j}, Fraction(1, 4**j * factorial(2 * j + 1)))
        j += 1
    g = -log(ratio)
    return g if sign == 1 else -g


def gamma_series(ctx: YContext, i: int, vname: str = "v",
                 route: int = 1, kernel_sign: int = 1) -> Series:
    """Twist exponent gamma_i(v) = sum_r (hbar t_r / r!) (-d/dv)**(r+1) G(v).

    ``route=2`` computes the same object through the transformed series:
    the v**r coefficients of borel_t applied as a differential operator to
    the derivative of -G.  Both routes agree, but route 2 stores v**r next
    to its degree-(r+1) coefficient, so it is exact only on terms of root
    degree <= (T+1)//2; run it with degree headroom when comparing.
    """
    spec = ctx.spec
    G = cartan_kernel(spec, vname, kernel_sign)
    ht = hbar_t_from_roots(ctx, i)
    rmax = min(spec.loop_order - 1, spec.max_degree - 1)
    total = Series.zero(spec)
    if route == 1:
        deriv = -G.derivative(vname)            # (-d/dv)^1 G
        for r in range(rmax + 1):
            htr = ht.coefficient_of_loop(-r - 1)
            if not htr.is_zero():
                total = total + htr * deriv.scale(Fraction(1, factorial(r)))
            deriv = -deriv.derivative(vname)
        return total
    if route == 2:
        bt = borel(ht, vname)
        deriv = -G.derivative(vname)            # (-G)'
        for r in range(rmax + 1):
            cr = bt.coefficient_of(vname, r)    # hbar t_r / r!
            if not cr.is_zero():
                total = total + cr * deriv
            deriv = -deriv.derivative(vname)
        return total
    raise ValueError("route must be 1 or 2")


def g_coeff_series(ctx: YContext, i: int, vname: str = "v",
                   kernel_sign: int = 1) -> Series:
    """Generating series of the g-coefficients:
    (hbar/(q_i - q_i**-1))**(1/2) * exp(gamma_i(v)/2)."""
    pref = sqrt_prefactor(ctx.datum, i, ctx.spec)
    gam = gamma_series(ctx, i, vname, kernel_sign=kernel_sign)
    return pref * exp(gam.scale(Fraction(1, 2)))


def sqrt_prefactor(datum: CartanDatum, i: int, spec: VarSpec) -> Series:
    """(hbar/(q_i - q_i**-1))**(1/2); constant term 1 or i depending on d_i."""
    from .series import sqrt
    return sqrt(hbar_over_q_minus_qinv(datum, i, spec))


# -- closed-form evaluations -------------------------------------------------------

def _pf_sum_rational(avals, bvals, power: int, spec: VarSpec) -> Series:
    total = Coeff(0)
    n = len(avals)
    for p in range(n):
        bp = bvals[p]
        term = Coeff(bp**power) * Coeff(bp - avals[p])
        for q in range(n):
            if q == p:
                continue
            term = term * Coeff(bp - avals[q]) / Coeff(bp - bvals[q])
        total = total + term
    return Series.constant(spec, total)


def _pf_sum_formal(ctx: YContext, i: int, power: int) -> Series:
    """sum_p b_p**power (b_p - a_p) prod_{q != p} (b_p - a_q)/(b_p - b_q),
    for N <= 2 formal roots (N = 2 goes through one exact division)."""
    spec = ctx.spec
    nr = ctx.node_roots(i)
    avals, bvals = root_series(ctx, i)
    n = nr.count
    if n == 0:
        return Series.zero(spec)
    if n == 1:
        return Series.monomial(spec, {nr.b[0]: power}) * (bvals[0] - avals[0])
    if n == 2:
        def top(p, q):
            bp = Series.monomial(spec, {nr.b[p]: power})
            return bp * (bvals[p] - avals[p]) * (bvals[p] - avals[q])
        numer = top(0, 1) - top(1, 0)
        return exact_div_difference(numer, nr.b[0], nr.b[1])
    raise ValueError("formal closed forms implemented for N <= 2 only")


def dY_h(ctx: YContext, i: int, r: int) -> Series:
    """Closed-form value of h_r on the highest vector (root data of node i).

    In the section2 convention the value carries one power of hbar**-1.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    nr = ctx.node_roots(i)
    if nr.rational:
        out = _pf_sum_rational([rat(x) for x in nr.a],
                               [rat(x) for x in nr.b], r, ctx.spec)
    else:
        out = _pf_sum_formal(ctx, i, r)
    if ctx.convention == "section2":
        out = out.shift_var("hbar", -1)
    return out


def dY_t(ctx: YContext, i: int, r: int) -> Series:
    """Closed-form value of t_r: (1/((r+1) hbar)) sum_p (b_p**(r+1) - a_p**(r+1))."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    spec = ctx.spec
    nr = ctx.node_roots(i)
    total = Series.zero(spec)
    for ap, bp in zip(nr.a, nr.b):
        if isinstance(bp, str):
            total = total + Series.monomial(spec, {bp: r + 1}) \
                          - Series.monomial(spec, {ap: r + 1})
        else:
            total = total + Series.constant(spec, rat(bp)**(r + 1) - rat(ap)**(r + 1))
    return divide_by_var(total.scale(Fraction(1, r + 1)), "hbar")
