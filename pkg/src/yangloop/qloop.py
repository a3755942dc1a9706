"""Cartan-side series for the loop (quantum) half: the psi/phi generating
functions built from H-generators, their expansions from root data, and the
closed-form evaluation maps on those roots.

Roots here must be invertible.  In rational mode they are nonzero exact
rationals; in formal mode a root is the exponential exp(x) of a named
graded variable x, which is the representation in which the two halves of
the theory meet (capital roots are exponentials of lowercase ones).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import CartanDatum, q_minus_qinv
from .gaussian import rat
from .series import Series, VarSpec, exact_div_difference, exp, inverse


@dataclass(frozen=True)
class NodeRootsU:
    """Roots (A_p, B_p) of one node, all nonzero.

    Entries are variable names (root = exp of that variable) or nonzero
    rationals; one mode per node.
    """

    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("need equally many A- and B-roots")
        kinds = {isinstance(x, str) for x in self.a + self.b}
        if len(kinds) > 1:
            raise ValueError("mixed formal/rational roots on one node")
        if self.rational:
            vals = [rat(x) for x in self.a + self.b]
            if any(v == 0 for v in vals):
                raise ValueError("loop-side roots must be nonzero")
            bs = [rat(x) for x in self.b]
            if len(set(bs)) != len(bs):
                raise ValueError("rational B-roots must be pairwise distinct")

    @property
    def count(self) -> int:
        return len(self.a)

    @property
    def rational(self) -> bool:
        return bool(self.a) and not isinstance(self.a[0], str)

    def to_json(self, node: int) -> dict:
        enc = lambda x: x if isinstance(x, str) else str(rat(x))
        return {"node": node, "qloop": True,
                "a": [enc(x) for x in self.a], "b": [enc(x) for x in self.b]}

    @staticmethod
    def from_json(obj: dict) -> "NodeRootsU":
        dec = lambda x: x if ("/" not in x and not x.lstrip("-").isdigit()) else Fraction(x)
        return NodeRootsU(tuple(dec(x) for x in obj["a"]),
                          tuple(dec(x) for x in obj["b"]))


def root_series_u(spec: VarSpec, nr: NodeRootsU):
    """Roots as invertible series (exp of a variable, or a constant)."""
    def mk(x):
        if isinstance(x, str):
            return exp(Series.var(spec, x))
        return Series.constant(spec, rat(x))
    return [mk(x) for x in nr.a], [mk(x) for x in nr.b]


def _root_power(spec: VarSpec, entry, k: int) -> Series:
    """entry**k for integer k of either sign."""
    if isinstance(entry, str):
        return exp(Series.var(spec, entry, coeff=Fraction(k)))
    return Series.constant(spec, rat(entry)**k)


# -- expansions from roots --------------------------------------------------------

def psi_from_roots(spec: VarSpec, nr: NodeRootsU) -> Series:
    """prod_p (z - A_p)/(z - B_p) expanded at z = infinity (powers of z**-1)."""
    if not spec.loop:
        raise ValueError("spec needs a loop variable")
    zinv = Series.var(spec, spec.loop, -1)
    avals, bvals = root_series_u(spec, nr)
    num = Series.one(spec)
    for A in avals:
        num = num * (Series.one(spec) - A * zinv)
    den = Series.one(spec)
    for B in bvals:
        den = den * (Series.one(spec) - B * zinv)
    return num * inverse(den)


def phi_from_roots(spec: VarSpec, nr: NodeRootsU) -> Series:
    """The same rational function expanded around z = 0 (powers of z);
    requires the nonzero roots."""
    if not spec.loop:
        raise ValueError("spec needs a loop variable")
    z = Series.var(spec, spec.loop, 1)
    avals, bvals = root_series_u(spec, nr)
    out = Series.one(spec)
    for A, B in zip(avals, bvals):
        out = out * A * inverse(B)
    num = Series.one(spec)
    for A in avals:
        num = num * (Series.one(spec) - z * inverse(A))
    den = Series.one(spec)
    for B in bvals:
        den = den * (Series.one(spec) - z * inverse(B))
    return out * num * inverse(den)


# -- closed forms ------------------------------------------------------------------

def dU_psi(spec: VarSpec, nr: NodeRootsU, r: int) -> Series:
    """sum_p B_p**r (B_p - A_p) prod_{p' != p} (B_p - A_p')/(B_p - B_p').

    Pairs with the z**-(r+1) coefficient of ``psi_from_roots`` (the printed
    index is shifted by one against the generating-function labels).

    Formal two-root mode divides by (B_1 - B_2) exactly, which costs one
    degree of headroom: the result is exact on total degree <= T - 1.
    """
    n = nr.count
    if n == 0:
        return Series.zero(spec)
    if nr.rational:
        from .gaussian import Coeff
        total = Coeff(0)
        A = [rat(x) for x in nr.a]
        B = [rat(x) for x in nr.b]
        for p in range(n):
            term = Coeff(B[p]**r) * Coeff(B[p] - A[p])
            for q in range(n):
                if q != p:
                    term = term * Coeff(B[p] - A[q]) / Coeff(B[p] - B[q])
            total = total + term
        return Series.constant(spec, total)
    avals, bvals = root_series_u(spec, nr)
    if n == 1:
        return _root_power(spec, nr.b[0], r) * (bvals[0] - avals[0])
    if n == 2:
        def top(p, q):
            return _root_power(spec, nr.b[p], r) * (bvals[p] - avals[p]) \
                   * (bvals[p] - avals[q])
        numer = top(0, 1) - top(1, 0)
        quot = exact_div_difference(numer, nr.b[0], nr.b[1])
        unit = exact_div_difference(bvals[0] - bvals[1], nr.b[0], nr.b[1])
        return quot * inverse(unit)
    raise ValueError("formal closed forms implemented for N <= 2 only")


def dU_phi(spec: VarSpec, nr: NodeRootsU, r: int) -> Series:
    """sum_p B_p**-r (A_p - B_p) prod_{p' != p} (B_p - A_p')/(B_p - B_p'),
    i.e. -dU_psi(-r).  Pairs with the z**(r-1) coefficient of the expansion
    around zero."""
    return -dU_psi(spec, nr, -r)


def dU_H(spec: VarSpec, nr: NodeRootsU, k: int) -> Series:
    """Value of (q - q**-1) H_k on the roots: (1/k) sum_p (B_p**k - A_p**k),
    valid for every nonzero integer k (negative k reads off the phi side)."""
    if k == 0:
        raise ValueError("k must be nonzero")
    total = Series.zero(spec)
    for ap, bp in zip(nr.a, nr.b):
        total = total + _root_power(spec, bp, k) - _root_power(spec, ap, k)
    return total.scale(Fraction(1, k))


# -- the generating functions from H-data ------------------------------------------

def psi_phi_from_H(datum: CartanDatum, i: int, spec: VarSpec, H: dict):
    """Build the two generating functions from given H-generator values.

    ``H`` maps integer levels to Series; level 0 and positive levels feed the
    z**-1 expansion, level 0 and negative levels the z expansion.  Returns
    (psi, phi); by construction psi has no positive and phi no negative
    powers of z, and psi_0 * phi_0 = 1.
    """
    if not spec.loop:
        raise ValueError("spec needs a loop variable")
    d_i = datum.d(i)
    qq = q_minus_qinv(datum, i, spec)
    H0 = H.get(0, Series.zero(spec))
    half = H0.scale(Fraction(d_i, 2)).shift_var("hbar", 1)
    psi = exp(half)
    arg = Series.zero(spec)
    for s, val in H.items():
        if s > 0:
            arg = arg + qq * val * Series.var(spec, spec.loop, -s)
    psi = psi * exp(arg)
    phi = exp(-half)
    arg = Series.zero(spec)
    for s, val in H.items():
        if s < 0:
            arg = arg - qq * val * Series.var(spec, spec.loop, -s)
    phi = phi * exp(arg)
    return psi, phi
