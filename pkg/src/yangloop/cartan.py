"""Root datum of the basic superalgebra A(m, n): Cartan matrix, symmetrizers,
parity, and the q-scalars attached to each node.

Index convention is 1-based: I = {1, ..., m+n+1}, with the single odd node
at position m+1.  The symmetrized matrix B is taken as ground truth
(B[i][i] = 2 for i <= m, 0 at the odd node, -2 beyond; adjacent entries -1
up to the odd node and +1 from it on) and the non-symmetric matrix is
recovered as A = diag(d)^(-1) * B, which gives every even node diagonal
entry 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import Series, VarSpec, divide_by_var, exp, inverse


@dataclass(frozen=True)
class CartanDatum:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("m, n must be nonnegative")

    @property
    def size(self) -> int:
        return self.m + self.n + 1

    @property
    def odd_node(self) -> int:
        return self.m + 1

    def _check(self, i: int):
        if not 1 <= i <= self.size:
            raise IndexError(f"node {i} outside 1..{self.size}")

    def d(self, i: int) -> int:
        self._check(i)
        return 1 if i <= self.m + 1 else -1

    def parity(self, i: int) -> int:
        self._check(i)
        return 1 if i == self.m + 1 else 0

    def b_entry(self, i: int, j: int) -> int:
        """Symmetrized Cartan matrix entry."""
        self._check(i)
        self._check(j)
        if i == j:
            if i <= self.m:
                return 2
            if i == self.m + 1:
                return 0
            return -2
        if abs(i - j) != 1:
            return 0
        k = min(i, j)
        return -1 if k <= self.m else 1

    def a_entry(self, i: int, j: int) -> int:
        """Non-symmetric Cartan matrix entry, A = diag(d)^(-1) B."""
        return self.b_entry(i, j) // self.d(i)

    def b_matrix(self) -> tuple:
        s = self.size
        return tuple(tuple(self.b_entry(i, j) for j in range(1, s + 1))
                     for i in range(1, s + 1))

    def a_matrix(self) -> tuple:
        s = self.size
        return tuple(tuple(self.a_entry(i, j) for j in range(1, s + 1))
                     for i in range(1, s + 1))

    def symmetrizers(self) -> tuple:
        return tuple(self.d(i) for i in range(1, self.size + 1))

    def serre_exponent(self, i: int, j: int) -> int:
        """Number of repeated generators in the cubic relation family:
        r = 1 - a~[i][j] for distinct non-odd i, where a~ is the off-diagonal
        non-symmetric entry (0 or -1)."""
        if i == j:
            raise ValueError("requires distinct nodes")
        if i == self.odd_node:
            raise ValueError("the odd node has its own relations")
        return 1 - self.a_entry(i, j)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n}

    @staticmethod
    def from_json(obj: dict) -> "CartanDatum":
        return CartanDatum(int(obj["m"]), int(obj["n"]))


def build(m: int, n: int) -> CartanDatum:
    return CartanDatum(m, n)


# -- q-scalars as hbar series ---------------------------------------------------

def q_power(datum: CartanDatum, i: int, n: int, spec: VarSpec) -> Series:
    """q_i**n = exp(n * d_i * hbar / 2) as a series."""
    datum._check(i)
    arg = Series.var(spec, "hbar", coeff=Fraction(n * datum.d(i), 2))
    return exp(arg)


def q_i_series(datum: CartanDatum, i: int, spec: VarSpec) -> Series:
    return q_power(datum, i, 1, spec)


def q_minus_qinv(datum: CartanDatum, i: int, spec: VarSpec) -> Series:
    """q_i - q_i**-1 = 2 sinh(d_i hbar / 2); vanishes at hbar = 0."""
    return q_power(datum, i, 1, spec) - q_power(datum, i, -1, spec)


def sinh_ratio_unit(datum: CartanDatum, i: int, spec: VarSpec) -> Series:
    """(q_i - q_i**-1)/hbar, an invertible series with constant term d_i."""
    return divide_by_var(q_minus_qinv(datum, i, spec), "hbar")


def hbar_over_q_minus_qinv(datum: CartanDatum, i: int, spec: VarSpec) -> Series:
    """hbar/(q_i - q_i**-1); constant term 1/d_i."""
    return inverse(sinh_ratio_unit(datum, i, spec))


def q_number(n: int, datum: CartanDatum, i: int, spec: VarSpec) -> Series:
    """[n]_{q_i} = (q_i**n - q_i**-n)/(q_i - q_i**-1), expanded without
    division as the Laurent sum q**(n-1) + q**(n-3) + ... + q**(1-n)."""
    datum._check(i)
    if n == 0:
        return Series.zero(spec)
    sign = 1 if n > 0 else -1
    n = abs(n)
    total = Series.zero(spec)
    for j in range(n):
        total = total + q_power(datum, i, n - 1 - 2 * j, spec)
    return total if sign > 0 else -total


def _gauss_binomial(n: int, k: int) -> list:
    """Coefficients of the Gaussian binomial [n k] in the variable Q,
    by the Pascal recurrence; exact integers."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    row = [[1]]  # gauss(j, 0) = 1
    prev = [[1] for _ in range(n + 1)]  # prev[j] = gauss(j, kk-1) coeffs
    for kk in range(1, k + 1):
        cur = [None] * (n + 1)
        cur[kk] = [1]
        for j in range(kk + 1, n + 1):
            a = prev[j - 1]              # gauss(j-1, kk-1)
            b = cur[j - 1]               # gauss(j-1, kk)
            size = max(len(a), len(b) + kk)
            co = [0] * size
            for t, x in enumerate(a):
                co[t] += x
            for t, x in enumerate(b):
                co[t + kk] += x
            while co and co[-1] == 0:
                co.pop()
            cur[j] = co
        prev = cur
    return prev[n]


def q_binomial(n: int, k: int, datum: CartanDatum, i: int, spec: VarSpec) -> Series:
    """Symmetric q-binomial [n k]_{q_i} as a Laurent polynomial in q_i."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    coeffs = _gauss_binomial(n, k)
    total = Series.zero(spec)
    for j, c in enumerate(coeffs):
        if c:
            total = total + q_power(datum, i, 2 * j - k * (n - k), spec).scale(c)
    return total
