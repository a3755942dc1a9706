"""Free associative superalgebra on leveled raising/lowering symbols, with
coefficients polynomial in hbar over Q(i); constructors for the level-mixing
and Serre-type defining relations of both presentations, slot-wise shift
operators, and exact span comparison of relation families.

Signs follow the super convention: a word is odd iff it contains an odd
number of odd-node symbols, and [a, b] = ab - (-1)^{p(a)p(b)} ba; the
q-commutator inserts a scalar series before the second product.

Loop-side levels range over [-R, R] and are stored internally shifted into
[0, 2R]; current-side levels live in [0, R] unshifted.  Level or word-length
overflow raises rather than truncating, so relation elements are always
represented exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .cartan import CartanDatum, q_binomial, q_power
from .gaussian import C0, C1, Coeff
from .series import Series, VarSpec


@dataclass(frozen=True, order=True)
class GenSym:
    sign: int        # +1 raising, -1 lowering
    node: int
    level: int       # internal, nonnegative
    parity: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.level < 0:
            raise ValueError("internal level must be nonnegative")


class FreeAlgebra:
    """Carrier of the generator alphabet and the shared coefficient spec."""

    def __init__(self, datum: CartanDatum, hbar_bound: int = 8,
                 level_bound: int = 4, word_bound: int = 6, loop: bool = False):
        self.datum = datum
        self.spec = VarSpec(("hbar",), hbar_bound)
        self.level_bound = level_bound
        self.word_bound = word_bound
        self.loop = loop
        self.level_offset = level_bound if loop else 0

    def _internal_level(self, level: int) -> int:
        lo = -self.level_bound if self.loop else 0
        hi = self.level_bound
        if not lo <= level <= hi:
            raise ValueError(f"level {level} outside [{lo}, {hi}]")
        return level + self.level_offset

    def symbol(self, sign: int, node: int, level: int) -> GenSym:
        self.datum._check(node)
        return GenSym(sign, node, self._internal_level(level),
                      self.datum.parity(node))

    def gen(self, sign: int, node: int, level: int) -> "AlgElem":
        w = (self.symbol(sign, node, level),)
        return AlgElem(self, {w: Series.one(self.spec)})

    def zero(self) -> "AlgElem":
        return AlgElem(self, {})

    def one(self) -> "AlgElem":
        return AlgElem(self, {(): Series.one(self.spec)})

    def user_level(self, sym: GenSym) -> int:
        return sym.level - self.level_offset


def _word_parity(word) -> int:
    return sum(s.parity for s in word) & 1


class AlgElem:
    """Finite sum of words with hbar-series coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: dict):
        self.alg = alg
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgElem") -> "AlgElem":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = (out[w] + c) if w in out else c
        return AlgElem(self.alg, out)

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return self + (-other)

    def scale(self, c) -> "AlgElem":
        if isinstance(c, Series):
            return AlgElem(self.alg, {w: v * c for w, v in self.terms.items()})
        return AlgElem(self.alg, {w: v.scale(c) for w, v in self.terms.items()})

    def __mul__(self, other: "AlgElem") -> "AlgElem":
        bound = self.alg.word_bound
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if len(w1) + len(w2) > bound:
                    raise ValueError("word length bound exceeded")
                w = w1 + w2
                c = c1 * c2
                out[w] = (out[w] + c) if w in out else c
        return AlgElem(self.alg, out)

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.terms == other.terms

    def parity(self) -> int:
        parities = {_word_parity(w) for w in self.terms}
        if len(parities) > 1:
            raise ValueError("element is not parity-homogeneous")
        return parities.pop() if parities else 0

    def to_json(self) -> list:
        alg = self.alg
        out = []
        for w, c in sorted(self.terms.items(),
                           key=lambda t: (len(t[0]), t[0])):
            out.append({
                "word": [{"sign": "+" if s.sign > 0 else "-", "node": s.node,
                          "level": alg.user_level(s)} for s in w],
                "coeff": [{"hbar": k[0], "re": str(v.re), "im": str(v.im)}
                          for k, v in sorted(c.terms.items())],
            })
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        alg = self.alg
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            mon = "*".join(
                f"x{'+' if s.sign > 0 else '-'}[{s.node},{alg.user_level(s)}]"
                for s in w) or "1"
            parts.append(f"({c})*{mon}")
        return " + ".join(parts)


def super_commutator(a: AlgElem, b: AlgElem) -> AlgElem:
    """[a, b] = ab - (-1)^{p(a)p(b)} ba, extended bilinearly over words."""
    alg = a.alg
    out: dict = {}

    def put(w, c):
        out[w] = (out[w] + c) if w in out else c

    for w1, c1 in a.terms.items():
        p1 = _word_parity(w1)
        for w2, c2 in b.terms.items():
            c = c1 * c2
            put(w1 + w2, c)
            if p1 and _word_parity(w2):
                put(w2 + w1, c)
            else:
                put(w2 + w1, -c)
    return AlgElem(alg, out)


def q_commutator(a: AlgElem, b: AlgElem, qpow: Series) -> AlgElem:
    """[a, b]_q = ab - (-1)^{p(a)p(b)} q * ba with a scalar series q."""
    alg = a.alg
    out: dict = {}

    def put(w, c):
        out[w] = (out[w] + c) if w in out else c

    for w1, c1 in a.terms.items():
        p1 = _word_parity(w1)
        for w2, c2 in b.terms.items():
            put(w1 + w2, c1 * c2)
            c = c1 * c2 * qpow
            put(w2 + w1, c if (p1 and _word_parity(w2)) else -c)
    return AlgElem(alg, out)


# -- relation constructors ----------------------------------------------------------

def rel_instance(alg: FreeAlgebra, rel_id: str, sign: int = 1, **params) -> AlgElem:
    """The formal element whose vanishing is the named defining relation;
    ``sign`` selects the raising (+1) or lowering (-1) family."""
    builders = {
        "2.11": _rel_level_mix,
        "2.12": _rel_odd_square,
        "2.13": _rel_serre_current,
        "2.14": _rel_cross_odd,
        "2.18": _rel_level_mix_loop,
        "2.20": _rel_qserre,
        "2.21": _rel_qserre_lower,
        "2.22": _rel_cross_odd_loop,
        "2.23": _rel_cross_odd_loop_lower,
    }
    if rel_id not in builders:
        raise KeyError(f"unknown relation id {rel_id!r}")
    return builders[rel_id](alg, sign, **params)


def _hbar(alg: FreeAlgebra) -> Series:
    return Series.var(alg.spec, "hbar")


def _rel_level_mix(alg, sign, i, j, k, l):
    """[x_{i,k+1}, x_{j,l}] - [x_{i,k}, x_{j,l+1}]
       -/+ (d_i a_ij hbar / 2) (x_{i,k} x_{j,l} + x_{j,l} x_{i,k});
    the anticommutator sign follows the chirality.  Not applicable to the
    odd-diagonal pair, whose square relation replaces it."""
    d = alg.datum
    if i == j == d.odd_node:
        raise ValueError("odd-diagonal pair has its own square relation")
    x = lambda node, lev: alg.gen(sign, node, lev)
    lhs = super_commutator(x(i, k + 1), x(j, l)) \
        - super_commutator(x(i, k), x(j, l + 1))
    anti = x(i, k) * x(j, l) + x(j, l) * x(i, k)
    coeff = _hbar(alg).scale(Fraction(sign * d.b_entry(i, j), 2))
    return lhs - anti.scale(coeff)


def _rel_odd_square(alg, sign, k, l):
    """[x_{odd,k+1}, x_{odd,l}] with the super bracket (an anticommutator)."""
    odd = alg.datum.odd_node
    return super_commutator(alg.gen(sign, odd, k + 1), alg.gen(sign, odd, l))


def _rel_serre_current(alg, sign, i, j, levels, s):
    """sum over permutations of [x_{i,t_1}, [..., [x_{i,t_r}, x_{j,s}]...]]
    with r = 1 - a~_ij repeated symbols."""
    d = alg.datum
    r = d.serre_exponent(i, j)
    if len(levels) != r:
        raise ValueError(f"need {r} levels for this node pair")
    total = alg.zero()
    tail = alg.gen(sign, j, s)
    for perm in permutations(range(r)):
        term = tail
        for idx in reversed(perm):
            term = super_commutator(alg.gen(sign, i, levels[idx]), term)
        total = total + term
    return total


def _rel_cross_odd(alg, sign, k, t):
    """[[x_{m,k}, x_{odd,0}], [x_{odd,0}, x_{m+2,t}]]."""
    d = alg.datum
    if d.m < 1 or d.n < 1:
        raise ValueError("needs nodes on both sides of the odd one")
    odd = d.odd_node
    left = super_commutator(alg.gen(sign, odd - 1, k), alg.gen(sign, odd, 0))
    right = super_commutator(alg.gen(sign, odd, 0), alg.gen(sign, odd + 1, t))
    return super_commutator(left, right)


def _rel_level_mix_loop(alg, sign, i, j, k, l):
    """[X_{i,k+1}, X_{j,l}]_{q_i^{a_ij}} - q_i^{a_ij} [X_{i,k}, X_{j,l+1}]_{q_i^{-a_ij}}
    (exponents negate on the lowering family)."""
    d = alg.datum
    b = sign * d.b_entry(i, j)
    qp = q_power(d, 1, 1, alg.spec)  # base q; exponents below use B directly
    qpos = _q_b_power(alg, b)
    qneg = _q_b_power(alg, -b)
    x = lambda node, lev: alg.gen(sign, node, lev)
    return q_commutator(x(i, k + 1), x(j, l), qpos) \
        - q_commutator(x(i, k), x(j, l + 1), qneg) * _as_elem(alg, qpos)


def _as_elem(alg, series: Series) -> AlgElem:
    return AlgElem(alg, {(): series})


def _q_b_power(alg: FreeAlgebra, b: int) -> Series:
    """q**b as a series (q = exp(hbar/2))."""
    from .series import exp
    return exp(Series.var(alg.spec, "hbar", coeff=Fraction(b, 2)))


def _rel_qserre(alg, sign, i, j, levels, l):
    """Loop-side Serre sum: over permutations and the split position s,
    (-1)**s [m s]_{q_i} X_i ... X_i X_j X_i ... X_i with m = 1 - a_ij."""
    d = alg.datum
    m_val = 1 - d.a_entry(i, j)
    if i == d.odd_node or i == j:
        raise ValueError("needs a distinct non-odd repeated node")
    if len(levels) != m_val:
        raise ValueError(f"need {m_val} levels for this node pair")
    total = alg.zero()
    mid = alg.gen(sign, j, l)
    for perm in permutations(range(m_val)):
        for s in range(m_val + 1):
            coeff = q_binomial(m_val, s, d, i, alg.spec)
            if s % 2:
                coeff = -coeff
            term = alg.one()
            for idx in perm[:s]:
                term = term * alg.gen(sign, i, levels[idx])
            term = term * mid
            for idx in perm[s:]:
                term = term * alg.gen(sign, i, levels[idx])
            total = total + term.scale(coeff)
    return total


def _rel_qserre_lower(alg, sign, i, j, levels, l):
    return _rel_qserre(alg, -1, i, j, levels=levels, l=l)


def _rel_cross_odd_loop(alg, sign, k, r):
    """[[X_{m,k}, X_{odd,0}]_q, [X_{odd,0}, X_{m+2,r}]_q]_q."""
    d = alg.datum
    if d.m < 1 or d.n < 1:
        raise ValueError("needs nodes on both sides of the odd one")
    odd = d.odd_node
    qp = _q_b_power(alg, sign)
    left = q_commutator(alg.gen(sign, odd - 1, k), alg.gen(sign, odd, 0), qp)
    right = q_commutator(alg.gen(sign, odd, 0), alg.gen(sign, odd + 1, r), qp)
    return q_commutator(left, right, qp)


def _rel_cross_odd_loop_lower(alg, sign, k, r):
    return _rel_cross_odd_loop(alg, -1, k=k, r=r)


# -- slot shifts -----------------------------------------------------------------------

def shift_apply(poly: dict, template: AlgElem) -> AlgElem:
    """Apply a commutative polynomial in the per-slot shift operators to an
    element whose words all share one length.

    ``poly`` maps exponent tuples (one entry per word slot) to Fraction or
    Series coefficients; exponent e in slot j raises the level of the j-th
    symbol of every word by e.  Level overflow raises.
    """
    alg = template.alg
    top = 2 * alg.level_bound if alg.loop else alg.level_bound
    lengths = {len(w) for w in template.terms}
    if len(lengths) > 1:
        raise ValueError("template words must have equal length")
    nslots = lengths.pop() if lengths else 0
    out: dict = {}
    for exps, coeff in poly.items():
        if len(exps) != nslots:
            raise ValueError("exponent tuple length mismatch")
        if not isinstance(coeff, Series):
            coeff = Series.constant(alg.spec, coeff)
        for w, c in template.terms.items():
            syms = []
            for s, e in zip(w, exps):
                lev = s.level + e
                if lev > top:
                    raise ValueError("level bound exceeded by shift")
                syms.append(GenSym(s.sign, s.node, lev, s.parity))
            w2 = tuple(syms)
            cc = c * coeff
            out[w2] = (out[w2] + cc) if w2 in out else cc
    return AlgElem(alg, out)


# -- exact span comparison ----------------------------------------------------------------

def _coords(elem: AlgElem) -> dict:
    out = {}
    for w, c in elem.terms.items():
        for key, v in c.terms.items():
            out[(w, key[0])] = v
    return out


def _reduce(row: dict, basis: list) -> dict:
    for pivot, prow in basis:
        v = row.get(pivot)
        if v:
            row = {k: x for k, x in
                   ((k, row.get(k, C0) - v * prow.get(k, C0))
                    for k in set(row) | set(prow)) if x}
    return row


def _eliminate(rows: list) -> list:
    basis = []
    for row in rows:
        row = _reduce(dict(row), basis)
        if row:
            pivot = min(row)
            inv = row[pivot].inverse()
            basis.append((pivot, {k: v * inv for k, v in row.items()}))
    basis.sort(key=lambda t: t[0])
    return basis


def span_equal(family_a: list, family_b: list):
    """Exact span comparison over the (word, hbar-power) coordinates.

    Returns (equal, certificate); on failure the certificate carries the
    first witness element of one family outside the other's span.
    """
    rows_a = [_coords(e) for e in family_a]
    rows_b = [_coords(e) for e in family_b]
    basis_a = _eliminate(rows_a)
    basis_b = _eliminate(rows_b)
    for idx, row in enumerate(rows_b):
        if _reduce(dict(row), basis_a):
            return False, {"equal": False, "direction": "b_not_in_a",
                           "witness_index": idx,
                           "witness": family_b[idx].to_json()}
    for idx, row in enumerate(rows_a):
        if _reduce(dict(row), basis_b):
            return False, {"equal": False, "direction": "a_not_in_b",
                           "witness_index": idx,
                           "witness": family_a[idx].to_json()}
    return True, {"equal": True, "rank": len(basis_a)}
