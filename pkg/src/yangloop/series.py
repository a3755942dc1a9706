"""Exact truncated multivariate formal power series over Q(i).

A VarSpec fixes a family of commuting graded variables sharing one
total-degree bound T, plus an optional "loop" variable whose integer
exponent n is bounded by |n| <= U.  The variable named ``hbar`` may carry
a bounded negative exponent (hbar_floor, typically -1); all other graded
exponents are nonnegative.

Truncation semantics: the total degree of a term is the *signed* sum of
its graded exponents (so one power of hbar**-1 counts as -1), and terms
of degree > T or loop order |n| > U are dropped on construction and in
every operation.  Dropping degree > T is stable under multiplication by
anything of nonnegative degree, so ring operations are exact modulo the
truncation ideal as long as no hbar**-1 factors multiply together; such
products raise instead of silently losing terms.

Dividing by hbar (or by a plain variable, as in f/v) shifts the exact
window down by one degree.  Verification code therefore computes with a
couple of degrees of headroom and compares on an explicit window; see
``restrict``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .gaussian import C0, C1, Coeff, rat


class SpecMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VarSpec:
    """Variable family: graded names with shared bound T, optional loop var."""

    graded: tuple[str, ...]
    max_degree: int                 # T
    loop: str | None = None
    loop_order: int = 0             # U
    hbar_floor: int = 0

    def __post_init__(self):
        names = list(self.graded) + ([self.loop] if self.loop else [])
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if self.max_degree < 0 or self.loop_order < 0:
            raise ValueError("bounds must be nonnegative")
        if self.hbar_floor > 0:
            raise ValueError("hbar_floor must be <= 0")
        if self.hbar_floor < 0 and "hbar" not in self.graded:
            raise ValueError("hbar_floor < 0 requires a graded variable 'hbar'")

    @property
    def nslots(self) -> int:
        return len(self.graded) + (1 if self.loop else 0)

    @property
    def hbar_index(self) -> int | None:
        try:
            return self.graded.index("hbar")
        except ValueError:
            return None

    def index(self, name: str) -> int:
        """Slot of a variable in exponent keys (loop var sits last)."""
        if self.loop and name == self.loop:
            return len(self.graded)
        try:
            return self.graded.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def graded_degree(self, key: tuple[int, ...]) -> int:
        n = len(self.graded)
        return sum(key[:n])

    def loop_exp(self, key: tuple[int, ...]) -> int:
        return key[len(self.graded)] if self.loop else 0

    def weight(self, key: tuple[int, ...]) -> int:
        return self.graded_degree(key) + abs(self.loop_exp(key))

    def admits(self, key: tuple[int, ...]) -> bool:
        """True if the key survives truncation (raises on floor violations)."""
        n = len(self.graded)
        hi = self.hbar_index
        for j in range(n):
            e = key[j]
            if e < 0:
                if j != hi:
                    raise ValueError(f"negative exponent of {self.graded[j]!r}")
                if e < self.hbar_floor:
                    raise ValueError(
                        f"hbar exponent {e} below floor {self.hbar_floor}")
        if self.graded_degree(key) > self.max_degree:
            return False
        if self.loop and abs(key[n]) > self.loop_order:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "vars": list(self.graded),
            "loop": self.loop,
            "T": self.max_degree,
            "U": self.loop_order,
            "hbar_floor": self.hbar_floor,
        }

    @staticmethod
    def from_json(obj: dict) -> "VarSpec":
        return VarSpec(
            tuple(obj["vars"]),
            int(obj["T"]),
            obj.get("loop"),
            int(obj.get("U", 0)),
            int(obj.get("hbar_floor", 0)),
        )


class Series:
    """Immutable truncated series: finite map exponent-key -> Coeff."""

    __slots__ = ("spec", "terms", "_sorted")

    def __init__(self, spec: VarSpec, terms: dict):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_sorted", None)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- construction --------------------------------------------------------

    @staticmethod
    def _make(spec: VarSpec, terms: dict) -> "Series":
        # internal: assumes keys already within bounds, prunes zeros
        return Series(spec, {k: c for k, c in terms.items() if c})

    @staticmethod
    def from_terms(spec: VarSpec, items) -> "Series":
        """Build from (key, coeff) pairs, truncating out-of-bound keys."""
        out: dict = {}
        for key, c in items:
            key = tuple(key)
            if len(key) != spec.nslots:
                raise ValueError("exponent key has wrong length")
            c = c if isinstance(c, Coeff) else Coeff(rat(c))
            if not c or not spec.admits(key):
                continue
            acc = out.get(key)
            out[key] = c if acc is None else acc + c
        return Series._make(spec, out)

    @staticmethod
    def zero(spec: VarSpec) -> "Series":
        return Series(spec, {})

    @staticmethod
    def constant(spec: VarSpec, c) -> "Series":
        c = c if isinstance(c, Coeff) else Coeff(rat(c))
        key = (0,) * spec.nslots
        return Series._make(spec, {key: c})

    @staticmethod
    def one(spec: VarSpec) -> "Series":
        return Series.constant(spec, 1)

    @staticmethod
    def var(spec: VarSpec, name: str, exp: int = 1, coeff=1) -> "Series":
        return Series.monomial(spec, {name: exp}, coeff)

    @staticmethod
    def monomial(spec: VarSpec, exps: dict, coeff=1) -> "Series":
        key = [0] * spec.nslots
        for name, e in exps.items():
            key[spec.index(name)] = int(e)
        return Series.from_terms(spec, [(tuple(key), coeff)])

    # -- views ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * self.spec.nslots, C0)

    def as_constant(self) -> Coeff:
        if len(self.terms) > 1 or (self.terms and any(any(k) for k in self.terms)):
            raise ValueError("series is not constant")
        return self.constant_term()

    def coefficient(self, exps: dict) -> Coeff:
        key = [0] * self.spec.nslots
        for name, e in exps.items():
            key[self.spec.index(name)] = int(e)
        return self.terms.get(tuple(key), C0)

    def coefficient_of(self, name: str, k: int) -> "Series":
        """Sub-series multiplying name**k, with that variable stripped."""
        i = self.spec.index(name)
        out = {}
        for key, c in self.terms.items():
            if key[i] == k:
                kk = list(key)
                kk[i] = 0
                out[tuple(kk)] = c
        return Series._make(self.spec, out)

    def coefficient_of_loop(self, n: int) -> "Series":
        if not self.spec.loop:
            raise ValueError("spec has no loop variable")
        return self.coefficient_of(self.spec.loop, n)

    def max_exp(self, name: str) -> int:
        i = self.spec.index(name)
        return max((k[i] for k in self.terms), default=0)

    def loop_exponents(self) -> list[int]:
        if not self.spec.loop:
            return []
        i = len(self.spec.graded)
        return sorted({k[i] for k in self.terms})

    # -- ring operations -----------------------------------------------------

    def _check_spec(self, other: "Series"):
        if self.spec != other.spec:
            raise SpecMismatch("operands built over different VarSpecs")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Coeff)):
            other = Series.constant(self.spec, other)
        self._check_spec(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k)
            s = c if acc is None else acc + c
            if s:
                out[k] = s
            elif acc is not None:
                del out[k]
        return Series(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.spec, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Coeff)):
            other = Series.constant(self.spec, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Series":
        c = c if isinstance(c, Coeff) else Coeff(rat(c))
        if not c:
            return Series.zero(self.spec)
        return Series(self.spec, {k: v * c for k, v in self.terms.items()})

    def _sorted_terms(self):
        cached = self._sorted
        if cached is None:
            gd = self.spec.graded_degree
            cached = sorted(
                ((gd(k), k, c) for k, c in self.terms.items()), key=lambda t: t[0])
            object.__setattr__(self, "_sorted", cached)
        return cached

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Coeff)):
            return self.scale(other)
        self._check_spec(other)
        spec = self.spec
        T = spec.max_degree
        U = spec.loop_order
        ngr = len(spec.graded)
        hi = spec.hbar_index
        floor = spec.hbar_floor
        has_loop = spec.loop is not None
        a = self._sorted_terms()
        b = other._sorted_terms()
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for g1, k1, c1 in a:
            for g2, k2, c2 in b:
                if g1 + g2 > T:
                    break
                key = tuple(x + y for x, y in zip(k1, k2))
                if has_loop and abs(key[ngr]) > U:
                    continue
                if hi is not None and key[hi] < floor:
                    raise ValueError(
                        "product exceeds the hbar Laurent floor; "
                        "rescale before multiplying")
                c = c1 * c2
                acc = out.get(key)
                s = c if acc is None else acc + c
                if s:
                    out[key] = s
                elif acc is not None:
                    del out[key]
        return Series(self.spec, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    # -- calculus ------------------------------------------------------------

    def derivative(self, name: str) -> "Series":
        """Formal partial derivative with respect to a graded variable."""
        if self.spec.loop and name == self.spec.loop:
            raise KeyError("derivative is defined for graded variables only")
        i = self.spec.index(name)
        out = {}
        for key, c in self.terms.items():
            e = key[i]
            if e == 0:
                continue
            kk = list(key)
            kk[i] = e - 1
            out[tuple(kk)] = c * Fraction(e)
        return Series._make(self.spec, out)

    def derivative_loop(self) -> "Series":
        """d/du where u is the loop variable: u**n -> n*u**(n-1)."""
        spec = self.spec
        if not spec.loop:
            raise ValueError("spec has no loop variable")
        i = len(spec.graded)
        out = {}
        for key, c in self.terms.items():
            n = key[i]
            if n == 0:
                continue
            if abs(n - 1) > spec.loop_order:
                continue
            kk = list(key)
            kk[i] = n - 1
            out[tuple(kk)] = c * Fraction(n)
        return Series._make(spec, out)

    def shift_var(self, name: str, delta: int) -> "Series":
        """Multiply by name**delta.  Negative delta performs exact division
        and raises if any term is not divisible (or the hbar floor is hit)."""
        if delta == 0:
            return self
        spec = self.spec
        if spec.loop and name == spec.loop:
            i = len(spec.graded)
            out = {}
            for key, c in self.terms.items():
                n = key[i] + delta
                if abs(n) > spec.loop_order:
                    continue
                kk = list(key)
                kk[i] = n
                out[tuple(kk)] = c
            return Series._make(spec, out)
        i = spec.index(name)
        hi = spec.hbar_index
        lo = spec.hbar_floor if i == hi else 0
        out = {}
        for key, c in self.terms.items():
            e = key[i] + delta
            if e < lo:
                raise ValueError(
                    f"term not divisible by {name}**{-delta} (exponent {key[i]})")
            kk = list(key)
            kk[i] = e
            if spec.graded_degree(tuple(kk)) > spec.max_degree:
                continue
            out[tuple(kk)] = c
        return Series._make(spec, out)

    def substitute(self, name: str, g: "Series") -> "Series":
        """Replace a graded variable by a series (Horner in that variable).

        Exact at truncation when g has zero constant term or the variable
        occurs only to bounded degree in the underlying object.
        """
        self._check_spec(g)
        i = self.spec.index(name)
        top = self.max_exp(name)
        if any(k[i] < 0 for k in self.terms):
            raise ValueError("cannot substitute into negative powers")
        res = self.coefficient_of(name, top)
        for e in range(top - 1, -1, -1):
            res = res * g + self.coefficient_of(name, e)
        return res

    def substitute_scalar(self, name: str, value, dominators=None) -> "Series":
        """Replace a graded variable by an exact rational scalar.

        When ``dominators`` is given, every stored term must satisfy
        exp(name) <= sum of exponents over the dominating variables; this is
        the structural condition under which scalar substitution commutes
        with truncation.
        """
        value = rat(value)
        i = self.spec.index(name)
        dom = tuple(self.spec.index(d) for d in dominators) if dominators else None
        out: dict = {}
        for key, c in self.terms.items():
            e = key[i]
            if e < 0:
                raise ValueError("cannot substitute into negative powers")
            if dom is not None and e > sum(key[j] for j in dom):
                raise ValueError(
                    f"substitution of {name!r} is not graded-admissible")
            kk = list(key)
            kk[i] = 0
            kk = tuple(kk)
            cc = c * value**e if e else c
            acc = out.get(kk)
            s = cc if acc is None else acc + cc
            if s:
                out[kk] = s
            elif acc is not None:
                del out[kk]
        return Series._make(self.spec, out)

    def eval_at(self, assign: dict) -> Coeff:
        """Evaluate at exact rational (or Q(i)) points; every variable that
        actually occurs must be assigned."""
        vals = {}
        for name, v in assign.items():
            vals[self.spec.index(name)] = v if isinstance(v, Coeff) else Coeff(rat(v))
        total = C0
        for key, c in self.terms.items():
            term = c
            for j, e in enumerate(key):
                if e == 0:
                    continue
                if j not in vals:
                    name = (self.spec.graded + ((self.spec.loop,) if self.spec.loop else ()))[j]
                    raise ValueError(f"unassigned variable {name!r}")
                v = vals[j]
                if e < 0:
                    v = v.inverse()
                    e = -e
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    # -- windows and wire format ----------------------------------------------

    def restrict(self, limits) -> "Series":
        """Keep terms whose exponent sums obey each (names, bound) limit.

        Graded exponents are summed as signed integers; the loop exponent
        contributes its absolute value.
        """
        idx_limits = []
        loop_i = len(self.spec.graded) if self.spec.loop else None
        for names, bound in limits:
            if isinstance(names, str):
                names = (names,)
            idx_limits.append((tuple(self.spec.index(n) for n in names), bound))
        out = {}
        for key, c in self.terms.items():
            ok = True
            for idxs, bound in idx_limits:
                s = sum(abs(key[j]) if j == loop_i else key[j] for j in idxs)
                if s > bound:
                    ok = False
                    break
            if ok:
                out[key] = c
        return Series._make(self.spec, out)

    def truncate_total(self, bound: int) -> "Series":
        gd = self.spec.graded_degree
        return Series._make(
            self.spec, {k: c for k, c in self.terms.items() if gd(k) <= bound})

    def to_json(self) -> dict:
        obj = self.spec.to_json()
        obj["terms"] = [
            {"exp": list(k), "re": str(c.re), "im": str(c.im)}
            for k, c in sorted(self.terms.items())
        ]
        return obj

    @staticmethod
    def from_json(obj: dict) -> "Series":
        spec = VarSpec.from_json(obj)
        items = [
            (tuple(t["exp"]), Coeff(Fraction(t["re"]), Fraction(t.get("im", "0"))))
            for t in obj.get("terms", [])
        ]
        return Series.from_terms(spec, items)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = list(self.spec.graded) + ([self.spec.loop] if self.spec.loop else [])
        parts = []
        for key in sorted(self.terms, key=lambda k: (self.spec.weight(k), k)):
            c = self.terms[key]
            mon = "*".join(
                f"{names[j]}" if e == 1 else f"{names[j]}^{e}"
                for j, e in enumerate(key) if e
            )
            parts.append(f"({c})" if not mon else f"({c})*{mon}")
        return " + ".join(parts)

    # -- first difference (verification reports) ------------------------------

    def first_difference(self, other: "Series") -> dict | None:
        """None if equal, else the smallest differing monomial with both sides."""
        self._check_spec(other)
        keys = set(self.terms) | set(other.terms)
        diff = [k for k in keys if self.terms.get(k, C0) != other.terms.get(k, C0)]
        if not diff:
            return None
        k = min(diff, key=lambda k: (self.spec.weight(k), k))
        names = list(self.spec.graded) + ([self.spec.loop] if self.spec.loop else [])
        return {
            "monomial": {names[j]: e for j, e in enumerate(k) if e},
            "lhs": repr(self.terms.get(k, C0)),
            "rhs": repr(other.terms.get(k, C0)),
        }


# -- layered recurrences ------------------------------------------------------

def _check_layerable(f: Series, what: str):
    spec = f.spec
    hi = spec.hbar_index
    if hi is not None and any(k[hi] < 0 for k in f.terms):
        raise ValueError(f"{what} requires nonnegative hbar exponents")
    if spec.loop:
        i = len(spec.graded)
        exps = [k[i] for k in f.terms]
        if any(n > 0 for n in exps) and any(n < 0 for n in exps):
            raise ValueError(f"{what} requires one-sided loop exponents")


def _layers(f: Series) -> dict:
    out: dict = {}
    w = f.spec.weight
    for k, c in f.terms.items():
        out.setdefault(w(k), []).append((k, c))
    return out


def _conv(spec: VarSpec, t1, t2, out: dict, scale=None):
    """out += t1 * t2 (lists of (key, coeff)), with truncation checks."""
    T = spec.max_degree
    U = spec.loop_order
    ngr = len(spec.graded)
    has_loop = spec.loop is not None
    gd = spec.graded_degree
    for k1, c1 in t1:
        if scale is not None:
            c1 = c1 * scale
        g1 = gd(k1)
        for k2, c2 in t2:
            if g1 + gd(k2) > T:
                continue
            key = tuple(x + y for x, y in zip(k1, k2))
            if has_loop and abs(key[ngr]) > U:
                continue
            c = c1 * c2
            acc = out.get(key)
            s = c if acc is None else acc + c
            if s:
                out[key] = s
            elif acc is not None:
                del out[key]


def _max_weight(spec: VarSpec) -> int:
    return spec.max_degree + (spec.loop_order if spec.loop else 0)


def exp(f: Series) -> Series:
    """exp of a series with zero constant term."""
    if f.constant_term():
        raise ValueError("exp requires zero constant term")
    _check_layerable(f, "exp")
    spec = f.spec
    fl = _layers(f)
    if 0 in fl:
        raise ValueError("exp argument has weight-zero non-constant terms")
    zero_key = (0,) * spec.nslots
    g_layers: dict = {0: {zero_key: C1}}
    W = _max_weight(spec)
    for d in range(1, W + 1):
        acc: dict = {}
        for k, layer in fl.items():
            if k > d:
                continue
            prev = g_layers.get(d - k)
            if not prev:
                continue
            _conv(spec, layer, list(prev.items()), acc, scale=Fraction(k))
        if acc:
            inv_d = Fraction(1, d)
            g_layers[d] = {k: c * inv_d for k, c in acc.items() if c}
    out: dict = {}
    for layer in g_layers.values():
        out.update(layer)
    return Series._make(spec, out)


def log(f: Series) -> Series:
    """log of a series with constant term 1."""
    if f.constant_term() != C1:
        raise ValueError("log requires constant term 1")
    _check_layerable(f, "log")
    spec = f.spec
    hl = _layers(f - Series.one(spec))
    if 0 in hl:
        raise ValueError("log argument has weight-zero non-constant terms")
    W = _max_weight(spec)
    theta_t: dict = {}
    for d in range(1, W + 1):
        acc: dict = {}
        for k, c in hl.get(d, []):
            acc[k] = acc.get(k, C0) + c * Fraction(d)
        for k, layer in hl.items():
            if k >= d:
                continue
            prev = theta_t.get(d - k)
            if not prev:
                continue
            _conv(spec, layer, list(prev.items()), acc, scale=Fraction(-1))
        acc = {k: c for k, c in acc.items() if c}
        if acc:
            theta_t[d] = acc
    out: dict = {}
    for d, layer in theta_t.items():
        inv_d = Fraction(1, d)
        for k, c in layer.items():
            out[k] = c * inv_d
    return Series._make(spec, out)


def inverse(f: Series) -> Series:
    """Multiplicative inverse; requires a nonzero constant term."""
    c0 = f.constant_term()
    if not c0:
        raise ValueError("inverse requires nonzero constant term")
    _check_layerable(f, "inverse")
    spec = f.spec
    fl = _layers(f)
    inv0 = c0.inverse()
    zero_key = (0,) * spec.nslots
    g_layers: dict = {0: {zero_key: inv0}}
    W = _max_weight(spec)
    for d in range(1, W + 1):
        acc: dict = {}
        for k, layer in fl.items():
            if k == 0 or k > d:
                continue
            prev = g_layers.get(d - k)
            if not prev:
                continue
            _conv(spec, layer, list(prev.items()), acc)
        if acc:
            g_layers[d] = {k: -(c * inv0) for k, c in acc.items() if c}
    out: dict = {}
    for layer in g_layers.values():
        out.update(layer)
    return Series._make(spec, out)


def sqrt(f: Series) -> Series:
    """Square root; the constant term must be +/- a rational square."""
    c0 = f.constant_term().sqrt()
    _check_layerable(f, "sqrt")
    spec = f.spec
    fl = _layers(f)
    zero_key = (0,) * spec.nslots
    g_layers: dict = {0: {zero_key: c0}}
    half_inv = (c0 + c0).inverse()
    W = _max_weight(spec)
    for d in range(1, W + 1):
        acc: dict = {}
        for k, c in fl.get(d, []):
            acc[k] = acc.get(k, C0) + c
        for k in range(1, d):
            la, lb = g_layers.get(k), g_layers.get(d - k)
            if la and lb:
                _conv(spec, list(la.items()), list(lb.items()), acc,
                      scale=Fraction(-1))
        acc = {k: c * half_inv for k, c in acc.items() if c}
        if acc:
            g_layers[d] = acc
    out: dict = {}
    for layer in g_layers.values():
        out.update(layer)
    return Series._make(spec, out)


# -- Borel pair ----------------------------------------------------------------

def borel(f: Series, target: str = "v") -> Series:
    """Sum f_k u**(-k-1)  ->  Sum f_k v**k / k!.

    Every term must carry a strictly negative loop exponent, and the target
    variable must not occur; coefficients may live in the other graded
    variables.  The result is supported on loop exponent zero.
    """
    spec = f.spec
    if not spec.loop:
        raise ValueError("borel requires a loop variable")
    i_loop = len(spec.graded)
    i_v = spec.index(target)
    out: dict = {}
    for key, c in f.terms.items():
        n = key[i_loop]
        if n >= 0:
            raise ValueError("borel requires only negative loop powers")
        if key[i_v] != 0:
            raise ValueError(f"target variable {target!r} already occurs")
        k = -n - 1
        kk = list(key)
        kk[i_loop] = 0
        kk[i_v] = k
        kk = tuple(kk)
        if spec.graded_degree(kk) > spec.max_degree:
            continue
        out[kk] = c * Fraction(1, factorial(k))
    return Series._make(spec, out)


def inverse_borel(g: Series, source: str = "v") -> Series:
    """Sum g_k v**k  ->  Sum g_k k! u**(-k-1); left inverse of ``borel``."""
    spec = g.spec
    if not spec.loop:
        raise ValueError("inverse_borel requires a loop variable")
    i_loop = len(spec.graded)
    i_v = spec.index(source)
    out: dict = {}
    for key, c in g.terms.items():
        if key[i_loop] != 0:
            raise ValueError("argument already involves the loop variable")
        k = key[i_v]
        if k + 1 > spec.loop_order:
            continue
        kk = list(key)
        kk[i_v] = 0
        kk[i_loop] = -k - 1
        out[tuple(kk)] = c * factorial(k)
    return Series._make(spec, out)


# -- exact division helpers -----------------------------------------------------

def exact_div_difference(f: Series, x: str, y: str) -> Series:
    """f / (x - y) for f vanishing on the diagonal x = y.

    Synthetic division in x with the remainder checked to be zero; exact
    up to one degree below the truncation bound.
    """
    spec = f.spec
    ix = spec.index(x)
    top = f.max_exp(x)
    if any(k[ix] < 0 for k in f.terms):
        raise ValueError("negative powers of the division variable")
    yvar = Series.var(spec, y)
    xvar = Series.var(spec, x)
    g = [f.coefficient_of(x, e) for e in range(top + 1)]
    q = [Series.zero(spec)] * max(top, 1)
    carry = Series.zero(spec)
    for e in range(top - 1, -1, -1):
        carry = g[e + 1] + yvar * carry
        q[e] = carry
    remainder = g[0] + yvar * q[0] if top >= 1 else g[0]
    if not remainder.is_zero():
        raise ValueError("series does not vanish on the diagonal x = y")
    out = Series.zero(spec)
    xpow = Series.one(spec)
    for e in range(top):
        out = out + q[e] * xpow
        xpow = xpow * xvar
    return out


def divide_by_var(f: Series, name: str, k: int = 1) -> Series:
    """Exact division by name**k (raises unless every term is divisible)."""
    return f.shift_var(name, -k)
