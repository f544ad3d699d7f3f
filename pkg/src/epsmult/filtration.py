"""Filtration specifications and their evaluation.

A filtration is a descending chain R = I_0 >= I_1 >= ... with
I_m * I_n <= I_{m+n}.  Five spec kinds are supported:

* ``Power(base)``            -- I_n = base^n
* ``DiscreteValued(pairs)``  -- I_n = intersection of valuation ideals at
                                levels ceil(n * a_i)
* ``Template(generators)``   -- fixed generator shapes whose coordinates are
                                small expressions in n
* ``Table(ideals)``          -- explicit ideals for n <= N, error beyond
* ``Truncation(parent, i)``  -- the subfiltration generated by degrees <= i

Specs are immutable; ``ideal_at`` is pure given the spec.  Memo tables are
per-instance dicts with idempotent entries, safe for concurrent readers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ring import (
    MonomialIdeal,
    RingContext,
    dim_quotient,
    ideal_product,
    ideal_sum,
    intersect,
    localize,
)
from .valuation import ExactScalar, ceil_mul, valuation_ideal

__all__ = [
    "Filtration",
    "PowerFiltration",
    "DiscreteValuedFiltration",
    "TemplateFiltration",
    "TableFiltration",
    "TruncationFiltration",
    "LocalizedFiltration",
    "TableRangeError",
    "Witness",
    "sigma_surrogate",
    "parse_expression",
    "validate_filtration",
    "filtration_dimension",
]


class TableRangeError(ValueError):
    """Evaluation of a Table filtration beyond its stored range."""


def sigma_surrogate(n):
    """The shipped stand-in for the oscillating exponent function.

    sigma(n) = floor(n/2) on [4^k, 2*4^k) and the constant
    floor((2*4^k - 1)/2) on [2*4^k, 4^(k+1)).  It is nondecreasing with
    limsup sigma(n)/n = 1/2 and liminf = 1/4.  This is a documented
    surrogate, not the exact function the oscillation examples cite from
    elsewhere; note sigma(n) = 0 for n <= 3, so the bound 1 <= sigma(n)
    only holds from n = 4 on.
    """
    if n < 1:
        raise ValueError("sigma is defined on positive integers")
    k = 0
    while 4 ** (k + 1) <= n:
        k += 1
    if n < 2 * 4**k:
        return n // 2
    return (2 * 4**k - 1) // 2


# ---------------------------------------------------------------------------
# template expression grammar
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineExpr:
    """a*n + b with nonnegative integers a, b."""

    a: int
    b: int

    def eval(self, n, tau=None):
        return self.a * n + self.b

    def affine_form(self):
        return (self.a, self.b)

    def __str__(self):
        if self.a == 0:
            return str(self.b)
        head = "n" if self.a == 1 else f"{self.a}*n"
        return head if self.b == 0 else f"{head}+{self.b}"


@dataclass(frozen=True)
class PowerExpr:
    """n^k for k in {2, 3}."""

    k: int

    def eval(self, n, tau=None):
        return n**self.k

    def affine_form(self):
        return None

    def __str__(self):
        return f"n^{self.k}"


@dataclass(frozen=True)
class CeilExpr:
    """ceil(scalar * n) for a positive exact scalar."""

    scalar: ExactScalar

    def eval(self, n, tau=None):
        if n == 0:
            return 0
        return ceil_mul(self.scalar, n)

    def affine_form(self):
        # exact only when the multiplier is a positive integer
        if self.scalar.is_rational and self.scalar.coeff.denominator == 1:
            return (int(self.scalar.coeff), 0)
        return None

    def __str__(self):
        return f"ceil({self.scalar}*n)"


@dataclass(frozen=True)
class TauExpr:
    """Lookup in the filtration's tau table."""

    def eval(self, n, tau=None):
        if tau is None:
            raise ValueError("tau(n) used without a tau table")
        if n not in tau:
            raise TableRangeError(f"tau table has no entry for n={n}")
        return tau[n]

    def affine_form(self):
        return None

    def __str__(self):
        return "tau(n)"


@dataclass(frozen=True)
class SigmaExpr:
    """sigma(n) or n*sigma(n) with the surrogate sigma."""

    times_n: bool

    def eval(self, n, tau=None):
        s = sigma_surrogate(n)
        return n * s if self.times_n else s

    def affine_form(self):
        return None

    def __str__(self):
        return "n*sigma(n)" if self.times_n else "sigma(n)"


_EXPR_PATTERNS = [
    (re.compile(r"^(\d+)$"), lambda m: AffineExpr(0, int(m.group(1)))),
    (re.compile(r"^n$"), lambda m: AffineExpr(1, 0)),
    (re.compile(r"^(\d+)\*n$"), lambda m: AffineExpr(int(m.group(1)), 0)),
    (re.compile(r"^n\+(\d+)$"), lambda m: AffineExpr(1, int(m.group(1)))),
    (re.compile(r"^(\d+)\*n\+(\d+)$"),
     lambda m: AffineExpr(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^n\^([23])$"), lambda m: PowerExpr(int(m.group(1)))),
    (re.compile(r"^ceil\((.+)\*n\)$"), None),  # handled below
    (re.compile(r"^sigma\(n\)$"), lambda m: SigmaExpr(False)),
    (re.compile(r"^n\*sigma\(n\)$"), lambda m: SigmaExpr(True)),
    (re.compile(r"^tau\(n\)$"), lambda m: TauExpr()),
]


def parse_expression(text):
    """Parse one coordinate expression of the deliberately small grammar:
    constants, n, a*n+b, n^2, n^3, ceil(scalar*n), sigma(n), n*sigma(n),
    tau(n)."""
    from .valuation import parse_scalar

    s = text.replace(" ", "")
    for pattern, build in _EXPR_PATTERNS:
        m = pattern.match(s)
        if m:
            if build is None:
                return CeilExpr(parse_scalar(m.group(1)))
            return build(m)
    raise ValueError(f"expression {text!r} is outside the template grammar")


# ---------------------------------------------------------------------------
# filtrations
# ---------------------------------------------------------------------------


class Filtration:
    """Base class: a graded family spec with an evaluator for I_n."""

    def __init__(self, ctx: RingContext):
        self.ctx = ctx
        self._cache: dict[int, MonomialIdeal] = {}

    def ideal_at(self, n) -> MonomialIdeal:
        if n < 0 or n != int(n):
            raise ValueError("filtration index must be a nonnegative integer")
        n = int(n)
        if n == 0:
            return MonomialIdeal.unit(self.ctx)
        cached = self._cache.get(n)
        if cached is None:
            cached = self._compute(n)
            self._cache[n] = cached
        return cached

    def _compute(self, n) -> MonomialIdeal:
        raise NotImplementedError

    def localize(self, coords) -> "LocalizedFiltration":
        return LocalizedFiltration(self, tuple(sorted(set(coords))))

    def truncate(self, level) -> "TruncationFiltration":
        return TruncationFiltration(self, level)

    @property
    def is_rational_discrete_valued(self):
        return False

    @property
    def is_power(self):
        return False

    def describe(self):
        return type(self).__name__


class PowerFiltration(Filtration):
    """I_n = base^n, computed incrementally."""

    def __init__(self, base: MonomialIdeal):
        super().__init__(base.ctx)
        if base.is_zero() or base.is_unit():
            raise ValueError("power filtration needs a proper nonzero base")
        self.base = base

    def _compute(self, n):
        if n == 1:
            return self.base
        return ideal_product(self.ideal_at(n - 1), self.base)

    @property
    def is_power(self):
        return True

    def describe(self):
        return f"powers of {self.base!r}"


class DiscreteValuedFiltration(Filtration):
    """I_n = intersection of I(v_i) at level ceil(n * a_i)."""

    def __init__(self, ctx, pairs):
        super().__init__(ctx)
        pairs = tuple((v, a) for v, a in pairs)
        if not pairs:
            raise ValueError("need at least one (valuation, multiplier) pair")
        for v, a in pairs:
            if v.dim != ctx.dim:
                raise ValueError("valuation dimension mismatch")
            if not isinstance(a, ExactScalar):
                raise TypeError("multipliers must be ExactScalar values")
        self.pairs = pairs

    def _compute(self, n):
        result = None
        for v, a in self.pairs:
            part = valuation_ideal(v, ceil_mul(a, n), self.ctx)
            result = part if result is None else intersect(result, part)
        return result

    @property
    def is_rational_discrete_valued(self):
        return all(a.is_rational for _, a in self.pairs)

    def describe(self):
        parts = [f"w={list(v.weights)} a={a}" for v, a in self.pairs]
        return "discrete valued: " + " and ".join(parts)


class TemplateFiltration(Filtration):
    """Fixed generator shapes with per-coordinate expressions in n."""

    def __init__(self, ctx, generators, tau=None):
        super().__init__(ctx)
        gens = []
        for g in generators:
            if len(g) != ctx.dim:
                raise ValueError("template generator has wrong arity")
            gens.append(tuple(
                e if hasattr(e, "eval") else parse_expression(str(e))
                for e in g))
        if not gens:
            raise ValueError("need at least one generator template")
        self.generators = tuple(gens)
        self.tau = dict(tau) if tau else None

    def _compute(self, n):
        pts = [
            tuple(coord.eval(n, self.tau) for coord in g)
            for g in self.generators
        ]
        return MonomialIdeal(self.ctx, pts)

    def generator_affine_forms(self):
        """Per-generator tuples of (a, b) coordinate forms, or None entries
        where a coordinate is not affine in n."""
        return tuple(
            tuple(coord.affine_form() for coord in g)
            for g in self.generators)

    def describe(self):
        gens = ["(" + ", ".join(str(c) for c in g) + ")" for g in self.generators]
        return "template: " + ", ".join(gens)


class TableFiltration(Filtration):
    """Explicit ideals for n = 1..N; evaluation beyond N is an error."""

    def __init__(self, ctx, ideals):
        super().__init__(ctx)
        ideals = tuple(ideals)
        for I in ideals:
            if I.dim != ctx.dim:
                raise ValueError("table ideal dimension mismatch")
        self.ideals = ideals

    def _compute(self, n):
        if n > len(self.ideals):
            raise TableRangeError(
                f"table filtration only stores n <= {len(self.ideals)}, got {n}")
        return self.ideals[n - 1]

    def describe(self):
        return f"table of {len(self.ideals)} ideals"


class TruncationFiltration(Filtration):
    """I[i]_n = sum over compositions of n into parts <= i of the products,
    via the dynamic program I[i]_n = sum_j ideal_product(I_j, I[i]_{n-j})."""

    def __init__(self, parent: Filtration, level):
        if level < 1:
            raise ValueError("truncation level must be positive")
        super().__init__(parent.ctx)
        self.parent = parent
        self.level = int(level)

    def _compute(self, n):
        if n <= self.level:
            return self.parent.ideal_at(n)
        result = None
        for j in range(1, min(self.level, n) + 1):
            term = ideal_product(self.parent.ideal_at(j), self.ideal_at(n - j))
            result = term if result is None else ideal_sum(result, term)
        return result

    def describe(self):
        return f"truncation at level {self.level} of [{self.parent.describe()}]"


class LocalizedFiltration(Filtration):
    """n -> localize(parent I_n, S): coordinates outside S become units."""

    def __init__(self, parent: Filtration, coords):
        coords = tuple(sorted(set(coords)))
        if not coords:
            raise ValueError("localization needs a nonempty variable subset")
        sub = RingContext(len(coords),
                          tuple(parent.ctx.names[i] for i in coords))
        super().__init__(sub)
        self.parent = parent
        self.coords = coords

    def _compute(self, n):
        return localize(self.parent.ideal_at(n), self.coords)

    def describe(self):
        names = ",".join(self.ctx.names)
        return f"[{self.parent.describe()}] localized at ({names})"


# ---------------------------------------------------------------------------
# filtration-level operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """First pair with I_m * I_n not contained in I_{m+n}."""

    m: int
    n: int


def validate_filtration(F: Filtration, N):
    """Check the graded family axiom for all m + n <= N; return None when it
    holds, else the first violating pair (by total degree, then m)."""
    for s in range(2, N + 1):
        Is = F.ideal_at(s)
        for m in range(1, s // 2 + 1):
            prod = ideal_product(F.ideal_at(m), F.ideal_at(s - m))
            if not Is.contains_ideal(prod):
                return Witness(m, s - m)
    return None


def filtration_dimension(F: Filtration):
    """dim R/I_1 (independent of the level for a filtration)."""
    I1 = F.ideal_at(1)
    if not I1.is_proper():
        raise ValueError("filtration dimension needs a proper nonzero I_1")
    return dim_quotient(I1)
