"""Structure-constant engine for the boost-translation algebra and its
nonrelativistic limit.

Bracket coefficients are polynomials in eps = 1/c^2 over complex
rationals, so antisymmetry and the Jacobi identity are checked as exact
polynomial identities, never as float comparisons.  The limit c to
infinity is taken in two steps: the time-translation generator is
rescaled into a mass generator M = lim eps*hbar*T0, then eps is set to
zero.  Momentum P_i = hbar*T_i against position Q_n = -(hbar/m)*K_n
then closes on the central element, [P_i, Q_n] = -i*hbar*delta_in*I,
while the same recipe on the algebra with the 1/c^2 terms deleted
up front returns zero brackets and no such pair.

Note on signs: with [T0,K_n] = i T_n and [K_i,K_n] = -(i/c^2) J_k, the
Jacobi identity on (T_i, K_i, K_n) forces [T_i, K_n] = +(i/c^2)
delta_in T0, and the contracted [T_i, K_n] = +(i/hbar) delta_in M is
exactly what the -i*hbar*delta_in*I commutator requires.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import MNotCentral, UnknownGenerator

__all__ = [
    "RationalComplex",
    "EpsPoly",
    "BracketTable",
    "JacobiResult",
    "CCRResult",
    "bracket",
    "poincare_table",
    "galilean_table",
    "contract",
    "jacobi_residual",
    "ccr_check",
    "with_flipped_sign",
    "weak_boost_transform",
    "format_combo",
    "format_table",
]

Scalar = Union[int, str, Fraction, float]


def _fraction(value: Scalar, name: str = "value") -> Fraction:
    try:
        out = Fraction(value)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"{name} must be rational, got {value!r}") from exc
    return out


def _positive_fraction(value: Scalar, name: str) -> Fraction:
    out = _fraction(value, name)
    if out <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return out


# ------------------------------------------------------------ scalar field

@dataclass(frozen=True)
class RationalComplex:
    """A complex number with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    def __neg__(self) -> "RationalComplex":
        return RationalComplex(-self.re, -self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __str__(self) -> str:
        def frac(q: Fraction) -> str:
            return str(q)

        if not self:
            return "0"
        if self.im == 0:
            return frac(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        elif self.im.denominator == 1:
            im = f"{self.im}i"
        else:
            im = f"({frac(self.im)})i"
        if self.re == 0:
            return im
        sign = "+" if self.im > 0 else ""
        return f"({frac(self.re)}{sign}{im})"


QC_ZERO = RationalComplex()
QC_ONE = RationalComplex(Fraction(1))
QC_I = RationalComplex(Fraction(0), Fraction(1))


def _qc(re: Scalar = 0, im: Scalar = 0) -> RationalComplex:
    return RationalComplex(_fraction(re), _fraction(im))


# --------------------------------------------------------------- eps powers

@dataclass(frozen=True)
class EpsPoly:
    """Exact polynomial (Laurent, briefly, during rescaling) in eps = 1/c^2.

    `terms` maps degree to a nonzero rational-complex coefficient and is
    stored as a sorted tuple so instances hash and compare by value.
    """

    terms: tuple[tuple[int, RationalComplex], ...] = ()

    @staticmethod
    def of(coeff: RationalComplex, degree: int = 0) -> "EpsPoly":
        return EpsPoly(((degree, coeff),)) if coeff else EpsPoly()

    @staticmethod
    def const(re: Scalar = 0, im: Scalar = 0) -> "EpsPoly":
        return EpsPoly.of(_qc(re, im))

    def __add__(self, other: "EpsPoly") -> "EpsPoly":
        acc = dict(self.terms)
        for d, c in other.terms:
            acc[d] = acc.get(d, QC_ZERO) + c
        return EpsPoly(tuple(sorted((d, c) for d, c in acc.items() if c)))

    def __neg__(self) -> "EpsPoly":
        return EpsPoly(tuple((d, -c) for d, c in self.terms))

    def __sub__(self, other: "EpsPoly") -> "EpsPoly":
        return self + (-other)

    def __mul__(self, other: "EpsPoly") -> "EpsPoly":
        acc: dict[int, RationalComplex] = {}
        for d1, c1 in self.terms:
            for d2, c2 in other.terms:
                acc[d1 + d2] = acc.get(d1 + d2, QC_ZERO) + c1 * c2
        return EpsPoly(tuple(sorted((d, c) for d, c in acc.items() if c)))

    def scale(self, coeff: RationalComplex) -> "EpsPoly":
        return EpsPoly(tuple((d, c * coeff) for d, c in self.terms)) if coeff \
            else EpsPoly()

    def times_eps(self, power: int) -> "EpsPoly":
        return EpsPoly(tuple((d + power, c) for d, c in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def at(self, eps: Fraction) -> RationalComplex:
        out = QC_ZERO
        for d, c in self.terms:
            out = out + c * _qc(eps ** d)
        return out

    def limit(self) -> RationalComplex:
        """Value as eps -> 0; positive degrees vanish."""
        for d, c in self.terms:
            if d < 0:
                raise ValueError(f"diverges as eps -> 0: degree {d} term {c}")
        return dict(self.terms).get(0, QC_ZERO)

    def constant_part(self) -> "EpsPoly":
        return EpsPoly(tuple((d, c) for d, c in self.terms if d == 0))

    def max_magnitude(self) -> float:
        return max((abs(c) for _, c in self.terms), default=0.0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d, c in self.terms:
            if d == 0:
                parts.append(str(c))
            elif d > 0:
                parts.append(f"{c}/c^{2 * d}")
            else:
                parts.append(f"{c}*c^{-2 * d}")
        return " + ".join(parts)


# Linear combinations of generators: label -> coefficient polynomial.
Combo = dict[str, EpsPoly]


def _combo_add(a: Combo, b: Combo) -> Combo:
    out = dict(a)
    for g, p in b.items():
        q = out.get(g, EpsPoly()) + p
        if q.is_zero():
            out.pop(g, None)
        else:
            out[g] = q
    return out


def _combo_scale(combo: Combo, poly: EpsPoly) -> Combo:
    out = {}
    for g, p in combo.items():
        q = p * poly
        if not q.is_zero():
            out[g] = q
    return out


def format_combo(combo: Combo) -> str:
    if not combo:
        return "0"
    parts = []
    for g in sorted(combo):
        poly = combo[g]
        text = str(poly)
        if len(poly.terms) > 1:
            text = f"({text})"
        parts.append(f"{text} {g}")
    return " + ".join(parts)


# -------------------------------------------------------------------- table

@dataclass(frozen=True)
class BracketTable:
    """Antisymmetric bracket over named generators.

    Entries are stored for one orientation only (earlier generator
    first), so antisymmetry holds structurally; the Jacobi identity is
    the nontrivial thing to check.
    """

    name: str
    generators: tuple[str, ...]
    entries: Mapping[tuple[str, str], Combo]
    hbar: Fraction | None = None
    mass: Fraction | None = None

    def index(self, g: str) -> int:
        try:
            return self.generators.index(g)
        except ValueError:
            raise UnknownGenerator(g) from None

    def bracket(self, x: str, y: str) -> Combo:
        ix, iy = self.index(x), self.index(y)
        if ix == iy:
            return {}
        if ix < iy:
            return dict(self.entries.get((x, y), {}))
        flipped = self.entries.get((y, x), {})
        return {g: -p for g, p in flipped.items()}


def bracket(x: str, y: str, table: BracketTable) -> Combo:
    """[x, y] as a linear combination of the table's generators."""
    return table.bracket(x, y)


def _build(name: str, generators: Sequence[str],
           raw: Mapping[tuple[str, str], Combo], **meta) -> BracketTable:
    order = {g: i for i, g in enumerate(generators)}
    entries: dict[tuple[str, str], Combo] = {}
    for (a, b), combo in raw.items():
        if a not in order or b not in order:
            raise UnknownGenerator(a if a not in order else b)
        for g in combo:
            if g not in order:
                raise UnknownGenerator(g)
        combo = {g: p for g, p in combo.items() if not p.is_zero()}
        if not combo:
            continue
        if order[a] > order[b]:
            a, b = b, a
            combo = {g: -p for g, p in combo.items()}
        if (a, b) in entries:
            combo = _combo_add(entries[(a, b)], combo)
        entries[(a, b)] = combo
    return BracketTable(name=name, generators=tuple(generators),
                        entries=entries, **meta)


_LEVI = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
         (3, 2, 1): -1, (1, 3, 2): -1, (2, 1, 3): -1}

GENERATORS = ("J1", "J2", "J3", "K1", "K2", "K3", "T1", "T2", "T3", "T0")


def poincare_table() -> BracketTable:
    """Rotations J, boosts K, space translations T, time translation T0,
    with every 1/c^2 dependence kept symbolic."""
    i0 = EpsPoly.of(QC_I, 0)       # i
    i1 = EpsPoly.of(QC_I, 1)       # i/c^2
    raw: dict[tuple[str, str], Combo] = {}

    for (i, n, k), sign in _LEVI.items():
        if i < n:   # one orientation is enough; _build flips the rest
            s = EpsPoly.of(_qc(0, sign))
            raw[(f"J{i}", f"J{n}")] = {f"J{k}": s}
            raw[(f"J{i}", f"K{n}")] = {f"K{k}": s}
            raw[(f"J{i}", f"T{n}")] = {f"T{k}": s}
            raw[(f"K{i}", f"K{n}")] = {f"J{k}": (-s).times_eps(1)}
    for (i, n, k), sign in _LEVI.items():
        if i > n:   # J acts on vectors from either side
            s = EpsPoly.of(_qc(0, sign))
            raw[(f"J{i}", f"K{n}")] = {f"K{k}": s}
            raw[(f"J{i}", f"T{n}")] = {f"T{k}": s}

    for n in (1, 2, 3):
        raw[("T0", f"K{n}")] = {f"T{n}": i0}
        raw[(f"T{n}", f"K{n}")] = {"T0": i1}

    return _build("poincare", GENERATORS, raw)


def galilean_table() -> BracketTable:
    """The same algebra with every 1/c^2-suppressed term deleted up
    front: boosts commute with each other and with space translations."""
    base = poincare_table()
    raw = {}
    for pair, combo in base.entries.items():
        kept = {g: p.constant_part() for g, p in combo.items()}
        raw[pair] = {g: p for g, p in kept.items() if not p.is_zero()}
    return _build("galilean", base.generators, raw)


def with_flipped_sign(table: BracketTable, x: str, y: str) -> BracketTable:
    """Copy of the table with one bracket negated; breaks Jacobi, which
    makes it a negative control for the residual check."""
    ix, iy = table.index(x), table.index(y)
    if ix > iy:
        x, y = y, x
    if (x, y) not in table.entries:
        raise UnknownGenerator(f"no stored bracket for ({x}, {y})")
    entries = dict(table.entries)
    entries[(x, y)] = {g: -p for g, p in entries[(x, y)].items()}
    return BracketTable(name=f"{table.name}-flipped", generators=table.generators,
                        entries=entries, hbar=table.hbar, mass=table.mass)


# -------------------------------------------------------------- contraction

def contract(table: BracketTable, hbar: Scalar, m: Scalar) -> BracketTable:
    """Nonrelativistic limit: rescale T0 into M = lim eps*hbar*T0, then
    send eps to 0.  M comes out central and the suppressed brackets
    vanish; the central element I rides along as an explicit generator
    so later products stay inside the algebra.
    """
    hb = _positive_fraction(hbar, "hbar")
    mass = _positive_fraction(m, "m")
    if "T0" not in table.generators:
        raise UnknownGenerator("T0")
    inv_hb = EpsPoly.of(_qc(Fraction(1, 1) / hb)).times_eps(-1)

    generators = tuple("M" if g == "T0" else g for g in table.generators) + ("I",)
    raw: dict[tuple[str, str], Combo] = {}
    for (a, b), combo in table.entries.items():
        scaled: Combo = {}
        for g, poly in combo.items():
            if g == "T0":
                scaled["M"] = poly * inv_hb          # T0 = M / (eps hbar)
            else:
                scaled[g] = poly
        for inp in (a, b):
            if inp == "T0":                          # [M, .] = eps hbar [T0, .]
                scaled = {g: p.times_eps(1).scale(_qc(hb)) for g, p in scaled.items()}
        limited = {}
        for g, poly in scaled.items():
            c = poly.limit()
            if c:
                limited[g] = EpsPoly.of(c)
        raw[("M" if a == "T0" else a, "M" if b == "T0" else b)] = limited
    return _build("contracted", generators, raw, hbar=hb, mass=mass)


# -------------------------------------------------------------------- checks

@dataclass(frozen=True)
class JacobiResult:
    residual: float
    worst_triple: tuple[str, str, str] | None = None
    worst_combo: Combo = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.residual == 0.0


def _bracket_with_combo(table: BracketTable, x: str, combo: Combo) -> Combo:
    out: Combo = {}
    for g, poly in combo.items():
        out = _combo_add(out, _combo_scale(table.bracket(x, g), poly))
    return out


def jacobi_residual(table: BracketTable) -> JacobiResult:
    """Largest coefficient magnitude of [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
    over all generator triples, computed exactly; 0 means Lie algebra.
    """
    worst, worst_triple, worst_combo = 0.0, None, {}
    for x, y, z in itertools.combinations(table.generators, 3):
        total = _bracket_with_combo(table, x, table.bracket(y, z))
        total = _combo_add(total, _bracket_with_combo(table, y, table.bracket(z, x)))
        total = _combo_add(total, _bracket_with_combo(table, z, table.bracket(x, y)))
        mag = max((p.max_magnitude() for p in total.values()), default=0.0)
        if mag > worst:
            worst, worst_triple, worst_combo = mag, (x, y, z), total
    return JacobiResult(residual=worst, worst_triple=worst_triple,
                        worst_combo=worst_combo)


@dataclass(frozen=True)
class CCRResult:
    """Brackets of P_i = hbar T_i and Q_n = -(hbar/m) K_n, with any
    mass generator already rewritten as m I."""

    pq: Mapping[tuple[int, int], Combo]
    pp: Mapping[tuple[int, int], Combo]
    qq: Mapping[tuple[int, int], Combo]
    hbar: Fraction
    mass: Fraction
    verdict: str                      # "CCR RECOVERED" | "NO CCR" | "ANOMALOUS"


def ccr_check(table: BracketTable, hbar: Scalar = 1, m: Scalar = 1) -> CCRResult:
    """Test whether momentum against position closes on the identity.

    Works on any table holding T and K generators.  If a mass generator
    M is present it must be central (else MNotCentral) and is replaced
    by m I in the results.
    """
    hb = _positive_fraction(hbar, "hbar")
    mass = _positive_fraction(m, "m")

    if "M" in table.generators:
        for g in table.generators:
            if g != "M" and table.bracket("M", g):
                raise MNotCentral(f"[M, {g}] = {format_combo(table.bracket('M', g))}")

    def substitute_mass(combo: Combo) -> Combo:
        out = dict(combo)
        if "M" in out:
            extra = out.pop("M").scale(_qc(mass))
            out = _combo_add(out, {"I": extra})
        return out

    pq_scale = EpsPoly.of(_qc(-hb * hb / mass))
    pp_scale = EpsPoly.of(_qc(hb * hb))
    qq_scale = EpsPoly.of(_qc(hb * hb / (mass * mass)))

    pq, pp, qq = {}, {}, {}
    for i in (1, 2, 3):
        for n in (1, 2, 3):
            pq[(i, n)] = substitute_mass(
                _combo_scale(table.bracket(f"T{i}", f"K{n}"), pq_scale))
            pp[(i, n)] = substitute_mass(
                _combo_scale(table.bracket(f"T{i}", f"T{n}"), pp_scale))
            qq[(i, n)] = substitute_mass(
                _combo_scale(table.bracket(f"K{i}", f"K{n}"), qq_scale))

    target = EpsPoly.of(_qc(0, -hb))
    def is_ccr() -> bool:
        for i in (1, 2, 3):
            for n in (1, 2, 3):
                want = {"I": target} if i == n else {}
                if pq[(i, n)] != want or pp[(i, n)] or qq[(i, n)]:
                    return False
        return True

    if is_ccr():
        verdict = "CCR RECOVERED"
    elif all(not pq[k] and not pp[k] and not qq[k] for k in pq):
        verdict = "NO CCR"
    else:
        verdict = "ANOMALOUS"
    return CCRResult(pq=pq, pp=pp, qq=qq, hbar=hb, mass=mass, verdict=verdict)


# ------------------------------------------------------------- weak boosts

def weak_boost_transform(t: float, x: float, v: float,
                         c: float) -> tuple[float, float]:
    """First-order boost T = t - v x / c^2, X = x - v t (no gamma).

    With c = inf this is the absolute-time transform (t, x - v t); at
    finite c the mixing of x into T is what survives into the
    contracted bracket between T and K.
    """
    if not (c > 0):
        raise ValueError(f"speed of light must be positive, got {c}")
    shift = 0.0 if math.isinf(c) else v * x / (c * c)
    return t - shift, x - v * t


# ---------------------------------------------------------------- rendering

def format_table(table: BracketTable, c: Scalar | None = None) -> str:
    """Human-readable nonzero brackets; pass c to evaluate eps = 1/c^2."""
    lines = [f"# {table.name} ({len(table.generators)} generators)"]
    eps = None if c is None else Fraction(1, 1) / (_positive_fraction(c, "c") ** 2)
    for (a, b) in sorted(table.entries, key=lambda p: (table.index(p[0]),
                                                       table.index(p[1]))):
        combo = table.entries[(a, b)]
        if eps is not None:
            combo = {g: EpsPoly.of(p.at(eps)) for g, p in combo.items()}
            combo = {g: p for g, p in combo.items() if not p.is_zero()}
        lines.append(f"[{a},{b}] = {format_combo(combo)}")
    return "\n".join(lines)
