"""Cash flows as finite signed measures on the nonnegative time axis.

A :class:`CashFlow` is a finite signed Borel measure with two layers:

* point payments (atoms): a signed mass at a time ``t >= 0``;
* payment streams: piecewise-polynomial densities on half-open
  intervals ``[start, end)``, polynomial degree <= 8.

Interval endpoints of density pieces carry no mass, so the half-open
convention is a pure bookkeeping choice; only atoms can sit on a boundary
in a way that matters.  All values are plain floats and every operation
returns a new, normalized object: zero atoms and zero pieces are dropped,
atoms at bitwise-equal times are merged, pieces are sorted and adjacent
pieces with identical coefficients are fused.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from . import poly
from .errors import DomainError
from .quadrature import Bracket, bracketed_integral

CLOSURES = ("[]", "[)", "(]", "()")


def _check_finite(x: float, what: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{what} must be finite, got {x!r}")
    return x


@dataclass(frozen=True, slots=True)
class Atom:
    """A point payment: signed amount at time >= 0."""

    time: float
    amount: float

    def __post_init__(self):
        t = _check_finite(self.time, "atom time")
        if t < 0.0:
            raise DomainError(f"atom time must be >= 0, got {t}")
        object.__setattr__(self, "time", t)
        object.__setattr__(self, "amount", _check_finite(self.amount, "atom amount"))


@dataclass(frozen=True, slots=True)
class DensityPiece:
    """A polynomial payment rate on [start, end), constant-first coefficients."""

    start: float
    end: float
    coeffs: tuple[float, ...]

    def __post_init__(self):
        a = _check_finite(self.start, "piece start")
        b = _check_finite(self.end, "piece end")
        if a < 0.0:
            raise DomainError(f"piece start must be >= 0, got {a}")
        if not a < b:
            raise DomainError(f"piece needs start < end, got [{a}, {b})")
        c = tuple(_check_finite(x, "piece coefficient") for x in self.coeffs)
        if len(poly.trim(c)) > poly.MAX_DEGREE + 1:
            raise DomainError(f"density degree is capped at {poly.MAX_DEGREE}")
        object.__setattr__(self, "start", a)
        object.__setattr__(self, "end", b)
        object.__setattr__(self, "coeffs", c)

    def mass(self) -> float:
        return poly.definite_integral(self.coeffs, self.start, self.end)


def _normalize_atoms(atoms: Iterable[Atom]) -> tuple[Atom, ...]:
    merged: dict[float, float] = {}
    for a in atoms:
        merged[a.time] = merged.get(a.time, 0.0) + a.amount
    return tuple(
        Atom(t, c) for t, c in sorted(merged.items()) if c != 0.0
    )


def _normalize_pieces(pieces: Iterable[DensityPiece]) -> tuple[DensityPiece, ...]:
    kept = [p for p in pieces if not poly.is_zero(p.coeffs)]
    kept.sort(key=lambda p: p.start)
    for prev, nxt in zip(kept, kept[1:]):
        if nxt.start < prev.end:
            raise DomainError(
                f"density pieces overlap: [{prev.start}, {prev.end}) and "
                f"[{nxt.start}, {nxt.end})"
            )
    out: list[DensityPiece] = []
    for p in kept:
        c = poly.trim(p.coeffs)
        if out and out[-1].end == p.start and out[-1].coeffs == c:
            out[-1] = DensityPiece(out[-1].start, p.end, c)
        else:
            out.append(DensityPiece(p.start, p.end, c))
    return tuple(out)


@dataclass(frozen=True)
class CashFlow:
    atoms: tuple[Atom, ...] = ()
    pieces: tuple[DensityPiece, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", _normalize_atoms(self.atoms))
        object.__setattr__(self, "pieces", _normalize_pieces(self.pieces))

    @property
    def is_null(self) -> bool:
        return not self.atoms and not self.pieces

    def support_bounds(self) -> tuple[float, float] | None:
        """(inf, sup) of the support, or None for the null flow."""
        if self.is_null:
            return None
        times = [a.time for a in self.atoms]
        los = times + [p.start for p in self.pieces]
        his = times + [p.end for p in self.pieces]
        return (min(los), max(his))

    def __neg__(self) -> "CashFlow":
        return scale(self, -1.0)

    def __add__(self, other: "CashFlow") -> "CashFlow":
        return add(self, other)

    def __sub__(self, other: "CashFlow") -> "CashFlow":
        return add(self, scale(other, -1.0))

    def __rmul__(self, k: float) -> "CashFlow":
        return scale(self, k)


def dirac(time: float, amount: float = 1.0) -> CashFlow:
    """A single point payment."""
    return CashFlow(atoms=(Atom(time, amount),))


def density(start: float, end: float, coeffs=(1.0,)) -> CashFlow:
    """A single polynomial-rate stream on [start, end)."""
    return CashFlow(pieces=(DensityPiece(start, end, tuple(coeffs)),))


NULL = CashFlow()


def add(a: CashFlow, b: CashFlow) -> CashFlow:
    atoms = a.atoms + b.atoms
    if not a.pieces or not b.pieces:
        return CashFlow(atoms, a.pieces + b.pieces)
    # split both density layers on the union of their breakpoints, then
    # sum coefficients segment by segment
    cuts = sorted(
        {p.start for p in a.pieces + b.pieces} | {p.end for p in a.pieces + b.pieces}
    )
    out: list[DensityPiece] = []
    for lo, hi in zip(cuts, cuts[1:]):
        c: tuple[float, ...] = ()
        for p in a.pieces + b.pieces:
            if p.start <= lo and hi <= p.end:
                c = poly.add(c, p.coeffs)
        if not poly.is_zero(c):
            out.append(DensityPiece(lo, hi, c))
    return CashFlow(atoms, tuple(out))


def scale(a: CashFlow, k: float) -> CashFlow:
    k = _check_finite(k, "scalar")
    if k == 0.0:
        return NULL
    return CashFlow(
        tuple(Atom(x.time, k * x.amount) for x in a.atoms),
        tuple(DensityPiece(p.start, p.end, poly.scale(p.coeffs, k)) for p in a.pieces),
    )


def translate(a: CashFlow, offset: float) -> CashFlow:
    """Shift the whole flow in time; the result must stay on t >= 0."""
    offset = _check_finite(offset, "offset")
    return CashFlow(
        tuple(Atom(x.time + offset, x.amount) for x in a.atoms),
        tuple(
            DensityPiece(
                p.start + offset, p.end + offset, poly.taylor_shift(p.coeffs, -offset)
            )
            for p in a.pieces
        ),
    )


@dataclass(frozen=True)
class JordanDecomposition:
    """Mutually singular nonnegative parts with a = positive - negative."""

    positive: CashFlow
    negative: CashFlow


def jordan(a: CashFlow) -> JordanDecomposition:
    pos_atoms = tuple(x for x in a.atoms if x.amount > 0)
    neg_atoms = tuple(Atom(x.time, -x.amount) for x in a.atoms if x.amount < 0)
    pos_pieces: list[DensityPiece] = []
    neg_pieces: list[DensityPiece] = []
    for p in a.pieces:
        cuts = (p.start,) + poly.sign_changes(p.coeffs, p.start, p.end) + (p.end,)
        for lo, hi in zip(cuts, cuts[1:]):
            s = poly._interval_sign(p.coeffs, lo, hi)
            if s > 0:
                pos_pieces.append(DensityPiece(lo, hi, p.coeffs))
            elif s < 0:
                neg_pieces.append(DensityPiece(lo, hi, poly.negate(p.coeffs)))
    return JordanDecomposition(
        CashFlow(pos_atoms, tuple(pos_pieces)),
        CashFlow(neg_atoms, tuple(neg_pieces)),
    )


@dataclass(frozen=True)
class LebesgueDecomposition:
    """a = absolutely_continuous + singular w.r.t. Lebesgue measure."""

    absolutely_continuous: CashFlow
    singular: CashFlow


def lebesgue(a: CashFlow) -> LebesgueDecomposition:
    return LebesgueDecomposition(CashFlow((), a.pieces), CashFlow(a.atoms, ()))


def _check_interval(start: float, end: float, closure: str):
    if closure not in CLOSURES:
        raise DomainError(f"closure must be one of {CLOSURES}, got {closure!r}")
    start = float(start)
    end = float(end)
    if math.isnan(start) or math.isnan(end):
        raise DomainError("interval ends must not be NaN")
    if start > end:
        raise DomainError(f"interval needs start <= end, got [{start}, {end}]")
    return start, end


def trace(a: CashFlow, start: float, end: float, closure: str = "[]") -> CashFlow:
    """Restriction of the flow to an interval with the given end convention.

    ``closure`` is one of ``"[]"``, ``"[)"``, ``"(]"``, ``"()"``.  Density
    pieces are clipped to the open interior either way (their endpoints
    carry no mass); the convention decides which boundary atoms survive.
    """
    start, end = _check_interval(start, end, closure)
    left_closed = closure[0] == "["
    right_closed = closure[1] == "]"
    atoms = tuple(
        x
        for x in a.atoms
        if (start < x.time or (left_closed and x.time == start))
        and (x.time < end or (right_closed and x.time == end))
    )
    pieces = []
    for p in a.pieces:
        lo = max(p.start, start)
        hi = min(p.end, end)
        if lo < hi:
            pieces.append(DensityPiece(lo, hi, p.coeffs))
    return CashFlow(atoms, tuple(pieces))


def total_mass(a: CashFlow) -> float:
    """Signed total a(R+): atom amounts plus exact density integrals."""
    return math.fsum(
        [x.amount for x in a.atoms] + [p.mass() for p in a.pieces]
    )


def mass(a: CashFlow, start: float, end: float, closure: str = "[]") -> float:
    """Signed mass of an interval under the given end convention."""
    return total_mass(trace(a, start, end, closure))


def distribution(a: CashFlow, t: float) -> float:
    """F(t) = mass of [0, t]; F(0) is the atom mass at zero."""
    if t < 0.0:
        return 0.0
    return mass(a, 0.0, t, "[]")


def total_variation(a: CashFlow) -> float:
    j = jordan(a)
    return total_mass(j.positive) + total_mass(j.negative)


def is_nonnegative(a: CashFlow) -> bool:
    """True when the flow is a nonnegative measure."""
    return jordan(a).negative.is_null


def integrate(fn: Callable[[float], float], a: CashFlow, tol: float = 1e-10) -> Bracket:
    """Enclose ``integral fn d(a)`` for continuous bounded ``fn``.

    The atom part is an exact finite sum; the density part is enclosed by
    adaptive bracketed quadrature with total width <= tol.
    """
    atom_part = math.fsum(x.amount * fn(x.time) for x in a.atoms)
    dens = bracketed_integral(fn, [(p.start, p.end, p.coeffs) for p in a.pieces], tol)
    return Bracket(atom_part + dens.value, atom_part + dens.lower, atom_part + dens.upper)
