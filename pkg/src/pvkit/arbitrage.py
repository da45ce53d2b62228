"""Arbitrage screening of finitely many equal-value quotes on a time grid.

A :class:`Quote` asserts that two discrete cash flows trade at the same
price.  Given quotes whose atoms live on a common finite grid containing
time 0, exactly one of the following holds:

* some strictly positive price vector ``p`` over the grid reprices every
  quote (``D p = 0`` where each row of ``D`` is right-minus-left), or
* some linear combination of the quote differences is a nonnegative,
  nonzero flow -- an arbitrage: a costless position with a free lunch.

:func:`check` decides this constructively with an exact rational LP
(maximize the minimum price component subject to repricing and a scale
cap), so the verdict boundary is exact and every certificate replays
exactly.  :func:`implied_curve` additionally demands that the repricing
vector is unique up to scale and returns it as a discount curve.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curves import DEFAULT_HORIZON, SpotGridCurve
from .errors import DomainError
from .measures import Atom, CashFlow, add, scale
from .simplex import solve_lp

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Quote:
    """Two discrete flows asserted to trade at the same price."""

    left: CashFlow
    right: CashFlow

    def __post_init__(self):
        for side, flow in (("left", self.left), ("right", self.right)):
            if flow.pieces:
                raise DomainError(f"quote {side} side must be atoms-only")


@dataclass(frozen=True)
class QuoteSet:
    """Quotes over a sorted finite grid of times that includes 0."""

    grid: tuple[float, ...]
    quotes: tuple[Quote, ...]

    def __post_init__(self):
        g = tuple(float(t) for t in self.grid)
        if not g or g[0] != 0.0:
            raise DomainError("grid must start at time 0")
        if any(not b > a for a, b in zip(g, g[1:])):
            raise DomainError("grid times must be strictly increasing")
        allowed = set(g)
        for k, q in enumerate(self.quotes):
            for side in (q.left, q.right):
                for atom in side.atoms:
                    if atom.time not in allowed:
                        raise DomainError(
                            f"quote {k} has an atom at t={atom.time}, not on the grid"
                        )
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "quotes", tuple(self.quotes))

    def difference_matrix(self) -> list[list[Fraction]]:
        """Rows of right-minus-left grid coordinates, exact rationals."""
        index = {t: j for j, t in enumerate(self.grid)}
        rows = []
        for q in self.quotes:
            row = [_ZERO] * len(self.grid)
            for atom in q.right.atoms:
                row[index[atom.time]] += Fraction(atom.amount)
            for atom in q.left.atoms:
                row[index[atom.time]] -= Fraction(atom.amount)
            rows.append(row)
        return rows


@dataclass(frozen=True)
class ArbitrageFree:
    """A strictly positive repricing vector, normalized to price 1 at t=0."""

    grid: tuple[float, ...]
    implied: tuple[float, ...]


@dataclass(frozen=True)
class Arbitrage:
    """Per-quote weights whose difference combination is >= 0 and nonzero."""

    coefficients: tuple[float, ...]
    portfolio: CashFlow


def check(quote_set: QuoteSet) -> ArbitrageFree | Arbitrage:
    """Decide arbitrage-freeness of the quotes, with a certificate either way.

    With no quotes at all, any price vector works: the all-equal vector is
    returned by convention.  Otherwise an exact LP maximizes ``s`` subject
    to ``D (s*1 + q) = 0``, ``s + q_j + r_j = 1``, ``q, r >= 0``: its
    optimum is the best minimum component among repricing vectors capped
    at 1, so ``s > 0`` yields the positive vector and ``s = 0`` makes the
    quote-row duals an exact arbitrage certificate.
    """
    g = len(quote_set.grid)
    if not quote_set.quotes:
        return ArbitrageFree(quote_set.grid, tuple(1.0 for _ in range(g)))
    D = quote_set.difference_matrix()
    m = len(D)
    # variables: s+, s-, q_0..q_{g-1}, r_0..r_{g-1}
    n = 2 + 2 * g
    A = []
    b = []
    for i in range(m):
        s_i = sum(D[i], _ZERO)
        A.append([s_i, -s_i] + list(D[i]) + [_ZERO] * g)
        b.append(_ZERO)
    for j in range(g):
        row = [Fraction(1), Fraction(-1)] + [_ZERO] * (2 * g)
        row[2 + j] = Fraction(1)
        row[2 + g + j] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))
    c = [Fraction(-1), Fraction(1)] + [_ZERO] * (2 * g)
    res = solve_lp(A, b, c)
    if res.status != "optimal":
        raise RuntimeError(f"repricing LP unexpectedly {res.status}")
    s_star = res.x[0] - res.x[1]
    if s_star > 0:
        p = [s_star + res.x[2 + j] for j in range(g)]
        assert all(sum(D[i][j] * p[j] for j in range(g)) == 0 for i in range(m))
        p0 = p[0]
        return ArbitrageFree(
            quote_set.grid, tuple(float(pj / p0) for pj in p)
        )
    cert = [-res.duals[i] for i in range(m)]
    combo = [sum(cert[i] * D[i][j] for i in range(m)) for j in range(g)]
    if not (all(v >= 0 for v in combo) and any(v > 0 for v in combo)):
        cert = [-w for w in cert]
        combo = [-v for v in combo]
    if not (all(v >= 0 for v in combo) and any(v > 0 for v in combo)):
        raise RuntimeError("certificate extraction failed")  # unreachable
    unit = max(abs(w) for w in cert)
    cert = [w / unit for w in cert]
    portfolio = CashFlow(
        tuple(
            Atom(t, float(v / unit))
            for t, v in zip(quote_set.grid, combo)
            if v != 0
        )
    )
    return Arbitrage(tuple(float(w) for w in cert), portfolio)


class NonUniqueImpliedPricesError(DomainError):
    """Quotes pin prices only up to extra degrees of freedom."""

    def __init__(self, free_directions):
        self.free_directions = tuple(tuple(v) for v in free_directions)
        super().__init__(
            "implied prices are not unique; free directions over the grid: "
            + "; ".join(str(v) for v in self.free_directions)
        )


def _null_space(D, g):
    """Exact basis of {x : D x = 0} via rational row reduction."""
    rows = [list(r) for r in D]
    pivots = []
    r = 0
    for col in range(g):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), -1)
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [v / rows[r][col] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * p for a, p in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free_cols = [j for j in range(g) if j not in pivots]
    basis = []
    for fc in free_cols:
        v = [_ZERO] * g
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def implied_curve(quote_set: QuoteSet) -> SpotGridCurve:
    """The unique implied discount curve through the grid prices.

    Requires an arbitrage-free quote set whose repricing vector is unique
    up to scale (difference matrix rank = grid size - 1).  Raises
    :class:`NonUniqueImpliedPricesError` listing the residual degrees of
    freedom otherwise; the reported directions keep the t=0 price fixed.
    """
    verdict = check(quote_set)
    if isinstance(verdict, Arbitrage):
        raise DomainError("quotes admit arbitrage; no implied curve exists")
    g = len(quote_set.grid)
    basis = _null_space(quote_set.difference_matrix(), g)
    if len(basis) > 1:
        p = [Fraction(v) for v in verdict.implied]
        free = []
        for v in basis:
            adj = [vj - (v[0] / p[0]) * pj for vj, pj in zip(v, p)]
            if any(x != 0 for x in adj):
                free.append([float(x) for x in adj])
        if free:
            raise NonUniqueImpliedPricesError(free)
    knots = tuple(zip(quote_set.grid, verdict.implied))
    horizon = max(DEFAULT_HORIZON, quote_set.grid[-1])
    return SpotGridCurve(knots, horizon=horizon)


@dataclass(frozen=True)
class ClosureReport:
    trials: int
    combination_failures: int
    inversion_failures: int
    scaling_failures: int

    @property
    def ok(self) -> bool:
        return (
            self.combination_failures == 0
            and self.inversion_failures == 0
            and self.scaling_failures == 0
        )


def _implied_value(grid, prices, flow: CashFlow) -> float:
    table = dict(zip(grid, prices))
    return float(sum(a.amount * table[a.time] for a in flow.atoms))


def closure_probe(quote_set: QuoteSet, trials: int = 200,
                  seed: int = 0) -> ClosureReport:
    """Randomized consistency check of the equal-value relation.

    Requires an arbitrage-free quote set.  Draws random integer
    combinations of quotes, rebuilds both sides through the measure
    algebra, and verifies the implied prices still agree; also checks
    behavior under negation and scalar multiples.  Slack is 1e-9 scaled
    by the position size.
    """
    verdict = check(quote_set)
    if isinstance(verdict, Arbitrage):
        raise DomainError("closure probe needs an arbitrage-free quote set")
    grid, prices = verdict.grid, verdict.implied
    rng = np.random.default_rng(seed)
    comb = inv = scl = 0
    quotes = quote_set.quotes
    for _ in range(trials):
        if quotes:
            coeffs = rng.integers(-3, 4, size=len(quotes))
            left = CashFlow()
            right = CashFlow()
            for w, q in zip(coeffs, quotes):
                left = add(left, scale(q.left, float(w)))
                right = add(right, scale(q.right, float(w)))
            size = 1.0 + sum(abs(a.amount) for a in (left + right).atoms)
            tol = 1e-9 * size * max(prices)
            if abs(_implied_value(grid, prices, left) - _implied_value(grid, prices, right)) > tol:
                comb += 1
            if abs(_implied_value(grid, prices, -left) + _implied_value(grid, prices, left)) > tol:
                inv += 1
            k = float(rng.uniform(-3.0, 3.0))
            if abs(
                _implied_value(grid, prices, scale(left, k))
                - k * _implied_value(grid, prices, left)
            ) > tol * (1.0 + abs(k)):
                scl += 1
    return ClosureReport(trials, comb, inv, scl)
