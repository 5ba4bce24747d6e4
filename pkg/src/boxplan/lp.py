"""Exact rational linear programming via two-phase primal simplex.

Small dense solver for the planners' path programs.  All arithmetic is
exact; gmpy2 rationals are used internally when available since they
pivot several times faster than ``fractions.Fraction``, with Fractions
at the API boundary either way.

Pivoting uses Dantzig's rule and falls back to Bland's rule after a run
of degenerate pivots, which guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geom.base import rat, RatLike

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Q = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_DEGENERATE_RUN_LIMIT = 30
_MAX_PIVOTS = 20000


@dataclass
class LpResult:
    status: str
    value: Fraction | None
    values: dict[str, Fraction]

    def __getitem__(self, name: str) -> Fraction:
        return self.values[name]


class LpProblem:
    """minimize c.x subject to rows A.x <= b; variables nonnegative
    unless declared free."""

    def __init__(self) -> None:
        self._cols: dict[str, int | tuple[int, int]] = {}
        self._ncols = 0
        self._rows: list[tuple[dict[int, Fraction], Fraction]] = []
        self._objective: dict[int, Fraction] = {}
        self._obj_const = Fraction(0)

    def var(self, name: str, free: bool = False) -> str:
        if name in self._cols:
            raise ValueError(f"variable {name!r} already declared")
        if free:
            self._cols[name] = (self._ncols, self._ncols + 1)
            self._ncols += 2
        else:
            self._cols[name] = self._ncols
            self._ncols += 1
        return name

    def _expand(self, coeffs: dict[str, RatLike]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for name, c in coeffs.items():
            c = rat(c)
            if c == 0:
                continue
            col = self._cols[name]
            if isinstance(col, tuple):
                pos, neg = col
                out[pos] = out.get(pos, Fraction(0)) + c
                out[neg] = out.get(neg, Fraction(0)) - c
            else:
                out[col] = out.get(col, Fraction(0)) + c
        return out

    def add_leq(self, coeffs: dict[str, RatLike], rhs: RatLike) -> None:
        self._rows.append((self._expand(coeffs), rat(rhs)))

    def add_abs_leq(self, bound: str, coeffs: dict[str, RatLike], const: RatLike = 0) -> None:
        """Constrain <coeffs.x + const> to [-bound, bound]."""
        const = rat(const)
        pos = dict(coeffs)
        pos[bound] = rat(pos.get(bound, 0)) - 1
        self.add_leq(pos, -const)
        neg = {n: -rat(c) for n, c in coeffs.items()}
        neg[bound] = neg.get(bound, Fraction(0)) - 1
        self.add_leq(neg, const)

    def minimize(self, coeffs: dict[str, RatLike], const: RatLike = 0) -> None:
        self._objective = self._expand(coeffs)
        self._obj_const = rat(const)

    def solve(self) -> LpResult:
        n = self._ncols
        m = len(self._rows)
        zero, one = _Q(0), _Q(1)

        # rows with nonnegative rhs take a slack as basis; the rest are
        # negated and take an artificial
        ncols = n + m  # structurals + slacks
        art_of_row = {}
        for i, (_, rhs) in enumerate(self._rows):
            if rhs < 0:
                art_of_row[i] = ncols
                ncols += 1
        total = ncols + 1  # + rhs cell

        tableau: list[list] = []
        basis: list[int] = []
        for i, (coeffs, rhs) in enumerate(self._rows):
            row = [zero] * total
            sign = 1 if rhs >= 0 else -1
            for j, c in coeffs.items():
                row[j] = _Q(sign * c)
            row[n + i] = _Q(sign)
            row[-1] = _Q(sign * rhs)
            if i in art_of_row:
                row[art_of_row[i]] = one
                basis.append(art_of_row[i])
            else:
                basis.append(n + i)
            tableau.append(row)

        artificials = set(art_of_row.values())

        if artificials:
            cost = [zero] * total
            for col in artificials:
                cost[col] = one
            self._reduce_cost_row(cost, tableau, basis)
            self._iterate(tableau, basis, cost, banned=frozenset())
            if -cost[-1] > 0:
                return LpResult(INFEASIBLE, None, {})
            self._expel_artificials(tableau, basis, artificials, n + m)

        cost = [zero] * total
        for j, c in self._objective.items():
            cost[j] = _Q(c)
        self._reduce_cost_row(cost, tableau, basis)
        if not self._iterate(tableau, basis, cost, banned=frozenset(artificials)):
            return LpResult(UNBOUNDED, None, {})

        solution = [Fraction(0)] * n
        for i, b in enumerate(basis):
            if b < n:
                solution[b] = Fraction(tableau[i][-1])
        values: dict[str, Fraction] = {}
        for name, col in self._cols.items():
            if isinstance(col, tuple):
                values[name] = solution[col[0]] - solution[col[1]]
            else:
                values[name] = solution[col]
        value = Fraction(-cost[-1]) + self._obj_const
        return LpResult(OPTIMAL, value, values)

    @staticmethod
    def _reduce_cost_row(cost: list, tableau: list[list], basis: list[int]) -> None:
        for i, b in enumerate(basis):
            cb = cost[b]
            if cb != 0:
                row = tableau[i]
                for j, rv in enumerate(row):
                    if rv != 0:
                        cost[j] -= cb * rv

    @staticmethod
    def _iterate(tableau: list[list], basis: list[int], cost: list,
                 banned: frozenset[int]) -> bool:
        """Run simplex to optimality; False means unbounded."""
        ncols = len(cost) - 1
        degenerate_run = 0
        bland = False
        for _ in range(_MAX_PIVOTS):
            enter = -1
            if bland:
                for j in range(ncols):
                    if j not in banned and cost[j] < 0:
                        enter = j
                        break
            else:
                best = 0
                for j in range(ncols):
                    if j not in banned and cost[j] < best:
                        best = cost[j]
                        enter = j
            if enter < 0:
                return True
            leave = -1
            best_ratio = None
            for i, row in enumerate(tableau):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio and basis[i] < basis[leave])):
                        best_ratio = ratio
                        leave = i
            if leave < 0:
                return False
            if best_ratio == 0:
                degenerate_run += 1
                if degenerate_run > _DEGENERATE_RUN_LIMIT:
                    bland = True
            else:
                degenerate_run = 0
            _pivot(tableau, cost, leave, enter)
            basis[leave] = enter
        raise AssertionError("simplex failed to terminate")

    @staticmethod
    def _expel_artificials(tableau: list[list], basis: list[int],
                           artificials: set[int], nreal: int) -> None:
        """Pivot zero-valued artificial basics out, dropping redundant rows."""
        drop: list[int] = []
        for i in range(len(tableau)):
            if basis[i] not in artificials:
                continue
            row = tableau[i]
            enter = next((j for j in range(nreal) if row[j] != 0), None)
            if enter is None:
                drop.append(i)
            else:
                _pivot(tableau, None, i, enter)
                basis[i] = enter
        for i in reversed(drop):
            del tableau[i]
            del basis[i]


def _pivot(tableau: list[list], cost: list | None, leave: int, enter: int) -> None:
    prow = tableau[leave]
    inv = 1 / prow[enter]
    if inv != 1:
        tableau[leave] = prow = [v * inv for v in prow]
    targets = tableau if cost is None else tableau + [cost]
    for row in targets:
        if row is prow:
            continue
        f = row[enter]
        if f != 0:
            for j, pv in enumerate(prow):
                if pv != 0:
                    row[j] -= f * pv
