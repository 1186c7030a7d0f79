"""Diagonal finite abelian group actions on projective space.

A generator of order e with weight row w scales coordinate j by the e-th
root of unity raised to w[j].  The convention throughout: at least one
coordinate carries weight 0 for every generator, so the matrix group and its
image in PGL have the same order and quotient degrees stay honest.  The
constructor rejects generator sets violating this.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import lattice
from .poly import LaurentPoly


@dataclass(frozen=True)
class DiagonalAction:
    n_vars: int
    generators: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        gens = []
        for order, weights in self.generators:
            if order < 1:
                raise ValueError("generator order must be positive")
            if len(weights) != self.n_vars:
                raise ValueError(
                    f"weight row has length {len(weights)}, expected {self.n_vars}")
            gens.append((order, tuple(w % order for w in weights)))
        object.__setattr__(self, "generators", tuple(gens))
        if not self.trivial_coordinates():
            raise ValueError(
                "no coordinate has trivial character for every generator; "
                "rescale the generators so a fixed coordinate hyperplane exists")

    @classmethod
    def trivial(cls, n_vars: int) -> DiagonalAction:
        return cls(n_vars, ())

    def is_trivial(self) -> bool:
        return all(all(w == 0 for w in row) for _, row in self.generators)

    # -- characters ---------------------------------------------------------

    def trivial_coordinates(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n_vars)
                     if all(row[j] == 0 for _, row in self.generators))

    def default_chart(self) -> int:
        return self.trivial_coordinates()[-1]

    def character(self, exps: tuple[int, ...], chart: int | None = None) -> tuple[int, ...]:
        """Character of a (Laurent) monomial: one residue per generator.

        ``exps`` has length n_vars, or n_vars - 1 with the chart coordinate
        omitted (its weight is zero anyway).
        """
        if chart is not None and len(exps) == self.n_vars - 1:
            exps = exps[:chart] + (0,) + exps[chart:]
        if len(exps) != self.n_vars:
            raise ValueError("exponent vector length mismatch")
        return tuple(sum(w * k for w, k in zip(row, exps)) % order
                     for order, row in self.generators)

    def is_invariant(self, F: LaurentPoly):
        """(True, None) or (False, first offending exponent vector)."""
        if len(F.vars) != self.n_vars:
            raise ValueError("polynomial ambient does not match the action")
        for e, _ in F.sorted_terms():
            if any(self.character(e)):
                return False, e
        return True, None

    # -- invariant lattice ----------------------------------------------------

    def invariant_lattice(self, chart: int | None = None) -> tuple[tuple[int, ...], ...]:
        """HNF basis of the lattice of invariant Laurent monomials in the
        non-chart coordinates."""
        c = self.default_chart() if chart is None else chart
        if any(row[c] for _, row in self.generators):
            raise ValueError(f"coordinate {c} does not have trivial character")
        if not self.generators:
            return lattice.identity(self.n_vars - 1)
        W = tuple(tuple(w for j, w in enumerate(row) if j != c)
                  for _, row in self.generators)
        orders = tuple(order for order, _ in self.generators)
        return lattice.congruence_kernel(W, orders)

    def group_order(self) -> int:
        """Order of the induced projective group (= invariant lattice index)."""
        if not self.generators:
            return 1
        return lattice.lattice_index(self.invariant_lattice())


def common_chart(a: DiagonalAction, b: DiagonalAction) -> int:
    shared = set(a.trivial_coordinates()) & set(b.trivial_coordinates())
    if not shared:
        raise ValueError("actions share no coordinate of trivial character")
    return max(shared)


def subgroup_index(action: DiagonalAction, subaction: DiagonalAction) -> int:
    """Index [G : G1] computed as the lattice index of invariants.

    ``subaction``'s invariant lattice must contain ``action``'s.
    """
    if action.n_vars != subaction.n_vars:
        raise ValueError("ambient dimension mismatch")
    c = common_chart(action, subaction)
    L_act = action.invariant_lattice(c)
    L_sub = subaction.invariant_lattice(c)
    for row in L_act:
        if not lattice.lattice_contains(L_sub, row):
            raise ValueError("containment violated: not a subgroup situation")
    big, small = action.group_order(), subaction.group_order()
    if big % small:
        raise ArithmeticError("lattice indices are not compatible")
    return big // small


@dataclass(frozen=True)
class InvariantHypersurface:
    """A homogeneous hypersurface of degree >= 2 preserved by a diagonal action."""

    F: LaurentPoly
    action: DiagonalAction

    def __post_init__(self):
        if len(self.F.vars) != self.action.n_vars:
            raise ValueError("polynomial ambient does not match the action")
        d = self.F.homogeneous_degree()
        if d is None:
            raise ValueError("defining polynomial must be homogeneous")
        if d < 2:
            raise ValueError("hypersurface degree must be at least 2")
        if not self.F.is_polynomial():
            raise ValueError("defining polynomial must have nonnegative exponents")
        ok, offender = self.action.is_invariant(self.F)
        if not ok:
            raise ValueError(f"polynomial is not invariant; offending exponent {offender}")

    @property
    def degree(self) -> int:
        return self.F.homogeneous_degree()
