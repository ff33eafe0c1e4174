"""Membership in the exponent monoid, its algebra, and the intersection ring.

Two independent routes are kept side by side throughout:

* the *combinatorial* route checks integer inequalities on exponent data
  (:func:`monoid_member`, :func:`in_r_star`);
* the *expansion* route expands everything down to ambient monomials and
  inspects signs (:func:`monoid_member_oracle`, :func:`in_r_oracle`).

Agreement of the routes is a theorem for valid configurations; the test
suite exercises it exhaustively at desk scale, and the CLI treats any
disagreement as an implementation bug.

:func:`enumerate_t_generators` lists the minimal generators of the monoid up
to a degree bound by exhaustive splitting: an element is minimal when no
componentwise split into two nonzero monoid members exists.  Brute force is
deliberate here; at desk scale it doubles as its own independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .algebra import (
    SparsePolynomial,
    System,
    axis_support,
    check_exponents,
    expand_pi_to_y,
    expand_y_to_x,
)
from .config import AXES, KurodaConfig, column_minima


def monoid_member(n: Sequence[int], config: KurodaConfig) -> bool:
    """Exact inequality test: each column's diagonal weight is dominated.

    True iff for every axis i (with {j, k} the other two):
    ``delta_ii * n_i <= delta_ji * n_j + delta_ki * n_k``.
    """
    exps = check_exponents(System.Y4, n)
    for i in AXES:
        j, k = (t for t in AXES if t != i)
        lhs = config.magnitude(i, i) * exps[i - 1]
        rhs = config.magnitude(j, i) * exps[j - 1] + config.magnitude(k, i) * exps[k - 1]
        if lhs > rhs:
            return False
    return True


def monoid_member_oracle(n: Sequence[int], config: KurodaConfig) -> bool:
    """Independent route: the expanded ambient exponent vector must be nonnegative."""
    return all(e >= 0 for e in expand_y_to_x(n, config))


def _vectors_up_to(degree: int) -> Iterator[tuple[int, int, int, int]]:
    for n1 in range(degree + 1):
        for n2 in range(degree + 1 - n1):
            for n3 in range(degree + 1 - n1 - n2):
                for n4 in range(degree + 1 - n1 - n2 - n3):
                    yield (n1, n2, n3, n4)


@dataclass(frozen=True)
class GeneratorList:
    """Minimal monoid generators of total degree <= ``degree_bound``.

    ``growing_at_bound`` is set when new generators still appear at the bound
    itself, a hint that the chosen bound truncates the (finite) basis.
    """

    degree_bound: int
    generators: tuple[tuple[int, int, int, int], ...]
    complete_up_to: int
    growing_at_bound: bool

    def count(self) -> int:
        return len(self.generators)

    def counts_by_degree(self) -> dict[int, int]:
        """Cumulative generator count per degree 1..degree_bound."""
        out = {}
        for d in range(1, self.degree_bound + 1):
            out[d] = sum(1 for g in self.generators if sum(g) <= d)
        return out


def enumerate_t_generators(config: KurodaConfig, degree_bound: int) -> GeneratorList:
    """All monoid members of degree <= bound that admit no nontrivial splitting."""
    if degree_bound < 0:
        raise ValueError(f"degree bound must be >= 0, got {degree_bound}")
    members = {
        n for n in _vectors_up_to(degree_bound)
        if n != (0, 0, 0, 0) and monoid_member(n, config)
    }
    generators = []
    for n in members:
        decomposable = False
        for a in product(*(range(v + 1) for v in n)):
            if a == (0, 0, 0, 0) or a == n:
                continue
            if a in members and tuple(x - y for x, y in zip(n, a)) in members:
                decomposable = True
                break
        if not decomposable:
            generators.append(n)
    generators.sort(key=lambda g: (sum(g), g))
    growing = any(sum(g) == degree_bound for g in generators)
    return GeneratorList(degree_bound, tuple(generators), degree_bound, growing)


@dataclass(frozen=True)
class StarViolation:
    """One support triple breaking the slope bound on one axis."""

    axis: int
    triple: tuple[int, int, int]
    lhs: int
    rhs: int


def star_violations(f: SparsePolynomial, config: KurodaConfig) -> tuple[StarViolation, ...]:
    """Every support triple with ``delta_ii * r1 > d_i * r3``, across all three axes.

    All axes are scanned even after the first hit; the list is the diagnostic
    payload for membership reports.
    """
    if f.system is not System.PI3:
        raise ValueError("membership tests expect a PI3 polynomial")
    d = column_minima(config)
    violations = []
    for i in AXES:
        dii = config.magnitude(i, i)
        for triple in axis_support(f, i):
            r1, _, r3 = triple
            if dii * r1 > d[i - 1] * r3:
                violations.append(StarViolation(i, triple, dii * r1, d[i - 1] * r3))
    return tuple(violations)


def in_r_star(f: SparsePolynomial, config: KurodaConfig) -> bool:
    """Combinatorial ring-membership route: no axis support triple violates the slope bound."""
    return not star_violations(f, config)


def oracle_violations(
    f: SparsePolynomial, config: KurodaConfig
) -> tuple[tuple[int, int, int, int], ...]:
    """Monomials of the Y4 expansion of ``f`` that fall outside the monoid."""
    expanded = expand_pi_to_y(f)
    return tuple(
        n for n in expanded.support() if not monoid_member_oracle(n, config)
    )


def in_r_oracle(f: SparsePolynomial, config: KurodaConfig) -> bool:
    """Expansion ring-membership route: every Y4 monomial of ``f`` is in the monoid."""
    if f.system is not System.PI3:
        raise ValueError("membership tests expect a PI3 polynomial")
    return not oracle_violations(f, config)


def combinations_reach(
    generators: Iterable[tuple[int, int, int, int]], degree_bound: int
) -> set[tuple[int, int, int, int]]:
    """All nonnegative-integer combinations of ``generators`` with degree <= bound.

    Support routine for completeness checks: breadth-first closure under
    adding one generator at a time.
    """
    reached = {(0, 0, 0, 0)}
    frontier = [(0, 0, 0, 0)]
    gens = tuple(generators)
    while frontier:
        base = frontier.pop()
        for g in gens:
            nxt = tuple(b + e for b, e in zip(base, g))
            if sum(nxt) <= degree_bound and nxt not in reached:
                reached.add(nxt)
                frontier.append(nxt)
    reached.discard((0, 0, 0, 0))
    return reached
