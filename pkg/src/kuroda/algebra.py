"""Sparse multivariate (Laurent) polynomials over exact rationals.

A polynomial is a mapping from integer exponent tuples to nonzero
``Fraction`` coefficients, tagged with the variable system the exponents
live in:

  ==========  =====  ========================================  =========
  system      arity  variables                                 exponents
  ==========  =====  ========================================  =========
  ``X4``      4      ambient x1..x4                            any int
  ``Y4``      4      monomial images y1..y4                    >= 0
  ``PI3``     3      differences P1..P3 (Pi_i = y_i - y_4)     >= 0
  ``AXIS3``   3      per-axis basis u1, u2, u3                 >= 0
  ``CHART3``  3      blowup chart coordinates                  any int
  ==========  =====  ========================================  =========

Zero coefficients are never stored, so equal polynomials have identical term
maps and the representation is canonical.  All ring arithmetic is exact;
floats appear only in :func:`evaluate_numeric`.

The three change-of-variable maps used downstream are built on one
substitution primitive: ``PI3 -> Y4`` (each difference expands to
``y_i - y_4``), ``Y4 -> X4`` on exponent vectors (integer row combinations,
where the diagonal sign convention of the configuration applies), and
``PI3 -> AXIS3`` (rewriting in the ordered basis attached to one axis).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .config import AXES, KurodaConfig


class System(enum.Enum):
    """Variable-system tag; fixes arity and whether negative exponents are legal."""

    X4 = ("X4", 4, True)
    Y4 = ("Y4", 4, False)
    PI3 = ("PI3", 3, False)
    AXIS3 = ("AXIS3", 3, False)
    CHART3 = ("CHART3", 3, True)

    def __init__(self, label: str, arity: int, laurent: bool):
        self.label = label
        self.arity = arity
        self.laurent = laurent


VARIABLE_NAMES = {
    System.X4: ("X1", "X2", "X3", "X4"),
    System.Y4: ("Y1", "Y2", "Y3", "Y4"),
    System.PI3: ("P1", "P2", "P3"),
    System.AXIS3: ("U1", "U2", "U3"),
    System.CHART3: ("A", "B", "C"),
}


class SystemMismatchError(ValueError):
    """Operands (or a point) belong to different variable systems."""


class PoleAtPointError(ArithmeticError):
    """Numeric evaluation hit a negative exponent at a zero coordinate."""


def check_exponents(system: System, exponents: Sequence[int]) -> tuple[int, ...]:
    exps = tuple(exponents)
    if len(exps) != system.arity:
        raise SystemMismatchError(
            f"{system.label} exponent vector needs arity {system.arity}, got {exps}"
        )
    for e in exps:
        if not isinstance(e, int) or isinstance(e, bool):
            raise SystemMismatchError(f"exponents must be integers, got {e!r}")
        if e < 0 and not system.laurent:
            raise SystemMismatchError(f"negative exponent {e} not allowed in {system.label}")
    return exps


class SparsePolynomial:
    """Immutable sparse polynomial; supports ``+ - * **`` and scalar mixing."""

    __slots__ = ("system", "_terms", "_hash")

    def __init__(self, system: System, terms: Mapping[Sequence[int], Fraction | int]):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            clean[check_exponents(system, exps)] = coeff
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePolynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, system: System) -> "SparsePolynomial":
        return cls(system, {})

    @classmethod
    def constant(cls, system: System, value) -> "SparsePolynomial":
        return cls(system, {(0,) * system.arity: Fraction(value)})

    @classmethod
    def variable(cls, system: System, index: int) -> "SparsePolynomial":
        """The single variable with 1-based ``index``."""
        if not 1 <= index <= system.arity:
            raise SystemMismatchError(f"{system.label} has no variable {index}")
        exps = tuple(1 if j == index else 0 for j in range(1, system.arity + 1))
        return cls(system, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, system: System, exponents: Sequence[int], coeff=1) -> "SparsePolynomial":
        return cls(system, {tuple(exponents): Fraction(coeff)})

    # -- inspection ---------------------------------------------------

    def terms(self) -> Iterable[tuple[tuple[int, ...], Fraction]]:
        """Term items in canonical (lexicographic) order."""
        return tuple(sorted(self._terms.items()))

    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self._terms))

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def term_count(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        """Max term degree (0 for the zero polynomial)."""
        if not self._terms:
            return 0
        return max(sum(exps) for exps in self._terms)

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self._terms)

    # -- ring arithmetic ----------------------------------------------

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            if other.system is not self.system:
                raise SystemMismatchError(
                    f"cannot mix {self.system.label} and {other.system.label}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial.constant(self.system, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return SparsePolynomial(self.system, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial(self.system, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return SparsePolynomial(self.system, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
        result = SparsePolynomial.constant(self.system, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(self.system, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.system is other.system and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.system, frozenset(self._terms.items())))
            )
        return self._hash

    def __repr__(self):
        from .exprparse import polynomial_to_text

        return f"SparsePolynomial({self.system.label}, {polynomial_to_text(self)!r})"


def pi_variable(i: int) -> SparsePolynomial:
    return SparsePolynomial.variable(System.PI3, i)


def y_variable(i: int) -> SparsePolynomial:
    return SparsePolynomial.variable(System.Y4, i)


def substitute(
    f: SparsePolynomial, images: Sequence[SparsePolynomial], system: System
) -> SparsePolynomial:
    """Replace variable j of ``f`` by ``images[j-1]`` (all images in ``system``)."""
    if len(images) != f.system.arity:
        raise SystemMismatchError("one image per variable required")
    if f.system.laurent:
        raise SystemMismatchError("substitution is defined for polynomial systems only")
    for g in images:
        if g.system is not system:
            raise SystemMismatchError("images must live in the target system")
    out = SparsePolynomial.zero(system)
    for exps, coeff in f._terms.items():
        term = SparsePolynomial.constant(system, coeff)
        for g, e in zip(images, exps):
            if e:
                term = term * g**e
        out = out + term
    return out


def expand_pi_to_y(f: SparsePolynomial) -> SparsePolynomial:
    """Expand a PI3 polynomial into Y4 via P_i -> y_i - y_4."""
    if f.system is not System.PI3:
        raise SystemMismatchError("expand_pi_to_y expects a PI3 polynomial")
    images = [y_variable(i) - y_variable(4) for i in AXES]
    return substitute(f, images, System.Y4)


def expand_y_to_x(n: Sequence[int], config: KurodaConfig) -> tuple[int, int, int, int]:
    """X4 exponent vector of the y-monomial with exponents ``n`` (entries >= 0).

    Integer combination of the signed rows plus ``n4 * gamma`` on the last
    slot; entries of the result may be negative.
    """
    exps = check_exponents(System.Y4, n)
    out = [0, 0, 0, 0]
    for i in AXES:
        row = config.signed_row(i)
        for j in range(4):
            out[j] += exps[i - 1] * row[j]
    out[3] += exps[3] * config.gamma
    return tuple(out)


@dataclass(frozen=True)
class AxisBasis:
    """Ordered substitution basis attached to one axis.

    ``u1, u2, u3`` are linear forms in P1..P3; a PI3 polynomial rewritten in
    them has its exponent triples ordered (r1, r2, r3) = (u1, u2, u3) powers.
    The inverse images express P1..P3 back in terms of u1..u3.
    """

    axis: int
    basis: tuple[SparsePolynomial, SparsePolynomial, SparsePolynomial]
    inverse_images: tuple[SparsePolynomial, SparsePolynomial, SparsePolynomial]


def axis_basis(axis: int) -> AxisBasis:
    if axis not in AXES:
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    p1, p2, p3 = (pi_variable(i) for i in AXES)
    u1, u2, u3 = (SparsePolynomial.variable(System.AXIS3, i) for i in (1, 2, 3))
    if axis == 1:
        basis = (p1, p2, p2 - p3)
        inverse = (u1, u2, u2 - u3)  # P1, P2, P3 in terms of u
    elif axis == 2:
        basis = (p2, p1, p1 - p3)
        inverse = (u2, u1, u2 - u3)
    else:
        basis = (p3, p1, p1 - p2)
        inverse = (u2, u2 - u3, u1)
    return AxisBasis(axis, basis, inverse)


def reexpress_for_axis(f: SparsePolynomial, axis: int) -> SparsePolynomial:
    """Rewrite a PI3 polynomial in the AXIS3 basis of ``axis``; exact and invertible."""
    if f.system is not System.PI3:
        raise SystemMismatchError("reexpress_for_axis expects a PI3 polynomial")
    return substitute(f, axis_basis(axis).inverse_images, System.AXIS3)


def axis_to_pi(g: SparsePolynomial, axis: int) -> SparsePolynomial:
    """Inverse of :func:`reexpress_for_axis`."""
    if g.system is not System.AXIS3:
        raise SystemMismatchError("axis_to_pi expects an AXIS3 polynomial")
    return substitute(g, axis_basis(axis).basis, System.PI3)


def axis_support(f: SparsePolynomial, axis: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent triples (r1, r2, r3) of ``f`` in the basis of ``axis``."""
    return reexpress_for_axis(f, axis).support()


def evaluate_numeric(f: SparsePolynomial, point: Sequence[float]) -> float:
    """Standard double-precision evaluation; only as accurate as floats allow.

    Raises :class:`PoleAtPointError` when a negative exponent meets a zero
    coordinate (Laurent systems only).
    """
    if len(point) != f.system.arity:
        raise SystemMismatchError(
            f"point arity {len(point)} does not match {f.system.label}"
        )
    total = 0.0
    for exps, coeff in f._terms.items():
        value = float(coeff)
        for x, e in zip(point, exps):
            if e == 0:
                continue
            if e < 0 and x == 0:
                raise PoleAtPointError(f"pole at {tuple(point)}: exponent {e} on zero coordinate")
            value *= float(x) ** e
        total += value
    return total
