"""Finite graded modules with a named, ordered, degree-tagged basis.

A module is a truncation of a locally finite graded module; the declaration
order of the basis is the canonical order used by every deterministic output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    FieldMismatch,
    ModuleMismatch,
    UnknownBasisName,
    UnknownName,
    ZeroVectorHasNoDegree,
)
from .field import FieldSpec, Scalar

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class _MixedDegree:
    """Marker returned by ``Vector.degree()`` for inhomogeneous vectors."""

    def __repr__(self):
        return "Mixed"


MIXED = _MixedDegree()


@dataclass(frozen=True)
class GradedModule:
    """An ordered basis of named, integer-graded generators over a field."""

    name: str
    field: FieldSpec
    basis: tuple[tuple[str, int], ...]

    def __init__(self, name, field, basis):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "basis", tuple((str(n), int(d)) for n, d in basis))
        for n, _ in self.basis:
            if not _IDENT.match(n):
                raise UnknownBasisName(f"{n!r} is not a valid basis name")
        if not _IDENT.match(self.name):
            raise UnknownName(f"{self.name!r} is not a valid module name")
        if len({n for n, _ in self.basis}) != len(self.basis):
            raise UnknownBasisName(f"duplicate basis names in module {self.name}")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {n: i for i, (n, _) in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def basis_names(self) -> list[str]:
        return [n for n, _ in self.basis]

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownBasisName(f"no basis element {name!r} in module {self.name}") from None

    def name_of(self, index: int) -> str:
        return self.basis[index][0]

    def degree_of(self, index: int) -> int:
        return self.basis[index][1]

    def degree_of_name(self, name: str) -> int:
        return self.basis[self.index_of(name)][1]

    def degrees(self) -> set[int]:
        return {d for _, d in self.basis}

    def degree_component(self, p: int) -> list[str]:
        """All basis names of degree exactly p, in declaration order."""
        return [n for n, d in self.basis if d == p]

    def vector(self, coeffs: dict[str, Scalar | int]) -> "Vector":
        """Build a vector from a name -> coefficient mapping."""
        terms: dict[int, Scalar] = {}
        for name, c in coeffs.items():
            i = self.index_of(name)
            if not isinstance(c, Scalar):
                c = self.field.scalar(c)
            elif c.field != self.field:
                raise FieldMismatch(f"coefficient field {c.field} != module field {self.field}")
            if c:
                terms[i] = terms[i] + c if i in terms else c
        return Vector(self, terms)

    def basis_vector(self, name: str) -> "Vector":
        return Vector(self, {self.index_of(name): self.field.one})

    def zero_vector(self) -> "Vector":
        return Vector(self, {})


class Vector:
    """A sparse element of a graded module; zero coefficients are never stored."""

    __slots__ = ("module", "terms")

    def __init__(self, module: GradedModule, terms: dict[int, Scalar]):
        self.module = module
        self.terms = {i: c for i, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, name: str) -> Scalar:
        return self.terms.get(self.module.index_of(name), self.module.field.zero)

    def degree(self):
        """The common degree of the terms, MIXED if inhomogeneous."""
        if not self.terms:
            raise ZeroVectorHasNoDegree("the zero vector has no degree")
        degs = {self.module.degree_of(i) for i in self.terms}
        return degs.pop() if len(degs) == 1 else MIXED

    def _check(self, other: "Vector"):
        if not isinstance(other, Vector) or other.module != self.module:
            raise ModuleMismatch("vectors live in different modules")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        terms = dict(self.terms)
        zero = self.module.field.zero
        for i, c in other.terms.items():
            s = terms.get(i, zero) + c
            if s:
                terms[i] = s
            else:
                terms.pop(i, None)
        return Vector(self.module, terms)

    def __neg__(self) -> "Vector":
        return Vector(self.module, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-other)

    def scale(self, c: Scalar | int) -> "Vector":
        if not isinstance(c, Scalar):
            c = self.module.field.scalar(c)
        if not c:
            return Vector(self.module, {})
        return Vector(self.module, {i: c * v for i, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Vector)
            and self.module == other.module
            and self.terms == other.terms
        )

    __hash__ = None

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i in sorted(self.terms):
            c = self.terms[i]
            name = self.module.name_of(i)
            sign = "-" if c.is_negative else "+"
            mag = abs(c)
            body = name if mag == self.module.field.one else f"{mag}*{name}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = (first_sign if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Vector({self.render()} in {self.module.name})"
