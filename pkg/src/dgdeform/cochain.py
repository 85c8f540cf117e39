"""The cochain complex C*(V;M), its cohomology, and coboundary solving.

A p-cochain is a map V -> M of degree -p.  The coboundary is

    delta(f) = d_M f - (-1)^p f d_V,

so delta has degree +1 on cochains and delta^2 = 0.  Every cobounding
question reduces to an exact sparse linear solve in the canonical cochain
basis of elementary operators, ordered lexicographically by
(source declaration index, target declaration index).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadDegree,
    DegreeMismatch,
    MalformedCochain,
    NotACocycle,
    NotADifferential,
)
from .field import Scalar
from .gmap import GradedMap
from .graded import GradedModule
from .linalg import LinearSolution, nullspace_sparse, rank_sparse, solve_sparse


@dataclass(frozen=True)
class Complex:
    """A graded module together with a differential on it."""

    module: GradedModule
    d: GradedMap

    def __post_init__(self):
        if self.d.source != self.module or self.d.target != self.module:
            raise NotADifferential("the differential must be an endomorphism of the module")
        try:
            ok = self.d.is_differential()
        except BadDegree as exc:
            raise NotADifferential(str(exc)) from None
        if not ok:
            raise NotADifferential("d squared is not zero")

    @property
    def field(self):
        return self.module.field


class Cochain:
    """A degree-p cochain on a pair of complexes (map degree -p)."""

    __slots__ = ("p", "mapping", "source", "target")

    def __init__(self, p: int, mapping: GradedMap, source: Complex, target: Complex | None = None):
        target = target if target is not None else source
        if mapping.source != source.module or mapping.target != target.module:
            raise MalformedCochain("underlying map does not match the complexes")
        if mapping and mapping.degree != -p:
            raise MalformedCochain(
                f"a {p}-cochain must have map degree {-p}, got {mapping.degree}"
            )
        self.p = p
        self.mapping = mapping
        self.source = source
        self.target = target

    def coboundary(self) -> "Cochain":
        """delta(f) = d_M f - (-1)^p f d_V, a (p+1)-cochain."""
        # raising the cochain degree by 1 pins both differentials to degree -1
        for d in (self.source.d, self.target.d):
            if d and d.degree != -1:
                raise BadDegree(
                    "the coboundary operator needs degree -1 differentials; "
                    f"got degree {d.degree}"
                )
        df = self.target.d.compose(self.mapping)
        fd = self.mapping.compose(self.source.d)
        m = df + fd if self.p % 2 else df - fd
        return Cochain(self.p + 1, m, self.source, self.target)

    def is_cocycle(self) -> bool:
        return self.coboundary().mapping.is_zero()

    def is_zero(self) -> bool:
        return self.mapping.is_zero()

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.source != other.source or self.target != other.target or self.p != other.p:
            raise MalformedCochain("cannot add cochains of different degrees or complexes")
        return Cochain(self.p, self.mapping + other.mapping, self.source, self.target)

    def __neg__(self) -> "Cochain":
        return Cochain(self.p, -self.mapping, self.source, self.target)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.p == other.p
            and self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    __hash__ = None

    def render(self) -> str:
        return self.mapping.render()

    def __repr__(self):
        return f"Cochain(p={self.p}, {self.mapping.render()})"


def coboundary(f: Cochain) -> Cochain:
    return f.coboundary()


def is_cocycle(f: Cochain) -> bool:
    return f.is_cocycle()


def cochain_basis(v: GradedModule, m: GradedModule, p: int) -> list[tuple[int, int]]:
    """Canonical basis of C^p(V;M): pairs (source index j, target index i)
    with |x_i| = |x_j| - p, lexicographic in (j, i)."""
    pairs = []
    for j in range(v.dim):
        want = v.degree_of(j) - p
        for i in range(m.dim):
            if m.degree_of(i) == want:
                pairs.append((j, i))
    return pairs


def _cochain_from_coords(
    p: int, basis: list[tuple[int, int]], coords: dict[int, Scalar],
    source: Complex, target: Complex,
) -> Cochain:
    entries = []
    for c, coeff in coords.items():
        j, i = basis[c]
        entries.append((source.module.name_of(j), target.module.name_of(i), coeff))
    m = GradedMap.from_entries(source.module, -p, entries, target=target.module)
    return Cochain(p, m, source, target)


def _coords_of(mapping: GradedMap, basis: list[tuple[int, int]]) -> dict[int, Scalar]:
    index = {pair: c for c, pair in enumerate(basis)}
    return {index[(j, i)]: coeff for j, i, coeff in mapping.entries()}


def _delta_matrix(source: Complex, target: Complex, p: int):
    """Rows of the matrix of delta^p in the canonical cochain bases.

    Returns (domain basis of C^p, codomain basis of C^{p+1}, rows), where
    rows[r][c] is the coefficient of codomain pair r in delta of domain pair c.
    """
    dom = cochain_basis(source.module, target.module, p)
    cod = cochain_basis(source.module, target.module, p + 1)
    cod_index = {pair: r for r, pair in enumerate(cod)}
    rows: list[dict[int, Scalar]] = [{} for _ in cod]
    for c, (j, i) in enumerate(dom):
        e = GradedMap.elementary(
            source.module, target.module.name_of(i), source.module.name_of(j),
            target=target.module,
        )
        delta_e = Cochain(p, e, source, target).coboundary().mapping
        for jj, ii, coeff in delta_e.entries():
            rows[cod_index[(jj, ii)]][c] = coeff
    return dom, cod, rows


@dataclass
class CohomologyResult:
    """Dimensions and representatives of H^p(V;M)."""

    p: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_h: int
    representatives: list[Cochain]


def cohomology(source: Complex, target: Complex | None = None, p: int = 0) -> CohomologyResult:
    """H^p = ker(delta^p) / im(delta^{p-1}), with deterministic representatives.

    Dimensions come from exact ranks of the coboundary matrices; the
    representatives are the canonical kernel basis vectors that remain
    independent modulo the image, taken in canonical order.
    """
    target = target if target is not None else source
    field = source.field
    dom_p, _, rows_p = _delta_matrix(source, target, p)
    dom_prev, _, rows_prev = _delta_matrix(source, target, p - 1)

    rank_p = rank_sparse(rows_p, len(dom_p), field)
    dim_cocycles = len(dom_p) - rank_p
    dim_coboundaries = rank_sparse(rows_prev, len(dom_prev), field)
    dim_h = dim_cocycles - dim_coboundaries

    # image of delta^{p-1} in C^p coordinates: column c is delta of domain pair c
    cols: dict[int, dict[int, Scalar]] = {}
    for r, row in enumerate(rows_prev):
        for c, coeff in row.items():
            cols.setdefault(c, {})[r] = coeff

    echelon: list[dict[int, Scalar]] = []  # rows with distinct leading columns

    def _reduce(vec: dict[int, Scalar]) -> dict[int, Scalar]:
        vec = dict(vec)
        for row in echelon:
            lead = min(row)
            c = vec.get(lead)
            if c:
                for k, v in row.items():
                    s = vec.get(k, field.zero) - c * v
                    if s:
                        vec[k] = s
                    else:
                        vec.pop(k, None)
        return vec

    def _insert(vec: dict[int, Scalar]) -> bool:
        vec = _reduce(vec)
        if not vec:
            return False
        lead = min(vec)
        inv = vec[lead].inv()
        echelon.append({k: v * inv for k, v in vec.items()})
        echelon.sort(key=min)
        return True

    for c in sorted(cols):
        _insert(cols[c])

    representatives = []
    for vec in nullspace_sparse(rows_p, len(dom_p), field):
        if len(representatives) == dim_h:
            break
        probe = dict(vec)
        if _insert(probe):
            representatives.append(_cochain_from_coords(p, dom_p, vec, source, target))
    assert len(representatives) == dim_h
    return CohomologyResult(p, dim_cocycles, dim_coboundaries, dim_h, representatives)


@dataclass
class InfeasibilityWitness:
    """An exact certificate that delta(f) = g has no solution.

    ``combination`` lists block equations, labelled by (source name, target
    name), whose weighted sum has zero left side but the nonzero ``residual``
    on the right side.
    """

    combination: list[tuple[str, str, Scalar]]
    residual: Scalar

    @property
    def source_names(self) -> set[str]:
        return {src for src, _, _ in self.combination}

    def render(self) -> str:
        terms = " + ".join(
            (f"({src} -> {tgt})" if c == c.field.one else f"{c}*({src} -> {tgt})")
            for src, tgt, c in self.combination
        )
        return f"{terms} reduces to 0 = {self.residual}"


@dataclass
class Solved:
    cochain: Cochain


@dataclass
class Infeasible:
    witness: InfeasibilityWitness


def solve_coboundary(g: Cochain) -> Solved | Infeasible:
    """Find f with delta(f) = g exactly, or certify that none exists.

    The solution is the canonical reduced-row-echelon particular solution
    (free variables zero) in the canonical cochain basis.  g must be a
    cocycle; non-cocycles are rejected outright.
    """
    if not g.is_cocycle():
        raise NotACocycle("right-hand side is not a cocycle")
    p = g.p - 1
    field = g.source.field
    dom, cod, rows = _delta_matrix(g.source, g.target, p)
    g_coords = _coords_of(g.mapping, cod)
    rhs = [g_coords.get(r, field.zero) for r in range(len(cod))]
    outcome = solve_sparse(rows, rhs, len(dom), field)
    if isinstance(outcome, LinearSolution):
        f = _cochain_from_coords(p, dom, outcome.values, g.source, g.target)
        assert f.coboundary() == g
        return Solved(f)
    combo = []
    for r in sorted(outcome.combination):
        j, i = cod[r]
        combo.append(
            (g.source.module.name_of(j), g.target.module.name_of(i), outcome.combination[r])
        )
    return Infeasible(InfeasibilityWitness(combo, outcome.residual))


def noncobounding_certificate(d: GradedMap, g: Cochain | GradedMap) -> bool:
    """Truncation-independent sufficient test that a 2-cochain cannot cobound.

    For any 1-cochain f, the block of delta(f) = d f + f d on sources of
    degree p is fed only through d's blocks V_p -> V_{p-1} and
    V_{p-1} -> V_{p-2}.  If both vanish while g has a nonzero block at p,
    no f can satisfy delta(f) = g, on this truncation or any larger one.
    """
    g_map = g.mapping if isinstance(g, Cochain) else g
    if d.degree != -1 and not d.is_zero():
        raise BadDegree("certificate requires a degree -1 differential")
    if not g_map.is_zero() and g_map.degree != -2:
        raise DegreeMismatch("certificate applies to 2-cochains (map degree -2)")
    return _certificate_degree(d, g_map) is not None


def _certificate_degree(d: GradedMap, g_map: GradedMap) -> int | None:
    d_support = d.block_support()
    for p in sorted(g_map.block_support()):
        if p not in d_support and (p - 1) not in d_support:
            return p
    return None
