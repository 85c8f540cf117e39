"""Generator and verifiers for the built-in parametric deformation family.

The base complex has V_p = <x_{2p-1}, x_{2p}> for p >= 1 and differential
d = sum x_{6i-5} d/d x_{6i-3}.  On top of it the generator produces, for each
order n, four variants of an approximation d + t d_1 + ... :

* ``polynomial``  - a non-trivial polynomial deformation of order n,
* ``obstructed``  - an approximation whose extension dies at order n,
* ``linear``      - the one-term non-trivial deformation d + t x4 d/d x6,
* ``infinite``    - lifts with nonzero terms at every order.

Everything is verified mechanically on a finite truncation; all maps in play
have degree -1, so any sufficiently large truncation window is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochain import Cochain, Complex, Infeasible, noncobounding_certificate, solve_coboundary
from .deform import (
    MapSeries,
    check_relations,
    deform_to_order,
    first_order_triviality,
    obstruction,
    series_mul,
)
from .errors import BadTruncation, TruncationTooSmall
from .field import QQ, FieldSpec
from .gmap import GradedMap
from .graded import GradedModule

VARIANTS = ("polynomial", "obstructed", "linear", "infinite")


def minimal_truncation(variant: str, n: int) -> int:
    """Smallest truncation degree housing every index the variant touches,
    with one degree of headroom."""
    if variant == "polynomial":
        return 3 * n + 1
    if variant == "obstructed":
        return max(4, 3 * n + 1)
    if variant == "linear":
        return 3
    if variant == "infinite":
        return 3 * n + 3
    raise BadTruncation(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class FamilySpec:
    """Parameters selecting one member of the example family."""

    n: int
    variant: str
    truncation: int | None = None
    field: FieldSpec = QQ

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise BadTruncation(f"unknown variant {self.variant!r}")
        if self.n < 1:
            raise TruncationTooSmall(f"order must be >= 1, got {self.n}")
        if self.variant == "polynomial" and self.n < 2:
            raise TruncationTooSmall("the polynomial variant needs n >= 2")
        minimum = minimal_truncation(self.variant, self.n)
        if self.truncation is None:
            object.__setattr__(self, "truncation", minimum)
        elif self.truncation < minimum:
            raise TruncationTooSmall(
                f"truncation {self.truncation} is below the minimum {minimum} "
                f"for variant {self.variant} at order {self.n}"
            )


def base_complex(truncation: int, field: FieldSpec = QQ) -> Complex:
    """The truncated base complex: x_{2p-1}, x_{2p} in degree p for
    1 <= p <= truncation, with d = sum x_{6i-5} d/d x_{6i-3}."""
    if truncation < 1:
        raise BadTruncation(f"truncation must be >= 1, got {truncation}")
    top = 2 * truncation
    module = GradedModule(
        "V", field, [(f"x{i}", (i + 1) // 2) for i in range(1, top + 1)]
    )
    entries = []
    i = 1
    while 6 * i - 3 <= top:
        entries.append((f"x{6 * i - 3}", f"x{6 * i - 5}", 1))
        i += 1
    return Complex(module, GradedMap.from_entries(module, -1, entries))


def _poly_d1(module: GradedModule, upto: int) -> GradedMap:
    entries = [("x4", "x1", 1)]
    entries += [(f"x{6 * i}", f"x{6 * i - 2}", 1) for i in range(1, upto + 1)]
    return GradedMap.from_entries(module, -1, entries)


def _ladder_lift(module: GradedModule, k: int, with_tail: bool) -> GradedMap:
    entries = [(f"x{6 * k - 6}", f"x{6 * k - 9}", -1)]
    if with_tail:
        entries.append((f"x{6 * k - 2}", f"x{6 * k - 5}", 1))
    return GradedMap.from_entries(module, -1, entries)


def family_lifts(spec: FamilySpec) -> list[GradedMap]:
    """The lift sequence d_1, d_2, ... for the chosen variant."""
    cx = base_complex(spec.truncation, spec.field)
    module = cx.module
    n = spec.n
    if spec.variant == "linear":
        return [GradedMap.from_entries(module, -1, [("x6", "x4", 1)])]
    if spec.variant == "polynomial":
        lifts = [_poly_d1(module, n - 1)]
        lifts += [_ladder_lift(module, k, with_tail=k < n) for k in range(2, n + 1)]
        return lifts
    if spec.variant == "obstructed":
        if n == 1:
            return [GradedMap.from_entries(module, -1, [("x6", "x4", 1), ("x8", "x6", 1)])]
        lifts = [_poly_d1(module, n - 1)]
        lifts += [_ladder_lift(module, k, with_tail=True) for k in range(2, n)]
        lifts.append(
            GradedMap.from_entries(
                module, -1,
                [(f"x{6 * n - 6}", f"x{6 * n - 9}", -1), (f"x{6 * n - 4}", f"x{6 * n - 6}", 1)],
            )
        )
        return lifts
    # infinite: d_1 spans every column the truncation admits; the tail of
    # each later lift is what keeps every obstruction (hence every lift) nonzero.
    top = 2 * spec.truncation
    lifts = [_poly_d1(module, top // 6)]
    lifts += [_ladder_lift(module, k, with_tail=True) for k in range(2, n + 1)]
    return lifts


# -- verifiers ------------------------------------------------------------------


@dataclass
class CheckEntry:
    label: str
    ok: bool
    detail: str = ""

    def render(self) -> str:
        tail = f": {self.detail}" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.label}{tail}"


@dataclass
class VerificationReport:
    title: str
    entries: list[CheckEntry]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def render(self) -> str:
        return "\n".join([f"== {self.title} =="] + [e.render() for e in self.entries])


def _relation_sign(cx: Complex, lifts) -> str:
    """Which sign of delta(d_{k+1}) reproduces O_k on this family."""
    plus = minus = True
    for k in range(1, len(lifts)):
        o_k = obstruction(cx, lifts[:k]).mapping
        delta = Cochain(1, lifts[k], cx).coboundary().mapping
        plus = plus and delta == o_k
        minus = minus and -delta == o_k
    if plus and minus:
        return "both (char 2)"
    if plus:
        return "+d"
    if minus:
        return "-d"
    return "neither"


def verify_polynomial(n: int, truncation: int | None = None,
                      field: FieldSpec = QQ) -> VerificationReport:
    """Check that the order-n polynomial variant is an exact, non-trivial
    polynomial deformation."""
    spec = FamilySpec(n, "polynomial", truncation, field)
    cx = base_complex(spec.truncation, field)
    lifts = family_lifts(spec)

    checks = check_relations(cx, lifts)
    entries = [
        CheckEntry(
            "relations",
            all(checks),
            f"orders 0..{n - 1} hold; realized sign {_relation_sign(cx, lifts)}",
        )
    ]

    d_t = MapSeries.deformation(cx, lifts, order=2 * n)
    square = series_mul(d_t, d_t)
    entries.append(
        CheckEntry(
            "series square", square.is_zero(),
            f"all coefficients of d_t o d_t vanish through t^{2 * n}",
        )
    )

    entries.append(
        CheckEntry(
            "polynomial order", bool(lifts[n - 1]) and len(lifts) == n,
            f"d_{n} = {lifts[n - 1].render()} and d_i = 0 for i > {n}",
        )
    )

    outcome = first_order_triviality(cx, lifts[0])
    nontrivial = isinstance(outcome, Infeasible) and "x6" in outcome.witness.source_names
    detail = (
        f"witness: {outcome.witness.render()}"
        if isinstance(outcome, Infeasible)
        else "unexpectedly solvable"
    )
    entries.append(CheckEntry("non-triviality", nontrivial, detail))

    title = f"polynomial family n={n} over {field} (truncation {spec.truncation})"
    return VerificationReport(title, entries)


def verify_obstructed(n: int, truncation: int | None = None,
                      field: FieldSpec = QQ) -> VerificationReport:
    """Check that the order-n obstructed variant satisfies the relations
    through order n-1 and then genuinely fails to extend."""
    spec = FamilySpec(n, "obstructed", truncation, field)
    cx = base_complex(spec.truncation, field)
    lifts = family_lifts(spec)

    checks = check_relations(cx, lifts)
    entries = [
        CheckEntry("relations", all(checks), f"orders 0..{n - 1} hold"),
    ]

    o_n = obstruction(cx, lifts)
    lo, hi = (4, 8) if n == 1 else (6 * n - 8, 6 * n - 4)
    expected = GradedMap.from_entries(cx.module, -2, [(f"x{hi}", f"x{lo}", -1)])
    entries.append(
        CheckEntry("obstruction value", o_n.mapping == expected, f"O_{n} = {o_n.render()}")
    )

    outcome = solve_coboundary(o_n)
    entries.append(
        CheckEntry(
            "no preimage on the truncation",
            isinstance(outcome, Infeasible),
            outcome.witness.render() if isinstance(outcome, Infeasible) else "solved",
        )
    )

    cert = noncobounding_certificate(cx.d, o_n)
    entries.append(
        CheckEntry(
            "truncation-independent certificate", cert,
            "source-degree block outside d's reach",
        )
    )

    title = f"obstructed family n={n} over {field} (truncation {spec.truncation})"
    return VerificationReport(title, entries)


def verify_infinite(order: int, truncation: int | None = None,
                    field: FieldSpec = QQ) -> VerificationReport:
    """Check the all-orders variant: the explicit lifts satisfy every
    relation, stay nonzero, and the deformation is non-trivial."""
    spec = FamilySpec(order, "infinite", truncation, field)
    cx = base_complex(spec.truncation, field)
    lifts = family_lifts(spec)

    report = deform_to_order(cx, lifts[0], order, lifts=lifts[1:])
    entries = [
        CheckEntry(
            "relations", report.extended and all(report.relation_checks),
            f"orders 0..{order - 1} hold",
        ),
        CheckEntry(
            "nonzero lifts", all(bool(m) for m in report.lifts),
            f"d_1..d_{order} all nonzero",
        ),
    ]

    canonical = deform_to_order(cx, lifts[0], order)
    entries.append(
        CheckEntry(
            "canonical extension unobstructed", canonical.extended,
            "solver lifts exist at every order (they may vanish)",
        )
    )

    outcome = first_order_triviality(cx, lifts[0])
    nontrivial = isinstance(outcome, Infeasible) and "x6" in outcome.witness.source_names
    entries.append(
        CheckEntry(
            "non-triviality", nontrivial,
            outcome.witness.render() if isinstance(outcome, Infeasible) else "unexpectedly solvable",
        )
    )

    title = f"infinite family N={order} over {field} (truncation {spec.truncation})"
    return VerificationReport(title, entries)
