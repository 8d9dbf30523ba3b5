"""
Complete intrinsic invariants of cross caps.

Realize the metric with zero characteristic function, pass to the canonical
coordinates ``(x, y) = (X, Y)`` of that normal realization and read off the
Taylor values ``A[i, j]`` of ``z(x, y) = Z(U(x, y), V(x, y))``.  Two metrics
are formally isometric exactly when these tables agree.
"""
from dataclasses import dataclass

from .geometry import CrossCapGerm, MetricJet, Report, metric_of_germ
from .series import compose_pair, invert_pair

__all__ = [
    "InvariantTable",
    "canonical_germ",
    "invariants",
    "invariants_of_germ",
    "closed_form_invariants",
    "closed_form_check",
    "formal_isometry_check",
    "characteristic_of_realization",
    "is_normal",
    "metric_invariants",
    "ClosedFormReport",
]


@dataclass(frozen=True)
class InvariantTable:
    """The values ``A[i, j]`` for 2 <= i+j <= order."""

    order: int
    values: dict
    ring: object

    def __getitem__(self, index):
        i, j = index
        if not 2 <= i + j <= self.order:
            raise IndexError(f"A{index} is outside orders 2..{self.order}")
        return self.values.get((i, j), self.ring.zero)

    def items(self):
        for n in range(2, self.order + 1):
            for i in range(n, -1, -1):
                yield (i, n - i), self[i, n - i]

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"table only known through order {self.order}")
        kept = {ij: v for ij, v in self.values.items() if sum(ij) <= order}
        return InvariantTable(order, kept, self.ring)


def canonical_germ(jet):
    """Canonical form ``(x, xy + beta(y), z(x, y))`` of a realized jet.

    ``z`` is known through ``jet.order``: the substitution needs ``U`` and
    ``V`` only through order M-1 because ``Z`` starts at order 2.
    """
    M = jet.order
    N = M - 1
    U, V = invert_pair(jet.X.truncate(N), jet.Y.truncate(N))
    z = compose_pair(jet.Z, U.pad(M), V.pad(M))
    a = {ij: c for ij, c in z.to_dict().items() if sum(ij) >= 2}
    b = {r: c for r, c in jet.beta.to_dict().items() if 3 <= r <= M}
    return CrossCapGerm(M, a, b, jet.ring)


def invariants(metric, order=None):
    """Invariant table of a normalized metric through ``order``."""
    # local import: solver imports geometry, which this module also uses
    from .solver import realize

    order = metric.order if order is None else order
    jet = realize(metric, None, order)
    germ = canonical_germ(jet)
    return InvariantTable(order, dict(germ.a), metric.ring)


def invariants_of_germ(germ, order=None):
    order = germ.order if order is None else order
    return invariants(metric_of_germ(germ, order), order)


def closed_form_invariants(germ):
    """Invariants through order 3, and A[0, 4], from explicit formulas in a_{j,k}, b_i."""
    ring = germ.ring
    a = germ.coefficient
    b3 = germ.b.get(3, ring.zero)
    b4 = germ.b.get(4, ring.zero)
    a20, a11, a02 = a(2, 0), a(1, 1), a(0, 2)
    out = {
        (2, 0): a20,
        (1, 1): a11,
        (0, 2): a02,
        (3, 0): -(b3 * a11**2 * a20 + b3 * a20 - 2 * a(3, 0) * a02**2) / (2 * a02**2),
        (2, 1): -(b3 * a11 * a20 - 6 * a02 * a(2, 1)) / (6 * a02),
        (1, 2): -(-b3 * a11**2 - 2 * a02 * a(1, 2) - b3) / (2 * a02),
        (0, 3): (3 * b3 * a11 + 2 * a(0, 3)) / 2,
    }
    if germ.order >= 4:
        out[0, 4] = (
            4 * a02 * (4 * b4 * a11 + 3 * a(0, 4))
            + 3 * b3 * (
                b3 * (15 * a11**2 - 4 * a02 * a20 + 7)
                + 4 * (a(0, 3) * a11 + 4 * a02 * a(1, 2))
            )
        ) / (12 * a02)
    return out


@dataclass
class ClosedFormReport(Report):
    pipeline: dict = None
    closed_form: dict = None


def closed_form_check(germ):
    """Compare the pipeline with the explicit low-order formulas."""
    order = min(germ.order, 4)
    table = invariants_of_germ(germ, order)
    expected = closed_form_invariants(germ)
    report = ClosedFormReport(pipeline={}, closed_form=expected)
    for ij, value in expected.items():
        got = table[ij]
        report.pipeline[ij] = got
        if not germ.ring.eq(got, value):
            report.fail(f"A{ij}: pipeline {got} != closed form {value}")
    return report


def formal_isometry_check(t1, t2, order=None):
    """True iff two invariant tables agree through ``order``."""
    order = min(t1.order, t2.order) if order is None else order
    if t1.order < order or t2.order < order:
        raise ValueError(
            f"tables known through orders {t1.order} and {t2.order}, asked for {order}"
        )
    eq = t1.ring.eq
    return all(
        eq(t1[i, n - i], t2[i, n - i]) for n in range(2, order + 1) for i in range(n + 1)
    )


def characteristic_of_realization(jet):
    return jet.beta


def is_normal(jet):
    """True when the characteristic function vanishes through its order."""
    return jet.beta.is_zero()


def metric_invariants(obj, order=None):
    """Invariants of a germ or a metric."""
    if isinstance(obj, CrossCapGerm):
        return invariants_of_germ(obj, order)
    if isinstance(obj, MetricJet):
        return invariants(obj, order)
    raise TypeError(f"expected CrossCapGerm or MetricJet, got {type(obj).__name__}")
