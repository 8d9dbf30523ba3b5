"""
First fundamental forms of cross cap germs and checks on Whitney metrics.

A cross cap germ in canonical coordinates is ``f(x, y) = (x, xy + b(y), z(x, y))``.
More generally a map jet ``(X, Y, Z, beta)`` stands for
``f = (X, X*Y + beta(Y), Z)`` written in some other coordinates ``(u, v)``.
"""
from dataclasses import dataclass, field

from .rings import RATIONAL
from .series import (
    TruncBiSeries,
    TruncUniSeries,
    compose_uni,
    partial_derivative,
)

__all__ = [
    "CrossCapGerm",
    "MapJet",
    "MetricJet",
    "Report",
    "germ_to_mapjet",
    "first_fundamental_form",
    "fundamental_products",
    "metric_of_germ",
    "normalized_order2",
    "validate_normalized",
    "validate_admissible",
    "intrinsic_crosscap_test",
    "check_mapjet",
]


@dataclass
class Report:
    """Outcome of a validation: ``ok`` plus a list of human-readable failures."""

    ok: bool = True
    failures: list = field(default_factory=list)

    def fail(self, message):
        self.ok = False
        self.failures.append(message)

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "pass" if self.ok else "fail: " + "; ".join(self.failures)


@dataclass(frozen=True)
class CrossCapGerm:
    """Taylor data of a cross cap in canonical form.

    ``a[j, k]`` are the Taylor values of ``z`` (2 <= j+k <= order) and ``b[i]``
    those of the characteristic function (3 <= i <= order).  Missing entries
    are zero.
    """

    order: int
    a: dict
    b: dict = field(default_factory=dict)
    ring: object = RATIONAL

    def __post_init__(self):
        ring = self.ring
        a = {}
        for (j, k), value in self.a.items():
            if j < 0 or k < 0 or not 2 <= j + k <= self.order:
                raise ValueError(f"z coefficient index ({j}, {k}) out of range")
            a[j, k] = ring.convert(value)
        b = {}
        for i, value in self.b.items():
            if not 3 <= i <= self.order:
                raise ValueError(f"characteristic coefficient index {i} out of range")
            b[i] = ring.convert(value)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if self.order < 2:
            raise ValueError("a cross cap germ needs at least its quadratic part")
        if not ring.is_positive(a.get((0, 2), ring.zero)):
            raise ValueError("a_{0,2} must be positive")

    def coefficient(self, j, k):
        return self.a.get((j, k), self.ring.zero)

    @property
    def alphas(self):
        return (self.coefficient(2, 0), self.coefficient(1, 1), self.coefficient(0, 2))

    def z_series(self, order=None):
        order = self.order if order is None else order
        coeffs = {jk: v for jk, v in self.a.items() if sum(jk) <= order}
        return TruncBiSeries(coeffs, order, self.ring)

    def b_series(self, order=None):
        order = self.order if order is None else order
        coeffs = {i: v for i, v in self.b.items() if i <= order}
        return TruncUniSeries.from_taylor(coeffs, order, self.ring)

    def to_ring(self, ring):
        return CrossCapGerm(self.order, dict(self.a), dict(self.b), ring)


@dataclass(frozen=True)
class MapJet:
    """Jet of ``f = (X, X*Y + beta(Y), Z)``.

    Consistent truncation orders are ``X: M+1``, ``Y: M-1``, ``Z: M`` and
    ``beta: M+1``; :attr:`order` is M.
    """

    X: TruncBiSeries
    Y: TruncBiSeries
    Z: TruncBiSeries
    beta: TruncUniSeries

    @property
    def order(self):
        return self.Z.max_order

    @property
    def ring(self):
        return self.Z.ring

    def second_component(self, order=None):
        order = self.order if order is None else order
        X = self.X.resize(order)
        Y = self.Y.resize(order)
        return X * Y + compose_uni(self.beta.resize(order), Y)

    def to_ring(self, ring):
        return MapJet(
            self.X.to_ring(ring),
            self.Y.to_ring(ring),
            self.Z.to_ring(ring),
            self.beta.to_ring(ring),
        )


@dataclass(frozen=True)
class MetricJet:
    """Taylor data of ``E du^2 + 2F du dv + G dv^2`` through a common order.

    ``alphas = (a20, a11, a02)`` are the invariants fixing the quadratic part
    in normalized coordinates.
    """

    E: TruncBiSeries
    F: TruncBiSeries
    G: TruncBiSeries
    alphas: tuple

    def __post_init__(self):
        M = self.E.max_order
        if self.F.max_order != M or self.G.max_order != M:
            raise ValueError("E, F and G must share their truncation order")
        ring = self.E.ring
        object.__setattr__(self, "alphas", tuple(ring.convert(a) for a in self.alphas))
        if len(self.alphas) != 3:
            raise ValueError("alphas must be (a20, a11, a02)")

    @property
    def order(self):
        return self.E.max_order

    @property
    def ring(self):
        return self.E.ring

    def truncate(self, order):
        return MetricJet(
            self.E.truncate(order), self.F.truncate(order), self.G.truncate(order), self.alphas
        )

    def to_ring(self, ring):
        return MetricJet(
            self.E.to_ring(ring), self.F.to_ring(ring), self.G.to_ring(ring), self.alphas
        )

    @classmethod
    def from_forms(cls, E, F, G, alphas=None):
        """Build from raw forms, reading the alphas off the quadratic rows if omitted.

        Over the rationals this needs ``G(0,2)/2`` to be a rational square.
        """
        if alphas is None:
            alphas = alphas_from_forms(E, F, G)
        return cls(E, F, G, alphas)


def alphas_from_forms(E, F, G):
    ring = G.ring
    a02 = ring.sqrt(G[0, 2] / 2)
    ring.check_divisor(a02)
    a11 = G[1, 1] / (2 * a02)
    a20 = (F[1, 1] - a11 * a11 - 1) / a02
    return (a20, a11, a02)


def check_mapjet(jet):
    """Sign and vanishing conditions a formal solution must meet."""
    report = Report()
    ring = jet.ring
    X, Y, Z = jet.X, jet.Y, jet.Z
    for name, P, idx in (
        ("X(0,0)", X, (0, 0)),
        ("Y(0,0)", Y, (0, 0)),
        ("Z(0,0)", Z, (0, 0)),
        ("Z(1,0)", Z, (1, 0)),
        ("Z(0,1)", Z, (0, 1)),
    ):
        if not ring.is_zero(P[idx]):
            report.fail(f"{name} = {P[idx]} but must vanish")
    if not ring.eq(X[1, 0], 1):
        report.fail(f"X(1,0) = {X[1, 0]} but must be 1")
    if not ring.is_positive(Y[0, 1]):
        report.fail(f"Y(0,1) = {Y[0, 1]} but must be positive")
    if Z.max_order >= 2 and not ring.is_positive(Z[0, 2]):
        report.fail(f"Z(0,2) = {Z[0, 2]} but must be positive")
    if any(not ring.is_zero(jet.beta[r]) for r in range(min(3, jet.beta.max_order + 1))):
        report.fail("beta must vanish to second order")
    return report


def germ_to_mapjet(germ, target_order=None):
    """The jet ``(u, v, z(u, v), b)`` of a germ in canonical coordinates."""
    M = germ.order if target_order is None else target_order
    if M > germ.order:
        raise ValueError(f"germ only known through order {germ.order}")
    ring = germ.ring
    X = TruncBiSeries.variable("u", M + 1, ring)
    Y = TruncBiSeries.variable("v", M - 1, ring)
    Z = germ.z_series(M)
    b = {i: v for i, v in germ.b.items() if i <= M + 1}
    beta = TruncUniSeries.from_taylor(b, M + 1, ring)
    return MapJet(X, Y, Z, beta)


def fundamental_products(X, Y, Z, beta, order):
    """``(f_u.f_u, f_u.f_v, f_v.f_v)`` through ``order`` for f = (X, XY+beta(Y), Z).

    Inputs are padded with zeros to ``order + 1``.  Rows of X above order+1,
    of Y above order-1 and of Z above order never reach the result, so the
    padding is harmless as long as those rows are supplied.
    """
    W = order + 1
    X, Y, Z = X.resize(W), Y.resize(W), Z.resize(W)
    S = X * Y + compose_uni(beta.resize(W), Y)
    fu = [partial_derivative(P, "u") for P in (X, S, Z)]
    fv = [partial_derivative(P, "v") for P in (X, S, Z)]
    E = fu[0] * fu[0] + fu[1] * fu[1] + fu[2] * fu[2]
    F = fu[0] * fv[0] + fu[1] * fv[1] + fu[2] * fv[2]
    G = fv[0] * fv[0] + fv[1] * fv[1] + fv[2] * fv[2]
    return E, F, G


def first_fundamental_form(jet):
    """Pull-back metric of a map jet through the order the jet determines."""
    M = jet.order
    if M < 2:
        raise ValueError("the metric is only meaningful through order >= 2")
    if jet.X.max_order < M + 1 or jet.Y.max_order < M - 1 or jet.beta.max_order < M:
        raise ValueError(
            "jet orders too short: need X >= M+1, Y >= M-1, beta >= M "
            f"for M = {M}"
        )
    E, F, G = fundamental_products(jet.X, jet.Y, jet.Z, jet.beta, M)
    return MetricJet.from_forms(E, F, G)


def metric_of_germ(germ, order=None):
    return first_fundamental_form(germ_to_mapjet(germ, order))


def normalized_order2(alphas, ring=RATIONAL):
    """Expected order-2 Taylor values of E, F, G in normalized coordinates."""
    a20, a11, a02 = (ring.convert(a) for a in alphas)
    E = {(2, 0): 2 * a20 * a20, (1, 1): 2 * a20 * a11, (0, 2): 2 * (1 + a11 * a11)}
    F = {(2, 0): 2 * a20 * a11, (1, 1): a20 * a02 + a11 * a11 + 1, (0, 2): 2 * a11 * a02}
    G = {(2, 0): 2 * (1 + a11 * a11), (1, 1): 2 * a11 * a02, (0, 2): 2 * a02 * a02}
    return {"E": E, "F": F, "G": G}


def validate_normalized(metric):
    """Check the 2-jet of a metric against its normalized form."""
    report = Report()
    ring = metric.ring
    forms = {"E": metric.E, "F": metric.F, "G": metric.G}
    if metric.order < 2:
        report.fail(f"metric order {metric.order} is below 2")
        return report
    if not ring.is_positive(metric.alphas[2]):
        report.fail(f"a02 = {metric.alphas[2]} must be positive")
    constants = {"E": 1, "F": 0, "G": 0}
    for name, P in forms.items():
        if not ring.eq(P[0, 0], constants[name]):
            report.fail(f"{name}(0,0) = {P[0, 0]}, expected {constants[name]}")
        for idx in ((1, 0), (0, 1)):
            if not ring.is_zero(P[idx]):
                report.fail(f"{name}{idx} = {P[idx]}, expected 0")
    for name, expected in normalized_order2(metric.alphas, ring).items():
        P = forms[name]
        for idx, value in expected.items():
            if not ring.eq(P[idx], value):
                report.fail(f"{name}{idx} = {P[idx]}, expected {value}")
    return report


def validate_admissible(E, F, G):
    """Null direction along v at the origin with ``E_v = 2 F_u``, ``G_u = G_v = 0``."""
    report = Report()
    ring = E.ring
    if min(E.max_order, F.max_order, G.max_order) < 1:
        report.fail("admissibility needs first-order data")
        return report
    if not ring.is_zero(F[0, 0]):
        report.fail(f"F(0,0) = {F[0, 0]} must vanish")
    if not ring.is_zero(G[0, 0]):
        report.fail(f"G(0,0) = {G[0, 0]} must vanish")
    if not ring.eq(E[0, 1], 2 * F[1, 0]):
        report.fail(f"E_v = {E[0, 1]} differs from 2 F_u = {2 * F[1, 0]}")
    if not ring.is_zero(G[1, 0]):
        report.fail(f"G_u = {G[1, 0]} must vanish")
    if not ring.is_zero(G[0, 1]):
        report.fail(f"G_v = {G[0, 1]} must vanish")
    return report


def intrinsic_crosscap_test(E, F, G):
    """Hessian of ``EG - F^2`` at the origin and whether it is non-zero."""
    M = min(E.max_order, F.max_order, G.max_order)
    if M < 2:
        raise ValueError("the Hessian needs second-order data")
    E, F, G = E.truncate(M), F.truncate(M), G.truncate(M)
    delta = E * G - F * F
    hess = delta[2, 0] * delta[0, 2] - delta[1, 1] ** 2
    return hess, not E.ring.is_zero(hess)
