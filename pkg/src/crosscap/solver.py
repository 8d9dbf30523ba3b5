"""
Order-by-order isometric realization of a Whitney metric as a cross cap.

Given a metric ``(E, F, G)`` in normalized coordinates and a target
characteristic function ``beta``, the m-th formal solution is the unique
triple ``(X, Y, Z)`` with ``X`` known through order m+1, ``Y`` through m-1
and ``Z`` through m such that ``f = (X, XY + beta(Y), Z)`` reproduces the
metric modulo terms of order m+1.

Going from m-1 to m adds the rows

    X_i = X(i, m+1-i)  (i = 0..m+1)
    Y_j = Y(j, m-1-j)  (j = 0..m-1)
    Z_k = Z(k, m-k)    (k = 0..m)

which enter the order-m row of the metric linearly.  The constant parts of
those linear relations (``residuals``) come from full truncated products
with the new rows set to zero; the rows are then recovered by explicit
back-substitution.
"""
from dataclasses import dataclass

from .exceptions import ConsistencyError, DomainError
from .geometry import (
    MapJet,
    Report,
    check_mapjet,
    fundamental_products,
    validate_normalized,
)
from .series import TruncBiSeries, TruncUniSeries, equals_mod

__all__ = [
    "FormalSolution",
    "ResidualRow",
    "base_case",
    "residuals",
    "leading_terms",
    "extend",
    "iter_solutions",
    "realize",
    "verify_realization",
    "target_beta",
]


@dataclass(frozen=True)
class FormalSolution:
    m: int
    X: TruncBiSeries
    Y: TruncBiSeries
    Z: TruncBiSeries
    beta: TruncUniSeries

    def as_mapjet(self):
        return MapJet(self.X, self.Y, self.Z, self.beta)


@dataclass(frozen=True)
class ResidualRow:
    """Right-hand sides of the order-m relations, indexed by k = 0..m.

    With the order-m unknowns set to zero,
    ``E[k] = (E(k, m-k) - (f_u.f_u)(k, m-k)) / 2``,
    ``F[k] = F(k, m-k) - (f_u.f_v)(k, m-k)`` and
    ``G[k] = (G(k, m-k) - (f_v.f_v)(k, m-k)) / 2``.
    """

    m: int
    E: tuple
    F: tuple
    G: tuple


def target_beta(beta, order, ring):
    """A characteristic function as an order-``order`` series.

    ``None`` means zero.  Dicts map r -> Taylor value.  Coefficients not given
    are taken to be zero, so a polynomial target stays a polynomial.
    """
    if beta is None:
        return TruncUniSeries.zero(order, ring)
    if isinstance(beta, dict):
        beta = {r: c for r, c in beta.items() if r <= order}
        return TruncUniSeries.from_taylor(beta, order, ring)
    beta = beta.to_ring(ring) if beta.ring != ring else beta
    for r in range(min(3, beta.max_order + 1)):
        if not ring.is_zero(beta[r]):
            raise DomainError("characteristic function must vanish to second order")
    return beta.resize(order)


def base_case(metric, beta=None):
    """The unique second formal solution ``(u, v, (a20 u^2 + 2 a11 uv + a02 v^2)/2)``."""
    ring = metric.ring
    a20, a11, a02 = metric.alphas
    if not ring.is_positive(a02):
        raise DomainError(f"a02 = {a02} must be positive")
    report = validate_normalized(metric)
    if not report:
        raise DomainError(f"metric is not in normalized coordinates: {report}")
    X = TruncBiSeries.variable("u", 3, ring)
    Y = TruncBiSeries.variable("v", 1, ring)
    Z = TruncBiSeries({(2, 0): a20, (1, 1): a11, (0, 2): a02}, 2, ring)
    return FormalSolution(2, X, Y, Z, target_beta(beta, 3, ring))


def _padded(sol, m):
    return (
        sol.X.resize(m + 1),
        sol.Y.resize(m - 1),
        sol.Z.resize(m),
        sol.beta.resize(m + 1),
    )


def residuals(sol, metric, m, beta=None):
    """Order-m residual rows for extending ``sol`` (the (m-1)-th solution)."""
    if sol.m != m - 1:
        raise ValueError(f"need the ({m - 1})-th solution, got m = {sol.m}")
    if metric.order < m:
        raise ValueError(f"metric known through order {metric.order}, need {m}")
    ring = metric.ring
    X, Y, Z, b = _padded(sol, m)
    if beta is not None:
        b = target_beta(beta, m + 1, ring)
    PE, PF, PG = fundamental_products(X, Y, Z, b, m)
    half = ring.from_ratio(1, 2)
    E = tuple(half * (metric.E[k, m - k] - PE[k, m - k]) for k in range(m + 1))
    F = tuple(metric.F[k, m - k] - PF[k, m - k] for k in range(m + 1))
    G = tuple(half * (metric.G[k, m - k] - PG[k, m - k]) for k in range(m + 1))
    return ResidualRow(m, E, F, G)


def leading_terms(Xs, Ys, Zs, alphas, m):
    """Linear parts of the order-m relations evaluated at the given top rows.

    Returns the left-hand sides ``(E_k, F_k, G_k)`` for k = 0..m, matching the
    normalization of :class:`ResidualRow`.
    """
    a20, a11, a02 = alphas

    def Y(j):
        return Ys[j] if 0 <= j <= m - 1 else 0

    def Z(k):
        return Zs[k] if 0 <= k <= m else 0

    E = tuple(
        Xs[k + 1] + (k + 1) * (m - k) * Y(k) + k * a20 * Z(k) + (m - k) * a11 * Z(k + 1)
        for k in range(m + 1)
    )
    F = tuple(
        Xs[k] + m * k * Y(k - 1) + k * a20 * Z(k - 1) + m * a11 * Z(k) + (m - k) * a02 * Z(k + 1)
        for k in range(m + 1)
    )
    G = tuple(
        k * (k - 1) * Y(k - 2) + k * a11 * Z(k - 1) + (m - k) * a02 * Z(k)
        for k in range(m + 1)
    )
    return E, F, G


def _solve_rows(res, alphas, m, ring):
    a20, a11, a02 = alphas
    Et, Ft, Gt = res.E, res.F, res.G
    scale = max([1] + [abs(v) for v in Et + Ft + Gt])

    # divisors are a02 times integers, so they are judged on an absolute scale
    def div(num, den):
        ring.check_divisor(den)
        return num / den

    Z = [ring.zero] * (m + 1)
    Y = [ring.zero] * m
    X = [ring.zero] * (m + 2)

    Z[0] = div(Gt[0], m * a02)
    Z[1] = div(Gt[1] - a11 * Z[0], (m - 1) * a02)
    for k in range(m - 1):
        num = -a20 * (k + 2) * Z[k] + (k + 2) * (Ft[k + 1] - Et[k]) - k * Gt[k + 2]
        Z[k + 2] = div(num, a02 * (2 * m - k - 2))
    for k in range(m - 1):
        num = Gt[k + 2] - a11 * (k + 2) * Z[k + 1] - a02 * (m - k - 2) * Z[k + 2]
        Y[k] = div(num, (k + 1) * (k + 2))
    k = m - 1
    num = Ft[k + 1] - Et[k] - a20 * Z[k] - k * a11 * Z[k + 1]
    Y[k] = div(num, k * (k + 1))
    X[0] = Ft[0] - m * a11 * Z[0] - m * a02 * Z[1]
    for k in range(m + 1):
        Yk = Y[k] if k < m else 0
        Zk1 = Z[k + 1] if k < m else 0
        X[k + 1] = Et[k] - (k + 1) * (m - k) * Yk - k * a20 * Z[k] - (m - k) * a11 * Zk1
    return X, Y, Z, scale


def _check_consistency(X, Y, Z, res, alphas, m, ring, rtol, scale):
    lhs = leading_terms(X, Y, Z, alphas, m)
    rhs = (res.E, res.F, res.G)
    for name, left, right in zip("EFG", lhs, rhs):
        for k, (a, b) in enumerate(zip(left, right)):
            if ring.exact:
                ok = a == b
            else:
                ok = abs(a - b) <= rtol * scale
            if not ok:
                raise ConsistencyError(
                    f"order-{m} relation {name}_{k} violated: {a!r} != {b!r}"
                )


def extend(sol, metric, beta, m, rtol=1e-8):
    """The m-th formal solution from the (m-1)-th one."""
    if m < 3:
        raise ValueError("extend starts at m = 3; use base_case for m = 2")
    ring = metric.ring
    alphas = metric.alphas
    if not ring.is_positive(alphas[2]):
        raise DomainError(f"a02 = {alphas[2]} must be positive")
    beta = target_beta(beta, m + 1, ring) if beta is not None else sol.beta.resize(m + 1)
    sol = FormalSolution(sol.m, sol.X, sol.Y, sol.Z, beta)
    res = residuals(sol, metric, m)
    X, Y, Z, scale = _solve_rows(res, alphas, m, ring)
    _check_consistency(X, Y, Z, res, alphas, m, ring, rtol, scale)
    Xs, Ys, Zs, b = _padded(sol, m)
    Xs = Xs.with_row(m + 1, [X[i] for i in range(m + 2)])
    Ys = Ys.with_row(m - 1, [Y[j] for j in range(m)])
    Zs = Zs.with_row(m, [Z[k] for k in range(m + 1)])
    return FormalSolution(m, Xs, Ys, Zs, b)


def iter_solutions(metric, beta=None, order=None, rtol=1e-8):
    """Yield the formal solutions for m = 2, 3, ..., ``order``."""
    order = metric.order if order is None else order
    if order < 2:
        raise ValueError("realization order must be at least 2")
    if metric.order < order:
        raise ValueError(f"metric known through order {metric.order}, need {order}")
    ring = metric.ring
    beta = target_beta(beta, order + 1, ring)
    sol = base_case(metric, beta.truncate(3))
    yield sol
    for m in range(3, order + 1):
        sol = extend(sol, metric, beta.truncate(m + 1), m, rtol=rtol)
        yield sol


def realize(metric, beta=None, order=None, rtol=1e-8):
    """Formal isometric realization ``(X, Y, Z, beta)`` through ``order``."""
    sol = None
    for sol in iter_solutions(metric, beta, order, rtol):
        pass
    return sol.as_mapjet()


@dataclass
class VerificationReport(Report):
    order: int = 0
    mismatches: list = None
    leading_terms_ok: object = None

    def __str__(self):
        base = super().__str__()
        if self.leading_terms_ok is None:
            return base
        return f"{base} (leading-term relations: {'ok' if self.leading_terms_ok else 'violated'})"


def verify_realization(jet, metric, m=None):
    """Recompute the pull-back metric of ``jet`` and compare through order m.

    Also re-derives the order-m top rows of the jet from its lower rows via
    the linear leading-term relations and reports whether they agree.
    """
    m = jet.order if m is None else m
    ring = metric.ring
    report = VerificationReport(order=m, mismatches=[])
    if jet.X.max_order < m + 1 or jet.Y.max_order < m - 1 or jet.Z.max_order < m:
        report.fail(f"jet too short for order {m}")
        return report
    if metric.order < m:
        report.fail(f"metric known through order {metric.order} only")
        return report
    shape = check_mapjet(jet)
    for msg in shape.failures:
        report.fail(msg)
    E, F, G = fundamental_products(jet.X, jet.Y, jet.Z, jet.beta, m)
    for name, mine, theirs in (("E", E, metric.E), ("F", F, metric.F), ("G", G, metric.G)):
        if equals_mod(mine, theirs, m):
            continue
        for n in range(m + 1):
            for k in range(n + 1):
                if not ring.eq(mine[k, n - k], theirs[k, n - k]):
                    report.mismatches.append((name, k, n - k, theirs[k, n - k], mine[k, n - k]))
        report.fail(f"{name} differs from the metric through order {m}")
    if m >= 3:
        lower = FormalSolution(
            m - 1,
            jet.X.truncate(m),
            jet.Y.truncate(m - 2),
            jet.Z.truncate(m - 1),
            jet.beta.resize(m + 1),
        )
        res = residuals(lower, metric, m)
        Xs = jet.X.row(m + 1)
        Ys = jet.Y.row(m - 1)
        Zs = jet.Z.row(m)
        lhs = leading_terms(Xs, Ys, Zs, metric.alphas, m)
        report.leading_terms_ok = all(
            ring.eq(a, b)
            for left, right in zip(lhs, (res.E, res.F, res.G))
            for a, b in zip(left, right)
        )
    return report
