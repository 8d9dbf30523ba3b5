"""
Truncated formal power series in one and two variables.

Coefficients are stored in the Taylor convention: the entry ``P[k, l]`` of a
bivariate series is the derivative d^{k+l}P/du^k dv^l at the origin, so the
monomial coefficient of u^k v^l is ``P[k, l] / (k! l!)``.  With this storage
the derivative is a plain index shift and products carry binomial weights.

A series of ``max_order`` M knows every coefficient of total order <= M and
nothing beyond.  Derivatives lose one order; all binary operations demand
equal truncation orders so that unknown rows are never read by accident.
"""
import math
from functools import lru_cache

from .exceptions import ConditioningError, DomainError
from .rings import RATIONAL

__all__ = [
    "TruncBiSeries",
    "TruncUniSeries",
    "linear_combine",
    "multiply",
    "partial_derivative",
    "shift_multiply",
    "order_of",
    "equals_mod",
    "compose_uni",
    "compose_pair",
    "invert_pair",
]


@lru_cache(maxsize=None)
def _binom_row(n):
    return tuple(math.comb(n, k) for k in range(n + 1))


def _index(direction):
    if direction in ("u", "x", 0):
        return 0
    if direction in ("v", "y", 1):
        return 1
    raise ValueError(f"direction must be 'u' or 'v', got {direction!r}")


class TruncBiSeries:
    """Bivariate series truncated at total order ``max_order``.

    Build instances with :meth:`from_taylor`, :meth:`from_monomials`,
    :meth:`zero`, :meth:`constant` or :meth:`variable`.
    """

    __slots__ = ("_c", "max_order", "ring", "_nz")

    def __init__(self, coeffs=None, max_order=0, ring=RATIONAL):
        if max_order < 0:
            raise ValueError("max_order must be non-negative")
        zero = ring.zero
        rows = [[zero] * (max_order - k + 1) for k in range(max_order + 1)]
        for (k, l), value in (coeffs or {}).items():
            if k < 0 or l < 0 or k + l > max_order:
                raise IndexError(f"index ({k}, {l}) outside order {max_order}")
            rows[k][l] = ring.convert(value)
        self._c = rows
        self.max_order = max_order
        self.ring = ring
        self._nz = None

    @classmethod
    def _raw(cls, rows, max_order, ring):
        obj = cls.__new__(cls)
        obj._c = rows
        obj.max_order = max_order
        obj.ring = ring
        obj._nz = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_taylor(cls, coeffs, max_order, ring=RATIONAL):
        return cls(coeffs, max_order, ring)

    @classmethod
    def from_monomials(cls, coeffs, max_order, ring=RATIONAL):
        """Build from monomial coefficients ``{(k, l): c}`` meaning c u^k v^l."""
        taylor = {}
        for (k, l), c in coeffs.items():
            scale = math.factorial(k) * math.factorial(l)
            taylor[k, l] = ring.convert(c) * scale
        return cls(taylor, max_order, ring)

    @classmethod
    def zero(cls, max_order, ring=RATIONAL):
        return cls(None, max_order, ring)

    @classmethod
    def constant(cls, value, max_order, ring=RATIONAL):
        return cls({(0, 0): value}, max_order, ring)

    @classmethod
    def variable(cls, name, max_order, ring=RATIONAL):
        if max_order < 1:
            return cls.zero(max_order, ring)
        idx = (1, 0) if _index(name) == 0 else (0, 1)
        return cls({idx: 1}, max_order, ring)

    # -- access ---------------------------------------------------------
    def __getitem__(self, index):
        k, l = index
        if k < 0 or l < 0:
            return self.ring.zero
        if k + l > self.max_order:
            raise IndexError(
                f"coefficient ({k}, {l}) is beyond truncation order {self.max_order}"
            )
        return self._c[k][l]

    def monomial(self, k, l):
        """Coefficient of u^k v^l."""
        return self[k, l] / (math.factorial(k) * math.factorial(l))

    def row(self, n):
        """Coefficients ``[P(0, n), P(1, n-1), ..., P(n, 0)]`` of order n."""
        return [self[k, n - k] for k in range(n + 1)]

    def items(self):
        for k, row in enumerate(self._c):
            for l, value in enumerate(row):
                yield (k, l), value

    def nonzero(self):
        """List of ``(k, l, value)`` for non-zero entries, sorted by total order."""
        if self._nz is None:
            nz = [(k, l, v) for (k, l), v in self.items() if v != 0]
            nz.sort(key=lambda t: t[0] + t[1])
            self._nz = nz
        return self._nz

    def to_dict(self, monomial=False, skip_zero=True):
        out = {}
        for (k, l), v in self.items():
            if skip_zero and v == 0:
                continue
            out[k, l] = self.monomial(k, l) if monomial else v
        return out

    # -- reshaping ------------------------------------------------------
    def truncate(self, order):
        if order > self.max_order:
            raise ValueError(f"cannot truncate order {self.max_order} series to {order}")
        rows = [list(self._c[k][: order - k + 1]) for k in range(order + 1)]
        return TruncBiSeries._raw(rows, order, self.ring)

    def pad(self, order):
        """Extend with zero placeholders up to ``order``."""
        if order < self.max_order:
            raise ValueError(f"cannot pad order {self.max_order} series to {order}")
        zero = self.ring.zero
        rows = []
        for k in range(order + 1):
            old = self._c[k] if k <= self.max_order else []
            rows.append(list(old) + [zero] * (order - k + 1 - len(old)))
        return TruncBiSeries._raw(rows, order, self.ring)

    def resize(self, order):
        return self.truncate(order) if order <= self.max_order else self.pad(order)

    def with_row(self, n, values):
        """Copy with the order-n row replaced; ``values[k]`` is P(k, n-k)."""
        if n > self.max_order or len(values) != n + 1:
            raise ValueError("row does not fit this series")
        rows = [list(r) for r in self._c]
        for k, value in enumerate(values):
            rows[k][n - k] = self.ring.convert(value)
        return TruncBiSeries._raw(rows, self.max_order, self.ring)

    def to_ring(self, ring):
        rows = [[ring.convert(v) for v in r] for r in self._c]
        return TruncBiSeries._raw(rows, self.max_order, ring)

    def is_zero(self):
        return not self.nonzero()

    def evaluate(self, u, v):
        """Evaluate the truncated polynomial (floats or numpy arrays)."""
        total = 0.0
        for k, l, c in self.nonzero():
            coeff = float(c) / (math.factorial(k) * math.factorial(l))
            total = total + coeff * u**k * v**l
        return total

    # -- arithmetic -----------------------------------------------------
    def _check(self, other):
        if not isinstance(other, TruncBiSeries):
            raise TypeError(f"expected TruncBiSeries, got {type(other).__name__}")
        if other.max_order != self.max_order:
            raise ValueError(
                f"truncation orders differ: {self.max_order} vs {other.max_order}"
            )
        if other.ring != self.ring:
            raise ValueError(f"rings differ: {self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, TruncBiSeries):
            return self + TruncBiSeries.constant(other, self.max_order, self.ring)
        return linear_combine(1, self, 1, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, TruncBiSeries):
            return self - TruncBiSeries.constant(other, self.max_order, self.ring)
        return linear_combine(1, self, -1, other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        rows = [[-v for v in r] for r in self._c]
        return TruncBiSeries._raw(rows, self.max_order, self.ring)

    def __mul__(self, other):
        if isinstance(other, TruncBiSeries):
            return multiply(self, other)
        c = self.ring.convert(other)
        rows = [[c * v for v in r] for r in self._c]
        return TruncBiSeries._raw(rows, self.max_order, self.ring)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = TruncBiSeries.constant(1, self.max_order, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncBiSeries):
            return NotImplemented
        return (
            self.max_order == other.max_order
            and self.ring == other.ring
            and equals_mod(self, other, self.max_order)
        )

    __hash__ = None

    def __repr__(self):
        terms = []
        for k, l, c in self.nonzero():
            mono = "*".join(
                s for s in (_pw("u", k), _pw("v", l)) if s
            )
            coeff = self.ring.format(self.monomial(k, l))
            terms.append(f"{coeff}*{mono}" if mono else coeff)
        body = " + ".join(terms) if terms else "0"
        return f"TruncBiSeries({body} + O({self.max_order + 1}))"


def _pw(name, n):
    if n == 0:
        return ""
    return name if n == 1 else f"{name}^{n}"


class TruncUniSeries:
    """Univariate series stored as Taylor values ``B[r]`` for r <= max_order."""

    __slots__ = ("_c", "max_order", "ring")

    def __init__(self, coeffs=(), ring=RATIONAL, max_order=None):
        values = [ring.convert(c) for c in coeffs]
        if max_order is None:
            max_order = len(values) - 1
        if max_order < 0:
            raise ValueError("a univariate series needs at least one coefficient")
        if len(values) > max_order + 1:
            raise IndexError("more coefficients than the truncation order allows")
        values += [ring.zero] * (max_order + 1 - len(values))
        self._c = values
        self.max_order = max_order
        self.ring = ring

    @classmethod
    def zero(cls, max_order, ring=RATIONAL):
        return cls((), ring, max_order)

    @classmethod
    def from_taylor(cls, coeffs, max_order, ring=RATIONAL):
        """``coeffs`` maps r to the r-th derivative at 0."""
        values = [ring.zero] * (max_order + 1)
        for r, c in coeffs.items():
            if not 0 <= r <= max_order:
                raise IndexError(f"index {r} outside order {max_order}")
            values[r] = ring.convert(c)
        return cls(values, ring, max_order)

    @classmethod
    def from_monomials(cls, coeffs, max_order, ring=RATIONAL):
        return cls.from_taylor(
            {r: ring.convert(c) * math.factorial(r) for r, c in coeffs.items()},
            max_order,
            ring,
        )

    def __getitem__(self, r):
        if r < 0:
            return self.ring.zero
        if r > self.max_order:
            raise IndexError(f"coefficient {r} is beyond truncation order {self.max_order}")
        return self._c[r]

    def monomial(self, r):
        return self[r] / math.factorial(r)

    def to_dict(self, skip_zero=True):
        return {r: c for r, c in enumerate(self._c) if not (skip_zero and c == 0)}

    def derivative(self):
        if self.max_order == 0:
            raise ValueError("derivative of an order-0 series is undetermined")
        return TruncUniSeries(self._c[1:], self.ring, self.max_order - 1)

    def truncate(self, order):
        if order > self.max_order:
            raise ValueError(f"cannot truncate order {self.max_order} series to {order}")
        return TruncUniSeries(self._c[: order + 1], self.ring, order)

    def pad(self, order):
        if order < self.max_order:
            raise ValueError(f"cannot pad order {self.max_order} series to {order}")
        return TruncUniSeries(self._c, self.ring, order)

    def resize(self, order):
        return self.truncate(order) if order <= self.max_order else self.pad(order)

    def to_ring(self, ring):
        return TruncUniSeries([ring.convert(c) for c in self._c], ring, self.max_order)

    def is_zero(self):
        return all(self.ring.is_zero(c) for c in self._c)

    def evaluate(self, t):
        total = 0.0
        for r, c in enumerate(self._c):
            if c != 0:
                total = total + float(c) / math.factorial(r) * t**r
        return total

    def __eq__(self, other):
        if not isinstance(other, TruncUniSeries):
            return NotImplemented
        return self.max_order == other.max_order and all(
            self.ring.eq(a, b) for a, b in zip(self._c, other._c)
        )

    __hash__ = None

    def __repr__(self):
        terms = [
            f"{self.ring.format(self.monomial(r))}*t^{r}"
            for r, c in enumerate(self._c)
            if c != 0
        ]
        return f"TruncUniSeries({' + '.join(terms) or '0'} + O({self.max_order + 1}))"


# -- operations -----------------------------------------------------------


def linear_combine(alpha, P, beta, Q):
    """Return ``alpha*P + beta*Q`` coefficientwise."""
    P._check(Q)
    ring = P.ring
    a, b = ring.convert(alpha), ring.convert(beta)
    rows = [
        [a * p + b * q for p, q in zip(rp, rq)] for rp, rq in zip(P._c, Q._c)
    ]
    return TruncBiSeries._raw(rows, P.max_order, ring)


def _mul2(P, Q):
    M = P.max_order
    rows = [[P.ring.zero] * (M - k + 1) for k in range(M + 1)]
    qnz = Q.nonzero()
    for s, t, a in P.nonzero():
        budget = M - s - t
        for i, j, b in qnz:
            if i + j > budget:
                break
            k, l = s + i, t + j
            rows[k][l] += (_binom_row(k)[s] * _binom_row(l)[t]) * a * b
    return TruncBiSeries._raw(rows, M, P.ring)


def multiply(*series):
    """Truncated product of one or more series of a common order."""
    if not series:
        raise ValueError("multiply needs at least one operand")
    result = series[0]
    for other in series[1:]:
        result._check(other)
        result = _mul2(result, other)
    return result


def partial_derivative(P, direction):
    """Formal partial derivative; the result is one order shorter."""
    if P.max_order == 0:
        raise ValueError("derivative of an order-0 series is undetermined")
    M = P.max_order - 1
    if _index(direction) == 0:
        rows = [list(P._c[k + 1][: M - k + 1]) for k in range(M + 1)]
    else:
        rows = [list(P._c[k][1 : M - k + 2]) for k in range(M + 1)]
    return TruncBiSeries._raw(rows, M, P.ring)


def shift_multiply(P, monomial):
    """Multiply by ``u`` or ``v``; known one order further than ``P``."""
    M = P.max_order + 1
    ring = P.ring
    rows = [[ring.zero] * (M - k + 1) for k in range(M + 1)]
    along_u = _index(monomial) == 0
    for k, l, c in P.nonzero():
        if along_u:
            rows[k + 1][l] = (k + 1) * c
        else:
            rows[k][l + 1] = (l + 1) * c
    return TruncBiSeries._raw(rows, M, ring)


def order_of(P):
    """Smallest k+l with a non-zero coefficient, ``math.inf`` for zero."""
    for k, l, c in P.nonzero():
        if not P.ring.is_zero(c):
            return k + l
    return math.inf


def equals_mod(P, Q, m):
    """True iff P and Q agree on every coefficient of order <= m."""
    if m > P.max_order or m > Q.max_order:
        raise ValueError(
            f"cannot compare through order {m}: series are truncated at "
            f"{P.max_order} and {Q.max_order}"
        )
    eq = P.ring.eq
    return all(
        eq(P._c[k][n - k], Q._c[k][n - k]) for n in range(m + 1) for k in range(n + 1)
    )


def compose_uni(B, Y):
    """The series ``B(Y)`` for a univariate ``B`` and ``Y`` without constant term.

    The result is known through ``min(B.max_order, Y.max_order)``.
    """
    if Y[0, 0] != 0:
        raise DomainError("inner series must have zero constant term")
    N = min(B.max_order, Y.max_order)
    Yn = Y.truncate(N)
    ring = Y.ring
    # Horner in Y
    result = TruncBiSeries.constant(B.monomial(N), N, ring)
    for r in range(N - 1, -1, -1):
        result = _mul2(result, Yn)
        result._c[0][0] += ring.convert(B.monomial(r))
    return result


def _powers(P, n):
    out = [TruncBiSeries.constant(1, P.max_order, P.ring)]
    for _ in range(n):
        out.append(_mul2(out[-1], P))
    return out


def compose_pair(P, U, V):
    """The series ``P(U, V)`` with U, V free of constant terms.

    Known through the smallest of the three truncation orders.
    """
    if U[0, 0] != 0 or V[0, 0] != 0:
        raise DomainError("substituted series must have zero constant terms")
    M = min(P.max_order, U.max_order, V.max_order)
    ring = P.ring
    Un, Vn = U.truncate(M), V.truncate(M)
    Upow, Vpow = _powers(Un, M), _powers(Vn, M)
    result = TruncBiSeries.zero(M, ring)
    for k in range(M + 1):
        # inner = sum_l P(k, l)/l! V^l, then weight by U^k / k!
        inner = None
        for l in range(M - k + 1):
            c = P[k, l]
            if c == 0:
                continue
            term = Vpow[l] * (c / math.factorial(l))
            inner = term if inner is None else inner + term
        if inner is None:
            continue
        result = result + _mul2(inner, Upow[k]) * ring.convert(
            ring.one / math.factorial(k)
        )
    return result


def invert_pair(X, Y):
    """Formal inverse ``(U, V)`` of the map ``(u, v) -> (X, Y)``.

    Solves ``X(U, V) = x`` and ``Y(U, V) = y`` order by order against the
    inverse of the linear part.
    """
    if X[0, 0] != 0 or Y[0, 0] != 0:
        raise DomainError("map must fix the origin")
    N = min(X.max_order, Y.max_order)
    ring = X.ring
    if N < 1:
        raise ValueError("inversion needs at least the linear part")
    a, b, c, d = X[1, 0], X[0, 1], Y[1, 0], Y[0, 1]
    det = a * d - b * c
    if ring.is_zero(det) and ring.exact:
        raise DomainError("linear part is singular")
    try:
        ring.check_divisor(det, scale=max(abs(a), abs(b), abs(c), abs(d), 1))
    except DomainError:
        raise DomainError("linear part is singular") from None
    except ConditioningError:
        raise ConditioningError(f"linear part is near-singular (det={det!r})") from None
    ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det

    U = TruncBiSeries({(1, 0): ia, (0, 1): ib}, N, ring)
    V = TruncBiSeries({(1, 0): ic, (0, 1): id_}, N, ring)
    Xn, Yn = X.truncate(N), Y.truncate(N)
    for n in range(2, N + 1):
        cx = compose_pair(Xn.truncate(n), U.truncate(n), V.truncate(n))
        cy = compose_pair(Yn.truncate(n), U.truncate(n), V.truncate(n))
        rx = [-v for v in cx.row(n)]
        ry = [-v for v in cy.row(n)]
        U = U.with_row(n, [ia * p + ib * q for p, q in zip(rx, ry)])
        V = V.with_row(n, [ic * p + id_ * q for p, q in zip(rx, ry)])
    return U, V
