"""Scalar special-function kernels.

Gamma, k-Gamma, Struve, k-Struve, Mittag-Leffler and Fox-Wright functions,
all evaluated as guarded truncated series.  Every series term is assembled in
log space with an explicit sign bit (naive Gamma products overflow doubles
well inside a 50-term sum) and accumulated with compensated summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "TruncationPolicy",
    "KStruveParams",
    "WrightParams",
    "log_gamma",
    "k_gamma",
    "log_k_gamma",
    "struve_h",
    "struve_h_info",
    "k_struve",
    "k_struve_info",
    "mittag_leffler",
    "mittag_leffler_info",
    "fox_wright",
    "fox_wright_info",
]


@dataclass(frozen=True)
class TruncationPolicy:
    """Stop rules for truncated series summation.

    Summation halts at the first of: ``max_terms`` terms consumed, the last
    term satisfying ``|term| <= rel_tol * |partial_sum|`` with a nonzero
    partial sum, or a term whose log-magnitude exceeds ``overflow_guard``
    (an error).  The default of 50 terms is the plotting convention used
    throughout; tests that need tighter accuracy raise it explicitly.
    """

    max_terms: int = 50
    rel_tol: float = 1e-16
    overflow_guard: float = 700.0

    def __post_init__(self):
        if not isinstance(self.max_terms, int) or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if not (self.rel_tol >= 0.0 and math.isfinite(self.rel_tol)):
            raise DomainError(f"rel_tol must be a finite real >= 0, got {self.rel_tol!r}")
        if not math.isfinite(self.overflow_guard):
            raise DomainError("overflow_guard must be finite")


@dataclass(frozen=True)
class KStruveParams:
    """Parameter bundle (k, order nu, alternation scale c) for the k-Struve family.

    Requires k > 0 and nu/k + 1 > -1/2, i.e. nu > -(3/2) k.
    """

    k: float
    nu: float
    c: float = 1.0

    def __post_init__(self):
        for name in ("k", "nu", "c"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise DomainError(f"{name} must be a finite real, got {v!r}")
        if self.k <= 0:
            raise DomainError(f"k must be > 0, got {self.k}")
        if self.nu / self.k + 1 <= -0.5:
            raise DomainError(
                f"order out of range: need nu > -(3/2)*k, got nu={self.nu}, k={self.k}"
            )

    @property
    def order_ratio(self) -> float:
        return self.nu / self.k


@dataclass(frozen=True)
class WrightParams:
    """Parameter tuples for the Fox-Wright series.

    ``upper`` holds (a, A) pairs, ``lower`` holds (b, B) pairs, all A, B > 0.
    The series is entire when ``delta = 1 + sum(B) - sum(A) > 0``.  The
    borderline ``delta == 0`` is accepted with the finite convergence radius
    ``radius = prod(A^-A) * prod(B^B)``; ``delta < 0`` is rejected.
    """

    upper: tuple[tuple[float, float], ...]
    lower: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple((float(a), float(A)) for a, A in self.upper))
        object.__setattr__(self, "lower", tuple((float(b), float(B)) for b, B in self.lower))
        for _, step in self.upper + self.lower:
            if not (step > 0 and math.isfinite(step)):
                raise DomainError(f"all A, B coefficients must be strictly positive, got {step}")
        if self.delta < 0:
            raise DomainError(
                f"divergent parameter combination: 1 + sum(B) - sum(A) = {self.delta} < 0"
            )

    @property
    def delta(self) -> float:
        return 1.0 + sum(B for _, B in self.lower) - sum(A for _, A in self.upper)

    @property
    def radius(self) -> float:
        """Convergence radius when delta == 0 (infinite when delta > 0)."""
        if self.delta > 0:
            return math.inf
        log_r = sum(B * math.log(B) for _, B in self.lower) - sum(
            A * math.log(A) for _, A in self.upper
        )
        return math.exp(log_r)


class _KahanSum:
    """Compensated running sum; alternating series lose digits otherwise."""

    __slots__ = ("total", "carry")

    def __init__(self):
        self.total = 0.0
        self.carry = 0.0

    def add(self, value: float) -> None:
        value += self.carry
        previous = self.total
        self.total += value
        self.carry = value - (self.total - previous)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise DomainError(f"log_gamma requires a finite real, got {x!r}")
    if x <= 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def _signed_log_gamma(x: float) -> tuple[float, float]:
    """(sign, ln|Gamma(x)|) for any non-pole x; (0, -inf) at a pole.

    A zero sign marks a pole of Gamma, where the reciprocal 1/Gamma is taken
    as 0 inside series terms (analytic continuation of 1/Gamma).
    """
    if x > 0:
        return 1.0, math.lgamma(x)
    if x == math.floor(x):
        return 0.0, math.inf
    sign = 1.0 if math.floor(x) % 2 == 0 else -1.0
    return sign, math.lgamma(x)


def log_k_gamma(gamma: float, k: float) -> float:
    """ln of the k-Gamma function: (gamma/k - 1) ln k + ln Gamma(gamma/k)."""
    if not (k > 0 and math.isfinite(k)):
        raise DomainError(f"k must be > 0, got {k!r}")
    if not (gamma > 0 and math.isfinite(gamma)):
        raise DomainError(f"gamma must be > 0, got {gamma!r}")
    return (gamma / k - 1.0) * math.log(k) + math.lgamma(gamma / k)


def k_gamma(gamma: float, k: float) -> float:
    """k-Gamma function k^(gamma/k - 1) Gamma(gamma/k)."""
    return math.exp(log_k_gamma(gamma, k))


def _sum_series(terms, pol: TruncationPolicy, what: str) -> tuple[float, int, list[float]]:
    """Sum (log_magnitude, sign) pairs under the policy's stop rules.

    Returns (value, terms_used, signed_term_values).  ``sign == 0`` marks a
    term suppressed by a Gamma pole; it still counts toward max_terms.
    """
    acc = _KahanSum()
    used = 0
    values: list[float] = []
    for log_mag, sign in terms:
        used += 1
        if sign == 0.0:
            values.append(0.0)
            if used >= pol.max_terms:
                break
            continue
        if log_mag > pol.overflow_guard:
            raise ConvergenceError(
                f"{what}: term {used - 1} has log-magnitude {log_mag:.3g} "
                f"exceeding the overflow guard {pol.overflow_guard:.3g}"
            )
        term = sign * math.exp(log_mag)
        acc.add(term)
        values.append(term)
        if acc.total != 0.0 and abs(term) <= pol.rel_tol * abs(acc.total):
            break
        if used >= pol.max_terms:
            break
    return acc.total, used, values


_DEFAULT_POLICY = TruncationPolicy()


def struve_h_info(p: float, x: float, pol: TruncationPolicy = _DEFAULT_POLICY):
    """Classical Struve function H_p(x); returns (value, terms_used)."""
    if not (math.isfinite(p) and math.isfinite(x)):
        raise DomainError("p and x must be finite")
    if p <= -1.5:
        raise DomainError(f"struve_h requires p > -3/2, got p={p}")
    if x == 0.0:
        if p + 1 <= 0:
            raise DomainError(f"struve_h at x=0 needs p > -1, got p={p}")
        return 0.0, 1
    if x < 0 and p != math.floor(p):
        raise DomainError(
            f"struve_h at x < 0 requires an integer order (fractional power of a "
            f"negative base), got p={p}, x={x}"
        )
    log_half_x = math.log(abs(x) / 2.0)
    base_sign = -1.0 if (x < 0 and int(p) % 2 == 0) else 1.0

    def terms():
        for r in range(pol.max_terms):
            exponent = 2 * r + p + 1
            log_mag = exponent * log_half_x - math.lgamma(r + 1.5) - math.lgamma(r + p + 1.5)
            sign = (1.0 if r % 2 == 0 else -1.0) * base_sign
            yield log_mag, sign

    value, used, _ = _sum_series(terms(), pol, "struve_h")
    return value, used


def struve_h(p: float, x: float, pol: TruncationPolicy = _DEFAULT_POLICY) -> float:
    return struve_h_info(p, x, pol)[0]


def k_struve_info(params: KStruveParams, x: float, pol: TruncationPolicy = _DEFAULT_POLICY):
    """k-Struve function; returns (value, terms_used)."""
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    if x < 0:
        raise DomainError(f"k_struve requires x >= 0, got {x}")
    q = params.order_ratio
    if x == 0.0:
        if q + 1 <= 0:
            raise DomainError(f"k_struve at x=0 needs nu/k > -1, got nu/k={q}")
        return 0.0, 1
    k, nu, c = params.k, params.nu, params.c
    log_half_x = math.log(x / 2.0)
    log_abs_c = math.log(abs(c)) if c != 0 else -math.inf
    c_sign = -1.0 if c > 0 else 1.0  # sign contributed per power of (-c)

    def terms():
        for r in range(pol.max_terms):
            if c == 0 and r > 0:
                yield -math.inf, 0.0
                continue
            log_mag = (
                r * log_abs_c
                - log_k_gamma(r * k + nu + 1.5 * k, k)
                - math.lgamma(r + 1.5)
                + (2 * r + q + 1) * log_half_x
            )
            yield log_mag, c_sign ** r if c != 0 else (1.0 if r == 0 else 0.0)

    value, used, _ = _sum_series(terms(), pol, "k_struve")
    return value, used


def k_struve(params: KStruveParams, x: float, pol: TruncationPolicy = _DEFAULT_POLICY) -> float:
    return k_struve_info(params, x, pol)[0]


def mittag_leffler_info(
    alpha: float, beta: float, z: float, pol: TruncationPolicy = _DEFAULT_POLICY
):
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z); (value, terms_used).

    1/Gamma at a pole of Gamma(alpha*n + beta) is taken as 0.  Practical
    double-precision envelope for z < 0: cancellation grows like
    exp(|z|^(1/alpha)), so accuracy degrades once |z|^(1/alpha) exceeds ~35
    and the overflow guard trips near 700.  The kinetic solvers only need
    z = -(d t)^nu on bounded time windows, well inside the envelope.
    """
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be > 0, got {alpha!r}")
    if not (math.isfinite(beta) and math.isfinite(z)):
        raise DomainError("beta and z must be finite")
    if z == 0.0:
        sign, log_mag = _signed_log_gamma(beta)
        return (0.0 if sign == 0.0 else sign * math.exp(-log_mag)), 1
    log_abs_z = math.log(abs(z))
    z_sign = 1.0 if z > 0 else -1.0

    def terms():
        for n in range(pol.max_terms):
            g_sign, g_log = _signed_log_gamma(alpha * n + beta)
            if g_sign == 0.0:
                yield -math.inf, 0.0
                continue
            yield n * log_abs_z - g_log, (z_sign ** n) * g_sign

    value, used, _ = _sum_series(terms(), pol, "mittag_leffler")
    return value, used


def mittag_leffler(
    alpha: float, beta: float, z: float, pol: TruncationPolicy = _DEFAULT_POLICY
) -> float:
    return mittag_leffler_info(alpha, beta, z, pol)[0]


def _cvz_alternating(abs_terms: list[float]) -> float:
    """Cohen-Rodriguez Villegas-Zagier acceleration of sum (-1)^n b_n.

    Geometric convergence ~ (3 + sqrt(8))^(-N) for moment-type b_n; used for
    borderline Fox-Wright arguments where plain truncation stalls at the
    convergence radius.
    """
    n = len(abs_terms)
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    s = 0.0
    for j in range(n):
        c = b - c
        s += c * abs_terms[j]
        b = (j + n) * (j - n) * b / ((j + 0.5) * (j + 1.0))
    return s / d


def fox_wright_info(w: WrightParams, z: float, pol: TruncationPolicy = _DEFAULT_POLICY):
    """Fox-Wright series pPsiq; returns (value, terms_used).

    A Gamma pole in a numerator factor is a DomainError; a pole in a
    denominator factor zeroes the term.  On the borderline delta == 0 with
    |z| near the convergence radius, plain truncation cannot reach the stop
    tolerance; if the collected terms alternate strictly in sign the tail is
    resummed with alternating-series acceleration instead.
    """
    if not math.isfinite(z):
        raise DomainError("z must be finite")
    if w.delta == 0 and abs(z) > w.radius * (1 + 1e-12):
        raise DomainError(
            f"argument |z|={abs(z)} outside the convergence radius {w.radius} "
            "of a borderline (delta == 0) series"
        )
    log_abs_z = math.log(abs(z)) if z != 0 else -math.inf
    z_sign = 1.0 if z >= 0 else -1.0

    def terms():
        for n in range(pol.max_terms):
            if z == 0 and n > 0:
                yield -math.inf, 0.0
                continue
            log_mag = -math.lgamma(n + 1)
            sign = z_sign ** n
            if n > 0:
                log_mag += n * log_abs_z
            pole = False
            for a, step in w.upper:
                g_sign, g_log = _signed_log_gamma(a + step * n)
                if g_sign == 0.0:
                    raise DomainError(
                        f"Gamma pole in a numerator factor at term {n}: "
                        f"argument {a + step * n}"
                    )
                log_mag += g_log
                sign *= g_sign
            for b, step in w.lower:
                g_sign, g_log = _signed_log_gamma(b + step * n)
                if g_sign == 0.0:
                    pole = True
                    break
                log_mag -= g_log
                sign *= g_sign
            if pole:
                yield -math.inf, 0.0
            else:
                yield log_mag, sign

    value, used, signed = _sum_series(terms(), pol, "fox_wright")
    if used < pol.max_terms or w.delta > 0 or z == 0:
        return value, used
    # Borderline series truncated without meeting the stop rule: accelerate
    # if the terms alternate strictly.
    alternating = all(t != 0.0 for t in signed) and all(
        signed[i] * signed[i + 1] < 0 for i in range(len(signed) - 1)
    )
    if alternating:
        lead = 1.0 if signed[0] > 0 else -1.0
        # 100 terms already give ~ 5.83^-100; more would overflow the divisor
        window = signed[: min(len(signed), 100)]
        value = lead * _cvz_alternating([abs(t) for t in window])
    return value, used


def fox_wright(w: WrightParams, z: float, pol: TruncationPolicy = _DEFAULT_POLICY) -> float:
    return fox_wright_info(w, z, pol)[0]
