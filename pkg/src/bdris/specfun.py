"""Special functions needed by the SNR closed forms.

All routines are scalar, pure and reentrant.  Incomplete-gamma tails are
also exposed in log form so that outage values far below the smallest
double (1e-308) stay representable.
"""

from __future__ import annotations

import math
import sys

from scipy import integrate
from scipy.special import erfcx

__all__ = [
    "DomainError",
    "ConvergenceError",
    "ln_gamma",
    "reg_lower_gamma",
    "reg_upper_gamma",
    "log_reg_lower_gamma",
    "log_reg_upper_gamma",
    "bessel_i",
    "bessel_i_scaled",
    "laguerre_half",
    "gauss_2f1_unit_a",
]

EPS = sys.float_info.epsilon
FPMIN = sys.float_info.min / EPS
LOG_2PI = math.log(2.0 * math.pi)

# Shape above which the transition region x ~ a is handled by the uniform
# asymptotic expansion instead of the (slow, cancellation-prone) series/CF.
BIG_SHAPE = 1.0e4
# |eta|*sqrt(a) beyond which the uniform expansion is not needed.
_UNIFORM_WIDTH = 35.0
_MAX_ITER = 200_000

BESSEL_OVERFLOW_GUARD = 700.0
_BESSEL_ASYMPTOTIC_FROM = 30.0

# Taylor coefficients of the first two uniform-expansion coefficient
# functions around eta = 0 (used where their closed forms cancel).
_C0_TAYLOR = (
    -1.0 / 3.0, 1.0 / 12.0, -2.0 / 135.0, 1.0 / 864.0, 1.0 / 2835.0,
    -139.0 / 777600.0, 1.0 / 25515.0, -571.0 / 261273600.0,
    -281.0 / 151559100.0, 163879.0 / 197522841600.0,
)
_C1_TAYLOR = (
    -1.0 / 540.0, -1.0 / 288.0, 1.0 / 378.0, -77.0 / 77760.0, 1.0 / 4860.0,
    -1.0 / 2488320.0, -2743.0 / 151559100.0, 41969.0 / 5486745600.0,
)


class DomainError(ValueError):
    """Argument outside the domain an operation supports."""


class ConvergenceError(ArithmeticError):
    """An iterative evaluation did not reach its tolerance."""


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def _log_gamma_star(a: float) -> float:
    # ln of Gamma(a) / (sqrt(2 pi) a^(a - 1/2) e^-a), the Stirling remainder.
    if a >= 10.0:
        r = 1.0 / a
        r2 = r * r
        return r * (1.0 / 12.0 + r2 * (-1.0 / 360.0 + r2 * (1.0 / 1260.0 + r2 * (
            -1.0 / 1680.0 + r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360360.0 + r2 / 156.0))))))
    return math.lgamma(a) - (a - 0.5) * math.log(a) + a - 0.5 * LOG_2PI


def _phi(lam: float) -> float:
    """lam - 1 - ln(lam), without cancellation near lam = 1."""
    mu = lam - 1.0
    if mu <= -0.5:
        return mu - math.log(lam)
    if mu >= 0.5:
        return mu - math.log1p(mu)
    t = mu / (2.0 + mu)
    t2 = t * t
    acc = 0.0
    term = t * t2
    k = 3
    while True:
        inc = term / k
        acc += inc
        if abs(inc) <= EPS * abs(acc):
            break
        term *= t2
        k += 2
    return 2.0 * t2 / (1.0 - t) - 2.0 * acc


def _log_prefactor(a: float, x: float) -> float:
    """ln(x^a e^-x / Gamma(a + 1)) computed without large cancelling terms."""
    if a < 10.0:
        return a * math.log(x) - x - math.lgamma(a + 1.0)
    return -a * _phi(x / a) - 0.5 * (LOG_2PI + math.log(a)) - _log_gamma_star(a)


def _lower_series(a: float, x: float) -> float:
    # sum_n x^n / ((a+1)...(a+n)); multiply by the prefactor to get P.
    term = 1.0
    total = 1.0
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if term <= total * EPS:
            return total
    raise ConvergenceError(f"incomplete gamma series did not converge (a={a}, x={x})")


def _upper_gamma_cf(a: float, x: float) -> float:
    """ln Q(a, x) from the Legendre continued fraction (modified Lentz).

    Only used (and only accurate) for x >= a; below that the recurrence
    loses all significance.
    """
    b = x + 1.0 - a
    c = 1.0 / FPMIN
    d = 1.0 / b if b != 0.0 else 1.0 / FPMIN
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < FPMIN:
            d = FPMIN
        c = b + an / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= EPS:
            return math.log(a) + _log_prefactor(a, x) + math.log(h)
    raise ConvergenceError(f"incomplete gamma continued fraction did not converge (a={a}, x={x})")


def _uniform_terms(a: float, x: float) -> tuple[float, float]:
    """eta and the bracketed correction sum for the uniform expansion."""
    lam = x / a
    mu = lam - 1.0
    eta = math.copysign(math.sqrt(2.0 * _phi(lam)), mu)
    if abs(eta) < 0.1:
        c0 = 0.0
        for coef in reversed(_C0_TAYLOR):
            c0 = c0 * eta + coef
        c1 = 0.0
        for coef in reversed(_C1_TAYLOR):
            c1 = c1 * eta + coef
    else:
        c0 = 1.0 / mu - 1.0 / eta
        c1 = 1.0 / eta**3 - 1.0 / mu**3 - 1.0 / mu**2 - 1.0 / (12.0 * mu)
    return eta, (c0 + c1 / a) / math.sqrt(2.0 * math.pi * a)


def _log_pq(a: float, x: float) -> tuple[float, float]:
    """(ln P(a, x), ln Q(a, x)); the smaller of the two is computed directly."""
    if x == 0.0:
        return -math.inf, 0.0
    if math.isinf(x):
        return 0.0, -math.inf
    if a >= BIG_SHAPE:
        eta, corr = _uniform_terms(a, x)
        if abs(eta) * math.sqrt(a) <= _UNIFORM_WIDTH:
            z = abs(eta) * math.sqrt(0.5 * a)
            log_scale = -0.5 * a * eta * eta
            if eta >= 0.0:
                q = 0.5 * erfcx(z) + corr
                log_q = log_scale + math.log(q)
                return math.log1p(-math.exp(log_q)), log_q
            p = 0.5 * erfcx(z) - corr
            log_p = log_scale + math.log(p)
            return log_p, math.log1p(-math.exp(log_p))
    if x < a + 1.0:
        log_p = _log_prefactor(a, x) + math.log(_lower_series(a, x))
        log_p = min(log_p, 0.0)
        return log_p, _log1mexp(log_p)
    log_q = min(_upper_gamma_cf(a, x), 0.0)
    return _log1mexp(log_q), log_q


def _log1mexp(v: float) -> float:
    # ln(1 - e^v) for v <= 0
    if v == 0.0:
        return -math.inf
    if v > -0.6931471805599453:
        return math.log(-math.expm1(v))
    return math.log1p(-math.exp(v))


def _check_gamma_args(a: float, x: float) -> None:
    if not a > 0.0:
        raise DomainError(f"shape must be positive, got {a!r}")
    if not x >= 0.0:
        raise DomainError(f"argument must be nonnegative, got {x!r}")


def log_reg_lower_gamma(a: float, x: float) -> float:
    """ln P(a, x).  Accurate deep into the lower tail (values like -1e4)."""
    _check_gamma_args(a, x)
    return _log_pq(a, x)[0]


def log_reg_upper_gamma(a: float, x: float) -> float:
    """ln Q(a, x)."""
    _check_gamma_args(a, x)
    return _log_pq(a, x)[1]


def reg_lower_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).

    Series below the transition point, continued fraction above it, and a
    uniform asymptotic expansion around x ~ a once a exceeds ``BIG_SHAPE``.
    """
    return math.exp(log_reg_lower_gamma(a, x))


def reg_upper_gamma(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    return math.exp(log_reg_upper_gamma(a, x))


def _bessel_series(order: int, x: float) -> float:
    half = 0.5 * x
    q = half * half
    term = 1.0 if order == 0 else half
    total = term
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + order))
        total += term
        if term <= EPS * total:
            return total


def _bessel_asymptotic_scaled(order: int, x: float) -> float:
    # e^-x I_nu(x) ~ (2 pi x)^-1/2 sum_k (-1)^k a_k(nu) / x^k
    mu = 4.0 * order * order
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        nxt = -term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(nxt) >= abs(term):
            break
        term = nxt
        total += term
        if abs(term) <= EPS * abs(total):
            break
    return total / math.sqrt(2.0 * math.pi * x)


def _check_order(order: int) -> None:
    if order not in (0, 1):
        raise DomainError(f"only orders 0 and 1 are supported, got {order!r}")


def bessel_i_scaled(order: int, x: float) -> float:
    """exp(-|x|) * I_order(x), finite for every real x."""
    _check_order(order)
    ax = abs(x)
    if ax <= _BESSEL_ASYMPTOTIC_FROM:
        val = _bessel_series(order, ax) * math.exp(-ax)
    else:
        val = _bessel_asymptotic_scaled(order, ax)
    return -val if (order == 1 and x < 0.0) else val


def bessel_i(order: int, x: float) -> float:
    """Modified Bessel function of the first kind, I_0 or I_1.

    Raises ``OverflowError`` for |x| > 700; use :func:`bessel_i_scaled`
    beyond that.
    """
    _check_order(order)
    ax = abs(x)
    if ax > BESSEL_OVERFLOW_GUARD:
        raise OverflowError(f"I_{order}({x}) overflows; |x| must be <= {BESSEL_OVERFLOW_GUARD}")
    if ax <= _BESSEL_ASYMPTOTIC_FROM:
        val = _bessel_series(order, ax)
    else:
        val = math.exp(ax) * _bessel_asymptotic_scaled(order, ax)
    return -val if (order == 1 and x < 0.0) else val


def laguerre_half(x: float) -> float:
    """L_{1/2}(x) for x <= 0 through the Bessel identity

        L_{1/2}(-k) = e^{-k/2} [(1 + k) I_0(k/2) + k I_1(k/2)].

    The exponentially scaled Bessel functions keep this finite for any k.
    """
    if x > 0.0:
        raise DomainError(f"laguerre_half is only defined here for x <= 0, got {x!r}")
    k = -x
    h = 0.5 * k
    return (1.0 + k) * bessel_i_scaled(0, h) + k * bessel_i_scaled(1, h)


def _betacf(p: float, q: float, x: float) -> float:
    """Continued fraction for 2F1(1, p + q; p + 1; x), fast when x < (p+1)/(p+q+2)."""
    qab = p + q
    qap = p + 1.0
    qam = p - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER):
        m2 = 2 * m
        aa = m * (q - m) * x / ((qam + m2) * (p + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= EPS:
            return h
    raise ConvergenceError(f"beta continued fraction did not converge (p={p}, q={q}, x={x})")


_REFLECT_MIN_Q = 0.05


def _unit_a_series(b: float, c: float, z: float) -> float:
    term = 1.0
    total = 1.0
    for n in range(_MAX_ITER):
        term *= (b + n) / (c + n) * z
        total += term
        if term <= EPS * total:
            return total
    raise ConvergenceError(f"2F1 series did not converge (b={b}, c={c}, z={z})")


def _unit_a_euler(b: float, c: float, z: float, zc: float) -> float:
    # Euler integral with 1 - t = e^-s:
    #   B(b, c-b) F = int_0^inf (1 - e^-s)^(b-1) e^{-s(c-b)} / (zc + z e^-s) ds
    # The denominator changes character near s = -ln(zc), so split there.
    cb = c - b

    def integrand(s: float) -> float:
        e = math.exp(-s)
        return (-math.expm1(-s)) ** (b - 1.0) * math.exp(-s * cb) / (zc + z * e) if s > 0 else 0.0

    knee = -math.log(zc)
    total = 0.0
    err_total = 0.0
    for lo, hi in ((0.0, knee), (knee, math.inf)):
        val, err = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-12, limit=500)
        total += val
        err_total += err
    if not err_total <= 1e-10 * abs(total):
        raise ConvergenceError(f"2F1 Euler integral did not converge (b={b}, c={c}, z={z})")
    log_beta = math.lgamma(b) + math.lgamma(cb) - math.lgamma(c)
    return total * math.exp(-log_beta)


def gauss_2f1_unit_a(b: float, c: float, z: float, *, complement: float | None = None) -> float:
    """Gauss hypergeometric function with unit first parameter, 2F1(1, b; c; z).

    Valid for c > b > 0 and 0 <= z < 1.  The contiguous recurrence
    F(b; c) = 1 + (b/c) z F(b+1; c+1) lifts c above one, after which the
    function is the incomplete-beta continued fraction with p = c - 1,
    q = b - c + 1 (reflected to 1 - z above the convergence switch point).
    That keeps evaluation cheap for z arbitrarily close to 1.

    ``complement`` may carry 1 - z when the caller knows it more accurately
    than the subtraction would give (z within rounding distance of 1).
    """
    if not (c > b > 0.0):
        raise DomainError(f"gauss_2f1_unit_a requires c > b > 0, got b={b!r}, c={c!r}")
    if not (0.0 <= z < 1.0):
        raise DomainError(f"gauss_2f1_unit_a requires 0 <= z < 1, got {z!r}")
    if z == 0.0:
        return 1.0
    zc = 1.0 - z if complement is None else complement
    if not 0.0 < zc <= 1.0:
        raise DomainError(f"complement must lie in (0, 1], got {zc!r}")
    shift = 0.0
    scale = 1.0
    while c <= 1.0:
        shift += scale
        scale *= b / c * z
        b += 1.0
        c += 1.0
    p = c - 1.0
    q = b - c + 1.0
    reflect = z >= (p + 1.0) / (p + q + 2.0)
    # both reflected terms grow like 1/q; small q cancels
    if q > 0.0 and not (reflect and q < _REFLECT_MIN_Q):
        if not reflect:
            f = _betacf(p, q, z)
        else:
            log_lead = (math.log(p) + math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q)
                        - p * math.log(z) - q * math.log(zc))
            f = math.exp(log_lead) - p / q * _betacf(q, p, zc)
    elif z <= 0.9:
        f = _unit_a_series(b, c, z)
    else:
        f = _unit_a_euler(b, c, z, zc)
    return shift + scale * f
