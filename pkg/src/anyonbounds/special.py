"""Bessel functions of real order, their derivatives, I_0 and I_1, the first
zero j'_nu of J_nu' and the short-range constant K_alpha.

J and Y come from one routine that uses a continued fraction for J'/J, a
Temme series for Y at small argument and Steed's complex continued fraction
for large argument, tied together by the Wronskian. Everything is plain
float arithmetic.
"""
import math
from functools import lru_cache

from .config import TOL, DomainError
from .numerics import BracketError, EigenResult, bracketed_root

__all__ = ["EigenResult", "bessel_j", "bessel_j_prime", "bessel_y",
           "bessel_y_prime", "bessel_jy", "bessel_i", "j_prime_zero",
           "k_alpha"]

_EPS = 1e-17
_TINY = 1e-300
_MAXIT = 100000
_BIG = 1e200

# Taylor coefficients of 1/Gamma(z) = sum_k c_k z^k, k = 1..30
_RGAMMA = (
    1.0, 0.57721566490153286061, -0.65587807152025388108,
    -0.042002635034095235529, 0.1665386113822914895,
    -0.042197734555544336748, -0.0096219715278769735621,
    0.0072189432466630995424, -0.0011651675918590651121,
    -0.00021524167411495097282, 0.00012805028238811618615,
    -0.000020134854780788238656, -1.2504934821426706573e-6,
    1.1330272319816958824e-6, -2.0563384169776071035e-7,
    6.1160951044814158179e-9, 5.0020076444692229301e-9,
    -1.1812745704870201446e-9, 1.0434267116911005105e-10,
    7.782263439905071254e-12, -3.6968056186422057082e-12,
    5.100370287454475979e-13, -2.0583260535665067832e-14,
    -5.3481225394230179824e-15, 1.2267786282382607902e-15,
    -1.1812593016974587695e-16, 1.1866922547516003326e-18,
    1.4123806553180317816e-18, -2.2987456844353702066e-19,
    1.7144063219273374334e-20,
)


def _gamma_parts(mu):
    """Gamma-function combinations for |mu| <= 1/2, free of cancellation.

    Returns (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) where
    gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu) and
    gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2.
    """
    even = odd = 0.0
    # c_k with k odd multiplies mu^(k-1) (even power)
    for k in range(len(_RGAMMA), 0, -1):
        c = _RGAMMA[k - 1]
        if k % 2:
            odd = odd * mu * mu + c
        else:
            even = even * mu * mu + c
    gam1 = -even
    gam2 = odd
    return gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1


def _check_args(nu, x):
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError(f"non-finite Bessel argument (nu={nu!r}, x={x!r})")
    if nu < 0:
        raise DomainError(f"Bessel order must be non-negative, got {nu!r}")
    if x <= 0:
        raise DomainError(f"Bessel argument must be positive, got {x!r}")


def bessel_jy(nu, x):
    """Return (J_nu(x), Y_nu(x), J_nu'(x), Y_nu'(x)) for nu >= 0, x > 0."""
    nu = float(nu)
    x = float(x)
    _check_args(nu, x)
    if x < 2.0:
        nl = int(nu + 0.5)
    else:
        nl = max(0, int(nu - x + 1.5))
    mu = nu - nl
    mu2 = mu * mu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / math.pi

    # J_nu'/J_nu by the continued fraction (modified Lentz)
    isign = 1
    h = max(nu * xi, _TINY)
    b = xi2 * nu
    d = 0.0
    c = h
    for _ in range(_MAXIT):
        b += xi2
        d = b - d
        if abs(d) < _TINY:
            d = _TINY
        c = b - 1.0 / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        step = c * d
        h *= step
        if d < 0:
            isign = -isign
        if abs(step - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"J'/J continued fraction did not converge (nu={nu}, x={x})")

    # unnormalized downward recurrence from order nu to mu
    jl = float(isign)
    jpl = h * jl
    jl_top, jp_top = jl, jpl
    fact = nu * xi
    for _ in range(nl):
        jtemp = fact * jl + jpl
        fact -= xi
        jpl = fact * jtemp - jl
        jl = jtemp
        if abs(jl) > _BIG:
            jl /= _BIG
            jpl /= _BIG
            jl_top /= _BIG
            jp_top /= _BIG
    if jl == 0.0:
        jl = _EPS
    f = jpl / jl

    if x < 2.0:
        # Temme's series for Y_mu and Y_{mu+1}
        x2 = 0.5 * x
        pimu = math.pi * mu
        fact = 1.0 if pimu == 0.0 else pimu / math.sin(pimu)
        dlog = -math.log(x2)
        e = mu * dlog
        fact2 = 1.0 if e == 0.0 else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _gamma_parts(mu)
        ff = 2.0 / math.pi * fact * (gam1 * math.cosh(e) + gam2 * fact2 * dlog)
        e = math.exp(e)
        p = e / (gampl * math.pi)
        q = 1.0 / (e * math.pi * gammi)
        half = 0.5 * pimu
        fact3 = 1.0 if half == 0.0 else math.sin(half) / half
        r = math.pi * half * fact3 * fact3
        c = 1.0
        dq = -x2 * x2
        total = ff + r * q
        total1 = p
        for i in range(1, _MAXIT):
            ff = (i * ff + p + q) / (i * i - mu2)
            c *= dq / i
            p /= i - mu
            q /= i + mu
            term = c * (ff + r * q)
            total += term
            total1 += c * p - i * term
            if abs(term) < (1.0 + abs(total)) * _EPS:
                break
        else:
            raise ArithmeticError(f"Temme series did not converge (nu={nu}, x={x})")
        ymu = -total
        y1 = -total1 * xi2
        ymup = mu * xi * ymu - y1
        jmu = w / (ymup - f * ymu)
    else:
        # Steed's continued fraction for (J' + iY') / (J + iY)
        a = 0.25 - mu2
        p = -0.5 * xi
        q = 1.0
        br = 2.0 * x
        bi = 2.0
        fact = a * xi / (p * p + q * q)
        cr = br + q * fact
        ci = bi + p * fact
        den = br * br + bi * bi
        dr = br / den
        di = -bi / den
        dlr = cr * dr - ci * di
        dli = cr * di + ci * dr
        p, q = p * dlr - q * dli, p * dli + q * dlr
        for i in range(2, _MAXIT):
            a += 2 * (i - 1)
            bi += 2.0
            dr = a * dr + br
            di = a * di + bi
            if abs(dr) + abs(di) < _TINY:
                dr = _TINY
            fact = a / (cr * cr + ci * ci)
            cr = br + cr * fact
            ci = bi - ci * fact
            if abs(cr) + abs(ci) < _TINY:
                cr = _TINY
            den = dr * dr + di * di
            dr /= den
            di = -di / den
            dlr = cr * dr - ci * di
            dli = cr * di + ci * dr
            p, q = p * dlr - q * dli, p * dli + q * dlr
            if abs(dlr - 1.0) + abs(dli) < _EPS:
                break
        else:
            raise ArithmeticError(f"Steed continued fraction did not converge (nu={nu}, x={x})")
        gam = (p - f) / q
        jmu = math.copysign(math.sqrt(w / ((p - f) * gam + q)), jl)
        ymu = jmu * gam
        ymup = ymu * (p + q / gam)
        y1 = mu * xi * ymu - ymup

    scale = jmu / jl
    j = jl_top * scale
    jp = jp_top * scale
    for i in range(1, nl + 1):
        ymu, y1 = y1, (mu + i) * xi2 * y1 - ymu
    y = ymu
    yp = nu * xi * ymu - y1
    return j, y, jp, yp


def bessel_j(nu, x):
    """Bessel function of the first kind J_nu(x)."""
    return bessel_jy(nu, x)[0]


def bessel_y(nu, x):
    """Bessel function of the second kind Y_nu(x)."""
    return bessel_jy(nu, x)[1]


def bessel_j_prime(nu, x):
    """Derivative J_nu'(x)."""
    return bessel_jy(nu, x)[2]


def bessel_y_prime(nu, x):
    """Derivative Y_nu'(x)."""
    return bessel_jy(nu, x)[3]


def bessel_i(nu, x):
    """Modified Bessel function I_0 or I_1 by its ascending series.

    Every term is positive, so the sum is accurate to a few ulps. Usable up
    to x of a few hundred, beyond which the value overflows.
    """
    if nu not in (0, 1):
        raise DomainError(f"bessel_i supports orders 0 and 1 only, got {nu!r}")
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"bessel_i needs finite x >= 0, got {x!r}")
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    q = 0.25 * x * x
    term = 1.0 if nu == 0 else 0.5 * x
    total = term
    for k in range(1, _MAXIT):
        term *= q / (k * (k + nu))
        total += term
        # <= so that an underflowed series (tiny x) also stops
        if term <= 1e-17 * total:
            return total
    raise ArithmeticError(f"I_{nu}({x}) series did not converge")


def _asymptotic_sum(nu, x, terms=8):
    """sum_k (-1)^k a_k(nu) / x^k from I_nu(x) ~ e^x / sqrt(2 pi x) * sum."""
    mu = 4.0 * nu * nu
    term = total = 1.0
    for k in range(1, terms + 1):
        term *= -(mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        total += term
    return total


def _i1_over_i0(x):
    """I_1(x)/I_0(x) by the Gauss continued fraction, or the large-x
    expansion once the fraction would need about x steps."""
    if x >= 1e3:
        return _asymptotic_sum(1, x) / _asymptotic_sum(0, x)
    # 1 / (2/x + 1 / (4/x + 1 / (6/x + ...)))
    f = _TINY
    c = f
    d = 0.0
    for k in range(1, _MAXIT):
        b = 2.0 * k / x
        d = b + d
        if d == 0.0:
            d = _TINY
        c = b + 1.0 / c
        if c == 0.0:
            c = _TINY
        d = 1.0 / d
        step = c * d
        f *= step
        if abs(step - 1.0) < _EPS:
            return f
    raise ArithmeticError(f"I_1/I_0 continued fraction did not converge at x={x}")


def k_alpha(alpha):
    """K_alpha = sqrt(2|a|) I_0(sqrt(2|a|)) / I_1(sqrt(2|a|)), with K_0 = 2.

    Always >= 2 and even in alpha.
    """
    a = abs(float(alpha))
    if not math.isfinite(a):
        raise DomainError(f"alpha must be finite, got {alpha!r}")
    if a == 0.0:
        return 2.0
    x = math.sqrt(2.0 * a)
    if x <= 20.0:
        return x * bessel_i(0, x) / bessel_i(1, x)
    return x / _i1_over_i0(x)


@lru_cache(maxsize=4096)
def _j_prime_zero(nu):
    lo = math.sqrt(2.0 * nu)
    hi = math.sqrt(2.0 * nu * (1.0 + nu))
    func = lambda x: bessel_jy(nu, x)[2]
    try:
        res = bracketed_root(func, lo, hi, xtol=1e-3 * min(TOL.root_abs, lo))
    except BracketError as exc:
        samples = [lo + (hi - lo) * k / 8 for k in range(9)]
        signs = "".join("+" if func(s) > 0 else ("-" if func(s) < 0 else "0") for s in samples)
        raise BracketError(f"J'_{nu} has no sign change on [{lo}, {hi}]; "
                           f"sampled signs {signs}") from exc
    return res


def j_prime_zero(nu):
    """First positive zero of J_nu', with j'_0 := 0.

    For nu > 0 the root is bracketed by sqrt(2 nu) <= j'_nu <= sqrt(2 nu (1 + nu)).
    """
    nu = float(nu)
    if not math.isfinite(nu) or nu < 0:
        raise DomainError(f"order must be finite and non-negative, got {nu!r}")
    if nu == 0.0:
        return EigenResult(0.0, 0.0, 0.0, 0.0, 0)
    return _j_prime_zero(nu)
