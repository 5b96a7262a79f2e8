"""Bessel functions of the first kind, integer order.

The effective couplings of the cycle-averaged model are tunneling rates
renormalized by J_n(2*epsilon/omega), so everything downstream leans on this
module.  Two classical evaluation routes are combined:

* ascending power series for small arguments (DLMF 10.2.2),
* Miller's backward recurrence with normalization by the even-order sum rule
  J_0(x) + 2*sum_k J_2k(x) = 1 for large arguments (DLMF 10.12.4-5).

Orders are capped at |n| <= 64, far beyond any resonance order reachable with
the in-scope Zeeman/driving ratios.
"""

import math

MAX_ORDER = 64
MAX_ARG = 1.0e4

# Crossover between the power series and Miller's recurrence.  Kept below the
# textbook-ish 12 because the alternating series loses ~3 digits to
# cancellation there, which would break the 1e-12 absolute-accuracy contract.
_SERIES_CUTOFF = 9.0

_RESCALE = 1.0e250


def bessel_j(n: int, x: float) -> float:
    """J_n(x) for integer order n, |n| <= 64, finite |x| <= 1e4.

    Absolute error is below 1e-12 for |x| <= 100.  Negative orders and
    arguments reduce through the parity identities J_{-n}(x) = (-1)^n J_n(x)
    and J_n(-x) = (-1)^n J_n(x).
    """
    n = _checked_order(n)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("bessel_j: argument must be finite")
    if abs(x) > MAX_ARG:
        raise ValueError(f"bessel_j: |x| > {MAX_ARG:g} is out of range")

    sign = 1.0
    if n < 0:
        n = -n
        if n % 2:
            sign = -sign
    if x < 0.0:
        x = -x
        if n % 2:
            sign = -sign

    if x == 0.0:
        return sign if n == 0 else 0.0
    if x < _SERIES_CUTOFF:
        return sign * _ascending_series(n, x)
    return sign * _miller_downward(n, x)


def _checked_order(n) -> int:
    m = int(n)
    if m != n:
        raise ValueError("bessel_j: order must be an integer")
    if abs(m) > MAX_ORDER:
        raise ValueError(f"bessel_j: unsupported order |n| > {MAX_ORDER}")
    return m


def _ascending_series(n: int, x: float) -> float:
    # J_n(x) = sum_k (-1)^k (x/2)^(n+2k) / (k! (n+k)!)
    half = 0.5 * x
    term = half**n / math.factorial(n)
    total = term
    q = half * half
    for k in range(1, 400):
        term *= -q / (k * (n + k))
        total += term
        if abs(term) < 1e-17 * (abs(total) + 1e-300) and abs(term) < 1e-17:
            break
    return total


def _miller_downward(n: int, x: float) -> float:
    # Start far enough above the turning point k ~ x that the seeded minimal
    # solution dominates to better than double precision by the time the
    # recurrence reaches order n.
    start = max(n, int(x)) + max(60, int(16.0 * (0.5 * x) ** (1.0 / 3.0)) + 2)
    if start % 2:
        start += 1

    jk = 1e-30  # arbitrary seed for J_start
    jkp1 = 0.0  # J_{start+1}
    norm = 2.0 * jk if start % 2 == 0 else 0.0
    result = jk if start == n else 0.0

    for k in range(start, 0, -1):
        jkm1 = (2.0 * k / x) * jk - jkp1
        jkp1 = jk
        jk = jkm1
        order = k - 1
        if order == n:
            result = jk
        if order == 0:
            norm += jk
        elif order % 2 == 0:
            norm += 2.0 * jk
        if abs(jk) > _RESCALE:
            jk /= _RESCALE
            jkp1 /= _RESCALE
            norm /= _RESCALE
            result /= _RESCALE

    return result / norm
