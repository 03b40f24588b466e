"""Integer number theory used by the ring and nilary layers."""
from __future__ import annotations

import math
import random

from .errors import BudgetExceeded

FACTOR_CAP = 1 << 64

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // math.gcd(a, b)


def is_prime(n: int) -> bool:
    """Miller-Rabin with bases that are deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_trial(n: int) -> bool:
    """Trial division; used where the descriptor constructor asks for it."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        c = rng.randrange(1, n)
        y = rng.randrange(0, n)
        m, g, r, q = 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` as ``{prime: exponent}``.

    Trial division up to 10^4, Pollard rho beyond.  Inputs past 64 bits
    raise rather than run unbounded.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    if n >= FACTOR_CAP:
        raise BudgetExceeded(f"{n} exceeds the 64-bit factorisation cap")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f, step = 7, 4
    while f * f <= n and f < 10_000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    if n == 1:
        return dict(sorted(out.items()))
    rng = random.Random(n)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def radical(n: int) -> int:
    """Squarefree kernel; ``radical(0) == 0``."""
    if n == 0:
        return 0
    return math.prod(factorint(n)) if abs(n) > 1 else 1


def coprime_part(n: int, x: int) -> int:
    """Largest divisor of ``n`` all of whose primes divide ``x``."""
    n = abs(n)
    if n == 0:
        raise ValueError("coprime_part of 0 is undefined")
    part = 1
    g = math.gcd(n, x)
    while g > 1:
        part *= g
        n //= g
        g = math.gcd(n, g)
    return part


def divisors(n: int) -> list[int]:
    n = abs(n)
    out = [1]
    for p, e in factorint(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def unit_normalizer(a: int, m: int) -> int:
    """A unit ``u`` of Z/m with ``u*a = gcd(a, m)`` (mod m)."""
    a %= m
    g = math.gcd(a, m)
    mg = m // g
    if mg == 1:
        return 1
    u = pow(a // g, -1, mg)
    while math.gcd(u, m) != 1:
        u += mg
    return u % m
