"""Digit combinatorics in base p.

Binomial and multinomial coefficients modulo a prime are evaluated
digitwise (Lucas), never through big factorials. The zero entries of
Pascal's triangle mod p are partitioned into classes by the size of the
maximal all-zero subtriangle that contains them; ``phi`` and ``sigma``
count them per row, and ``top_line`` locates the first row of such a
subtriangle.

Digits are stored least-significant first; ``Digits.display`` prints the
most-significant digit first inside angle brackets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


@dataclass(frozen=True)
class Digits:
    """Base-p representation of a non-negative integer.

    ``digits[s]`` is the coefficient of ``base**s``. The empty tuple
    represents 0; otherwise the last stored digit is non-zero.
    """

    value: int
    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.base)
        if self.value < 0:
            raise ValueError("negative value")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("non-canonical digit sequence")
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValueError("digit out of range")
        if from_digits(self.digits, self.base) != self.value:
            raise ValueError("digits do not match value")

    def __getitem__(self, sigma: int) -> int:
        # all digits beyond the stored length are zero
        if sigma < 0:
            raise IndexError(sigma)
        return self.digits[sigma] if sigma < len(self.digits) else 0

    def __len__(self) -> int:
        return len(self.digits)

    def nonzero_positions(self) -> list[int]:
        return [s for s, d in enumerate(self.digits) if d]

    def display(self) -> str:
        return "<" + ("".join(str(d) for d in reversed(self.digits)) or "0") + ">"

    def __str__(self) -> str:
        return self.display()


def _raw_digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def to_digits(n: int, p: int) -> Digits:
    """Canonical base-``p`` digits of ``n``, least significant first."""
    check_prime(p)
    if n < 0:
        raise ValueError("n must be non-negative")
    return Digits(n, p, tuple(_raw_digits(n, p)))


def from_digits(digits: Sequence[int], p: int) -> int:
    return sum(d * p**s for s, d in enumerate(digits))


def _digit(n: int, sigma: int, p: int) -> int:
    return (n // p**sigma) % p


def binom_mod_p(n: int, j: int, p: int) -> int:
    """``C(n, j) mod p`` as a product of digit binomials."""
    check_prime(p)
    if n < 0 or j < 0:
        raise ValueError("arguments must be non-negative")
    if j > n:
        return 0
    r = 1
    while j:
        n, nd = divmod(n, p)
        j, jd = divmod(j, p)
        if jd > nd:
            return 0
        r = r * math.comb(nd, jd) % p
    return r


def multinom_mod_p(t: int, e: Sequence[int], p: int) -> int:
    """``t! / (e_0! ... e_m!) mod p`` computed digit by digit.

    A position whose exponent digits do not add up to the digit of ``t``
    signals a carry, and the coefficient vanishes.
    """
    check_prime(p)
    e = tuple(e)
    if any(x < 0 for x in e):
        raise ValueError("negative entry in exponent tuple")
    if sum(e) != t:
        raise ValueError(f"exponents {e} do not sum to {t}")
    r = 1
    rest = list(e)
    while t:
        t, td = divmod(t, p)
        ds = []
        for i, x in enumerate(rest):
            rest[i], d = divmod(x, p)
            ds.append(d)
        if sum(ds) != td:
            return 0
        c = math.factorial(td)
        for d in ds:
            c //= math.factorial(d)
        r = r * c % p
    return r


@dataclass(frozen=True)
class ZeroClass:
    """Class of a vanishing entry ``C(n, j)``: the index ``i`` of the
    maximal zero subtriangle (of top width ``p**i - 1``) containing it."""

    class_index: int
    n: int
    j: int


def zero_class(n: int, j: int, p: int) -> Optional[ZeroClass]:
    """Zero class of the entry ``(n, j)``, or ``None`` if ``C(n, j) != 0 mod p``."""
    check_prime(p)
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    nd, jd = to_digits(n, p), to_digits(j, p)
    carries = [s for s in range(len(jd)) if jd[s] > nd[s]]
    if not carries:
        return None
    L = max(carries)
    # j <= n guarantees a higher position where n's digit wins
    i = next(s for s in range(L + 1, len(nd)) if jd[s] < nd[s])
    return ZeroClass(i, n, j)


def phi(i: int, n: int, p: int) -> int:
    """Number of entries of row ``n`` that lie in zero class ``i``."""
    if i < 1:
        raise ValueError("class index must be positive")
    d = to_digits(n, p)
    low = sum(d[mu] * p**mu for mu in range(i))
    r = (p**i - 1 - low) * d[i]
    for s in range(i + 1, len(d)):
        r *= d[s] + 1
    return r


def sigma(i: int, n: int, p: int) -> int:
    """Number of entries of row ``n`` in zero classes ``i, i+1, ...``."""
    if i < 1:
        raise ValueError("class index must be positive")
    d = to_digits(n, p)
    low = sum(d[mu] * p**mu for mu in range(i))
    prod = 1
    for s in range(i, len(d)):
        prod *= d[s] + 1
    return n + 1 - (1 + low) * prod


def top_line(R: int, b: int, p: int) -> int:
    """``b`` with all base-p digits below position ``R`` set to zero."""
    check_prime(p)
    if R < 0 or b < 0:
        raise ValueError("arguments must be non-negative")
    return b - b % p**R


def count_vanishing_multinomials(m: int, t: int, p: int) -> int:
    """How many multinomial coefficients of degree ``t`` in ``m + 1``
    variables are divisible by ``p``."""
    check_prime(p)
    if m < 1:
        raise ValueError("m must be positive")
    nonzero = 1
    for td in to_digits(t, p).digits:
        nonzero *= math.comb(m + td, td)
    return math.comb(m + t, t) - nonzero


def render_triangle(rows: int, p: int) -> str:
    """ASCII Pascal triangle mod ``p`` with zero entries left blank."""
    check_prime(p)
    if rows < 1:
        raise ValueError("rows must be positive")
    w = len(str(p - 1))
    half = (w + 2) // 2
    lines = []
    for n in range(rows):
        cells = [" " * ((rows - 1 - n) * half)]
        for j in range(n + 1):
            c = binom_mod_p(n, j, p)
            cells.append((str(c) if c else "").rjust(w))
            if j < n:
                cells.append(" " * (2 * half - w))
        lines.append("".join(cells).rstrip())
    return "\n".join(lines)
