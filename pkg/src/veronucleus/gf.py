"""Finite fields GF(p^e).

Elements are encoded as integers ``0 <= v < q``: the base-p digits of
``v`` are the coefficients of a polynomial in ``x`` (constant term
first) reduced modulo the field's modulus. This encoding is what the
linear-algebra kernel stores in numpy arrays; ``FieldElement`` wraps a
single encoded value for scalar use.

For ``e > 1`` the modulus is the smallest monic irreducible polynomial
of degree ``e`` in the order given by its encoding (leading coefficient
aside, the coefficient of ``x**(e-1)`` is most significant), so a given
``(p, e)`` always yields the same field.
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .base_p import check_prime

DEFAULT_FIELD_CAP = 2**20
FIELD_CAP_ENV = "VERONUCLEUS_FIELD_CAP"
# full q*q add/mul tables are built up to this order
TABLE_LIMIT = 1024


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


def field_cap() -> int:
    raw = os.environ.get(FIELD_CAP_ENV)
    return int(raw) if raw else DEFAULT_FIELD_CAP


# --- polynomials over Z_p as coefficient lists, constant term first ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base: list[int], k: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, m, p)
    while k:
        if k & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        k >>= 1
    return result


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over Z_p.

    Degree <= 3 reduces to "has no root"; otherwise ``gcd(f, x^(p^k) - x)``
    must be 1 for every ``k <= deg/2``.
    """
    f = _trim(list(poly))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if d <= 3:
        return all(sum(c * pow(r, i, p) for i, c in enumerate(f)) % p for r in range(p))
    xk = [0, 1]
    for _ in range(d // 2):
        xk = _poly_powmod(xk, p, f, p)
        if len(_poly_gcd(f, _poly_sub(xk, [0, 1], p), p)) > 1:
            return False
    return True


def _encode(coeffs: Sequence[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(coeffs))


def _decode(v: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        v, d = divmod(v, p)
        out.append(d)
    return out


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


ArrayLike = Union[int, np.ndarray]


class GF:
    """The finite field of order ``q = p**e`` (use ``make_field``).

    Array methods (``add``, ``mul``, ...) act elementwise on encoded
    integers or numpy integer arrays and return numpy values.
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._tables_ready = False

    # --- identity ---
    @property
    def name(self) -> str:
        return f"GF({self.p}^{self.e})"

    def __repr__(self) -> str:
        if self.modulus is None:
            return f"GF({self.p}^{self.e})"
        return f"GF({self.p}^{self.e}, modulus={format_poly(self.modulus)})"

    def __reduce__(self):
        return (make_field, (self.p, self.e))

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    # --- scalar level ---
    def __call__(self, value: Union[int, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            self._own(value)
            return value
        return FieldElement(self, self.from_int(value))

    def from_int(self, n: int) -> int:
        """Encoded value of the integer ``n`` read in the prime subfield."""
        return int(n) % self.p

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        if len(coeffs) > self.e or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"bad coefficient vector for {self.name}: {coeffs}")
        return FieldElement(self, _encode(coeffs, self.p))

    def element(self, encoded: int) -> "FieldElement":
        if not 0 <= encoded < self.q:
            raise ValueError(f"encoded value {encoded} out of range for {self.name}")
        return FieldElement(self, int(encoded))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    def _own(self, a: "FieldElement") -> int:
        if a.field is not self:
            raise FieldMismatchError(f"{a!r} is not an element of {self.name}")
        return a.value

    def encode(self, x) -> int:
        """Encoded value of a FieldElement of this field or of a plain int
        (taken as already encoded)."""
        if isinstance(x, FieldElement):
            return self._own(x)
        x = int(x)
        if not 0 <= x < self.q:
            raise ValueError(f"encoded value {x} out of range for {self.name}")
        return x

    def asarray(self, rows) -> np.ndarray:
        """Convert nested sequences of FieldElements/encoded ints to an int64 array."""
        if isinstance(rows, np.ndarray):
            arr = rows.astype(np.int64, copy=True)
            if arr.size and (arr.min() < 0 or arr.max() >= self.q):
                raise ValueError(f"entries out of range for {self.name}")
            return arr
        rows = list(rows)
        if rows and isinstance(rows[0], (list, tuple, np.ndarray)):
            return np.array([[self.encode(x) for x in r] for r in rows], dtype=np.int64)
        return np.array([self.encode(x) for x in rows], dtype=np.int64)

    # --- tables ---
    def _build_tables(self) -> None:
        if self._tables_ready:
            return
        p, e, q = self.p, self.e, self.q
        if e == 1:
            self._inv = np.array([0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)
            self._tables_ready = True
            return
        digits = np.array([_decode(v, p, e) for v in range(q)], dtype=np.int64)
        powers = p ** np.arange(e, dtype=np.int64)
        self._digits, self._powers = digits, powers
        self._neg = ((-digits) % p) @ powers
        gen = self._find_generator()
        exp = np.empty(q - 1, dtype=np.int64)
        m = list(self.modulus)
        g = _decode(gen, p, e)
        cur = [1]
        for k in range(q - 1):
            exp[k] = _encode(cur + [0] * (e - len(cur)), p)
            cur = _poly_mod(_poly_mul(cur, g, p), m, p)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self._exp, self._log = exp, log
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(-log[1:]) % (q - 1)]
        self._inv = inv
        if q <= TABLE_LIMIT:
            a = np.arange(q)
            self._add_t = self._add_digits(a[:, None], a[None, :])
            self._mul_t = self._mul_log(a[:, None], a[None, :])
        self._tables_ready = True

    def _find_generator(self) -> int:
        p, q, m = self.p, self.q, list(self.modulus)
        factors = _prime_factors(q - 1)
        for cand in range(p, q):
            g = _decode(cand, p, self.e)
            if all(_poly_powmod(g, (q - 1) // r, m, p) != [1] for r in factors):
                return cand
        raise AssertionError("no multiplicative generator found")

    def _add_digits(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        d = (self._digits[a] + self._digits[b]) % self.p
        return d @ self._powers

    def _mul_log(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        r = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    # --- array level ---
    def add(self, a: ArrayLike, b: ArrayLike):
        if self.e == 1:
            return (np.asarray(a) + b) % self.p
        self._build_tables()
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.q <= TABLE_LIMIT:
            return self._add_t[a, b]
        return self._add_digits(a, b)

    def neg(self, a: ArrayLike):
        if self.e == 1:
            return (-np.asarray(a)) % self.p
        if self.p == 2:
            return np.asarray(a)
        self._build_tables()
        return self._neg[a]

    def sub(self, a: ArrayLike, b: ArrayLike):
        if self.e == 1:
            return (np.asarray(a) - b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.add(a, self.neg(b))

    def mul(self, a: ArrayLike, b: ArrayLike):
        if self.e == 1:
            return (np.asarray(a) * b) % self.p
        self._build_tables()
        if self.q <= TABLE_LIMIT:
            return self._mul_t[a, b]
        return self._mul_log(a, b)

    def inv(self, a: ArrayLike):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError(f"inversion of zero in {self.name}")
        self._build_tables()
        return self._inv[a]

    def power(self, a: int, k: int) -> int:
        """``a**k`` for a single encoded element (``0**0 == 1``)."""
        if k < 0:
            a, k = int(self.inv(a)), -k
        r, base = 1, int(a)
        while k:
            if k & 1:
                r = int(self.mul(r, base))
            base = int(self.mul(base, base))
            k >>= 1
        return r

    def generator(self) -> int:
        """Encoded generator of the multiplicative group."""
        if self.e == 1:
            if self.p == 2:
                return 1
            factors = _prime_factors(self.p - 1)
            return next(g for g in range(2, self.p)
                        if all(pow(g, (self.p - 1) // r, self.p) != 1 for r in factors))
        self._build_tables()
        return int(self._exp[1]) if self.q > 2 else 1

    def to_json(self, a: "FieldElement") -> dict:
        return {"field": self.name, "coeffs": a.coeffs}


class FieldElement:
    """A single element of a ``GF``; supports ``+ - * / ** ==``.

    Plain ints on the other side of an operator are read in the prime
    subfield (``a + 1``).
    """

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = value

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            return self.field._own(b)
        if isinstance(b, (int, np.integer)):
            return self.field.from_int(int(b))
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.sub(self.value, v))

    def __rsub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.sub(v, self.value))

    def __mul__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __truediv__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.mul(self.value, self.field.inv(v)))

    def __pow__(self, k: int):
        return self._wrap(self.field.power(self.value, k))

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def __eq__(self, b):
        if isinstance(b, FieldElement):
            return self.field is b.field and self.value == b.value
        if isinstance(b, int):
            return self.value == self.field.from_int(b)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.value))

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self) -> list[int]:
        return _decode(self.value, self.field.p, self.field.e)

    def __repr__(self):
        if self.field.e == 1:
            return f"{self.value}"
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) or "0"


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree ``e`` over Z_p."""
    for low in range(p**e):
        f = tuple(_decode(low, p, e)) + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


@lru_cache(maxsize=None)
def _make_field(p: int, e: int) -> GF:
    modulus = smallest_irreducible(p, e) if e > 1 else None
    return GF(p, e, modulus)


def make_field(p: int, e: int = 1, cap: int | None = None) -> GF:
    """The field GF(p^e). Repeated calls return the same object."""
    check_prime(p)
    if not isinstance(e, int) or e < 1:
        raise ValueError("extension degree must be a positive integer")
    cap = field_cap() if cap is None else cap
    if p**e > cap:
        raise ValueError(f"GF({p}^{e}) exceeds the field size cap {cap}")
    return _make_field(p, e)


def smallest_field(p: int, at_least: int) -> GF:
    """Smallest field of characteristic ``p`` with at least ``at_least`` elements."""
    e = 1
    while p**e < at_least:
        e += 1
    return make_field(p, e)


# functional spellings
def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(a: FieldElement) -> FieldElement:
    return a.frobenius()


def all_elements(f: GF) -> list[FieldElement]:
    """Every element of ``f``, zero first, in encoding order."""
    return f.elements()


def parse_field_name(name: str) -> GF:
    """Inverse of ``GF.name`` ("GF(p^e)")."""
    inner = name.strip()
    if not (inner.startswith("GF(") and inner.endswith(")")):
        raise ValueError(f"not a field descriptor: {name!r}")
    p, _, e = inner[3:-1].partition("^")
    return make_field(int(p), int(e or 1))


def element_from_json(obj: dict) -> FieldElement:
    f = parse_field_name(obj["field"])
    return f.from_coeffs(obj["coeffs"])


def elements_of(f: GF, values: Iterable[int]) -> list[FieldElement]:
    return [f.element(v) for v in values]
