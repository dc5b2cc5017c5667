"""Finite-field arithmetic over GF(p^s) and the orthogonal-array family.

Elements are stored as integer *indices*: index 0 is the zero element and
index ``k >= 1`` is ``alpha**(k - 1)`` for the field's primitive element
``alpha``.  Multiplication and inversion are therefore plain modular
arithmetic on indices; addition goes through the polynomial (base-p digit)
representation via exp/log tables.

All array-valued methods accept scalars or numpy integer arrays and
broadcast like numpy ufuncs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 16

# Monic primitive polynomials x^s + c_{s-1} x^{s-1} + ... + c_0, stored as
# (c_0, ..., c_{s-1}).  Sizes missing here are filled by a deterministic
# search (smallest coefficient vector, read as a base-p number).
PRIMITIVE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (2, 4): (1, 1, 0, 0),
    (2, 5): (1, 0, 1, 0, 0),
    (2, 6): (1, 1, 0, 1, 1, 0),
    (2, 7): (1, 1, 0, 0, 0, 0, 0),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0),
    (3, 2): (2, 2),
    (3, 3): (1, 2, 0),
    (5, 2): (2, 4),
    (7, 2): (3, 6),
}


def is_prime(n: int) -> bool:
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


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, s)`` with ``p**s == q`` or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            s = 0
            while q % p == 0:
                q //= p
                s += 1
            return (p, s) if q == 1 else None
    return None


def _power_sequence(p: int, coeffs: tuple[int, ...]) -> list[int] | None:
    """Powers of x modulo the monic polynomial, as base-p integers.

    Returns the list x^0, ..., x^(q-2) when x has order exactly q - 1,
    otherwise None.
    """
    s = len(coeffs)
    q = p**s
    digits = [0] * s
    digits[0] = 1
    seen = set()
    seq = []
    for _ in range(q - 1):
        val = 0
        for d in reversed(digits):
            val = val * p + d
        if val in seen or val == 0:
            return None
        seen.add(val)
        seq.append(val)
        # multiply by x: shift up, reduce x^s = -(c_0 + c_1 x + ...)
        top = digits[-1]
        digits = [0] + digits[:-1]
        if top:
            for k in range(s):
                digits[k] = (digits[k] - top * coeffs[k]) % p
    # x^(q-1) must be 1
    if digits != [1] + [0] * (s - 1):
        return None
    return seq


def _smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    for a in range(2, p):
        x, order = a, 1
        while x != 1:
            x = x * a % p
            order += 1
        if order == p - 1:
            return a
    raise ValueError(f"no primitive root mod {p}")  # unreachable for primes


def primitive_polynomial(p: int, s: int) -> tuple[int, ...]:
    """Low-to-high coefficients ``(c_0, ..., c_{s-1})`` of the shipped modulus."""
    if s == 1:
        return ((p - _smallest_primitive_root(p)) % p,)
    if (p, s) in PRIMITIVE_POLYS:
        return PRIMITIVE_POLYS[(p, s)]
    for code in range(p**s):
        coeffs = tuple((code // p**k) % p for k in range(s))
        if coeffs[0] == 0:
            continue
        if _power_sequence(p, coeffs) is not None:
            return coeffs
    raise ValueError(f"no primitive polynomial found for GF({p}^{s})")


class FiniteField:
    """The field GF(p^s) with a fixed primitive polynomial.

    Parameters
    ----------
    p : int
        Characteristic, a prime.
    s : int
        Extension degree, ``p**s <= 2**16``.

    Notes
    -----
    Prefer :func:`field_new`, which caches instances so that equal
    parameters share one immutable object.
    """

    def __init__(self, p: int, s: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got p={p}")
        if s < 1:
            raise ValueError(f"extension degree must be positive, got s={s}")
        if p**s > MAX_ORDER:
            raise ValueError(f"GF({p}^{s}) exceeds the supported size {MAX_ORDER}")
        self.p = p
        self.s = s
        self.q = p**s
        self.modulus = primitive_polynomial(p, s)
        seq = _power_sequence(p, self.modulus)
        if seq is None:
            raise ValueError(f"modulus {self.modulus} is not primitive over GF({p})")
        q = self.q
        # index -> polynomial (base-p integer) and back
        poly = np.zeros(q, dtype=np.int64)
        poly[1:] = seq
        index = np.zeros(q, dtype=np.int64)
        index[poly] = np.arange(q)
        self.exp_table = poly
        self.log_table = index
        self._digits = (poly[:, None] // p ** np.arange(s)) % p
        self._weights = p ** np.arange(s, dtype=np.int64)
        for arr in (self.exp_table, self.log_table, self._digits):
            arr.setflags(write=False)

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, s={self.s})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.s) == (other.p, other.s)

    def __hash__(self) -> int:
        return hash((self.p, self.s))

    def __len__(self) -> int:
        return self.q

    # -- element access -------------------------------------------------
    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def alpha(self) -> "FieldElement":
        """The primitive element (index 2; equals 1 in GF(2))."""
        return FieldElement(self, 2 if self.q > 2 else 1)

    def __call__(self, index: int) -> "FieldElement":
        return FieldElement(self, int(index))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, k) for k in range(self.q)]

    def from_int(self, value):
        """Index of ``value * 1``, i.e. the prime-subfield residue ``value mod p``."""
        v = np.asarray(value) % self.p
        out = self.log_table[v]
        return int(out) if out.ndim == 0 else out

    def to_int(self, a):
        """Residue of a prime-subfield element; error for elements outside it."""
        poly = self.exp_table[np.asarray(a)]
        if np.any(poly >= self.p):
            raise ValueError("element is not in the prime subfield")
        return int(poly) if np.ndim(poly) == 0 else poly

    def power(self, k: int) -> int:
        """Index of ``alpha**k``."""
        return int(k) % (self.q - 1) + 1

    def label(self, a: int) -> str:
        """Human label in the alpha-power notation: 0, 1, a, a^2, ..."""
        a = int(a)
        if a == 0:
            return "0"
        e = a - 1
        if e == 0:
            return "1"
        return "a" if e == 1 else f"a^{e}"

    # -- arithmetic on indices ------------------------------------------
    def _check(self, *xs):
        for x in xs:
            arr = np.asarray(x)
            if np.any(arr < 0) or np.any(arr >= self.q):
                raise ValueError(f"element index out of range for GF({self.q})")

    def _ret(self, out):
        return int(out) if np.ndim(out) == 0 else out

    def add(self, a, b):
        self._check(a, b)
        if self.p == 2:
            out = self.log_table[self.exp_table[a] ^ self.exp_table[b]]
        else:
            d = (self._digits[a] + self._digits[b]) % self.p
            out = self.log_table[d @ self._weights]
        return self._ret(out)

    def neg(self, a):
        self._check(a)
        if self.p == 2:
            return self._ret(np.asarray(a).copy() if np.ndim(a) else a)
        d = (-self._digits[a]) % self.p
        return self._ret(self.log_table[d @ self._weights])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        self._check(a, b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.where((a == 0) | (b == 0), 0, (a + b - 2) % (self.q - 1) + 1)
        return self._ret(out)

    def inv(self, a):
        self._check(a)
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self._ret((-(a - 1)) % (self.q - 1) + 1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        e = int(a) - 1
        n = self.q - 1
        return n // np.gcd(e, n)

    def add_table(self) -> np.ndarray:
        idx = np.arange(self.q)
        return self.add(idx[:, None], idx[None, :])

    def mul_table(self) -> np.ndarray:
        idx = np.arange(self.q)
        return self.mul(idx[:, None], idx[None, :])


@dataclass(frozen=True)
class FieldElement:
    """A single element, for readable interactive arithmetic.

    >>> F = field_new(2, 2)
    >>> a = F.alpha
    >>> F.one + a * a == a
    True
    """

    field: FiniteField
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.field.q:
            raise ValueError(f"index {self.index} out of range for GF({self.field.q})")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other.index
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.index, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(b, self.index))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(self.index, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __pow__(self, k: int):
        if self.index == 0:
            if k < 0:
                raise ZeroDivisionError("zero has no multiplicative inverse")
            return FieldElement(self.field, 1 if k == 0 else 0)
        return FieldElement(self.field, self.field.power((self.index - 1) * k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.index))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return self.field.label(self.index)


@lru_cache(maxsize=None)
def field_new(p: int, s: int = 1) -> FiniteField:
    """Return the (cached) field GF(p^s)."""
    return FiniteField(p, s)


class OrthogonalArrayFamily:
    """The arrays ``M_a[x, y] = x + a*y`` for every ``a`` in the field.

    ``M_0`` has constant rows; every other ``M_a`` is a Latin square, and any
    two members are orthogonal.
    """

    def __init__(self, field: FiniteField):
        self.field = field
        idx = np.arange(field.q)
        x, y = np.meshgrid(idx, idx, indexing="ij")
        arrays = [field.add(x, field.mul(a, y)) for a in range(field.q)]
        self.arrays = np.stack(arrays)
        self.arrays.setflags(write=False)

    def __getitem__(self, a: int) -> np.ndarray:
        return self.arrays[int(a)]

    def __len__(self) -> int:
        return self.field.q

    def entry(self, a, x, y):
        return mols_entry(self, a, x, y)

    def labelled(self, a: int) -> list[list[str]]:
        lab = self.field.label
        return [[lab(v) for v in row] for row in self.arrays[int(a)]]


def mols_entry(fam: OrthogonalArrayFamily, a, x, y):
    """``x + a*y`` in the family's field; accepts indices or FieldElements."""
    F = fam.field
    vals = []
    for v in (a, x, y):
        if isinstance(v, FieldElement):
            if v.field != F:
                raise ValueError("element belongs to a different field")
            v = v.index
        vals.append(v)
    a, x, y = vals
    return F.add(x, F.mul(a, y))


def is_latin_square(arr: np.ndarray) -> bool:
    q = arr.shape[0]
    full = np.arange(q)
    return all(np.array_equal(np.sort(r), full) for r in arr) and all(
        np.array_equal(np.sort(c), full) for c in arr.T
    )


def are_orthogonal(a1: np.ndarray, a2: np.ndarray) -> bool:
    q = a1.shape[0]
    pairs = a1.ravel() * q + a2.ravel()
    return np.unique(pairs).size == q * q
