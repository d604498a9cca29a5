"""Finite fields GF(q), q = p^e, and extension towers GF(q^m) over them.

Elements are plain Python ints.  An element of GF(q^m) is encoded as
``sum(c_i * q**i)`` where ``c_i`` are its coefficients over GF(q) in the
polynomial basis (low degree first); each ``c_i`` is itself the radix-p
integer of its GF(p) coefficients.  The whole encoding is therefore a
radix-p digit string, and addition is digit-wise mod p at every level.

Moduli default to the monic irreducible polynomial with the smallest
integer encoding, so fields (and everything built over them) are
reproducible without a table of Conway polynomials.
"""

from __future__ import annotations

import functools
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from fdrm.errors import FieldMismatchError, PreconditionError
from fdrm.linalg import Mat

# Log/antilog tables are built only up to this order.
_LOG_TABLE_MAX = 1 << 16
# Dense q x q tables for the base field (used by vectorized enumeration).
_DENSE_TABLE_MAX = 256


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


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over a small coefficient field, coefficients low degree first


@dataclass(frozen=True)
class _Ring:
    size: int
    add: Callable[[int, int], int]
    sub: Callable[[int, int], int]
    mul: Callable[[int, int], int]
    inv: Callable[[int], int]


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], R: _Ring) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = R.add(out[i + j], R.mul(x, y))
    return _trim(out)


def _pdivmod(a: Sequence[int], b: Sequence[int], R: _Ring) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = R.inv(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = R.mul(a[-1], lead_inv)
        quot[shift] = c
        for j, y in enumerate(b):
            a[shift + j] = R.sub(a[shift + j], R.mul(c, y))
        _trim(a)
    return _trim(quot), a


def _pmod(a: Sequence[int], b: Sequence[int], R: _Ring) -> list[int]:
    return _pdivmod(a, b, R)[1]


def _psub(a: Sequence[int], b: Sequence[int], R: _Ring) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([R.sub(x, y) for x, y in zip(a, b)])


def _pgcd(a: Sequence[int], b: Sequence[int], R: _Ring) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, R)
    return a


def is_irreducible(poly: Sequence[int], R: _Ring) -> bool:
    """Ben-Or test: f of degree d is irreducible iff gcd(x^(s^i) - x, f) = 1 for i <= d/2."""
    f = _trim(list(poly))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        # h <- h^s mod f
        acc = [1]
        base, k = h, R.size
        while k:
            if k & 1:
                acc = _pmod(_pmul(acc, base, R), f, R)
            base = _pmod(_pmul(base, base, R), f, R)
            k >>= 1
        h = acc
        g = _pgcd(f, _psub(h, x, R), R)
        if len(g) != 1:
            return False
    return True


def _int_to_poly(value: int, radix: int) -> list[int]:
    out = []
    while value:
        value, r = divmod(value, radix)
        out.append(r)
    return out


def _poly_to_int(coeffs: Sequence[int], radix: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * radix + c
    return value


def smallest_irreducible(degree: int, R: _Ring) -> tuple[int, ...]:
    """Monic irreducible polynomial of the given degree with the smallest integer encoding."""
    top = R.size**degree
    for low in range(top):
        poly = _int_to_poly(low, R.size)
        poly += [0] * (degree - len(poly)) + [1]
        if is_irreducible(poly, R):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _prime_ring(p: int) -> _Ring:
    return _Ring(
        size=p,
        add=lambda a, b: (a + b) % p,
        sub=lambda a, b: (a - b) % p,
        mul=lambda a, b: (a * b) % p,
        inv=lambda a: pow(a, p - 2, p),
    )


def _as_coeffs(modulus: int | Sequence[int], radix: int) -> tuple[int, ...]:
    if isinstance(modulus, int):
        return tuple(_int_to_poly(modulus, radix))
    return tuple(int(c) for c in modulus)


# ---------------------------------------------------------------------------


class Field:
    """GF(q^m) with q = p^e, as a degree-m extension of GF(q).

    ``m == 1`` gives GF(q) itself.  Instances are immutable; build them with
    :func:`field_create`, which caches by parameters.
    """

    def __init__(
        self,
        p: int,
        e: int,
        base_modulus: tuple[int, ...],
        m: int,
        ext_modulus: tuple[int, ...],
    ) -> None:
        self.p = p
        self.e = e
        self.m = m
        self.base_modulus = base_modulus
        self.ext_modulus = ext_modulus
        self.q = p**e
        self.order = self.q**m
        self._key = (p, e, base_modulus, m, ext_modulus)
        self._base_ring = self._make_base_ring()
        self._log: np.ndarray | None = None
        self._exp: np.ndarray | None = None

    # -- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __reduce__(self):
        return (Field, self._key)

    def __repr__(self) -> str:
        return f"Field({self.descriptor})"

    @property
    def descriptor(self) -> str:
        text = f"GF({self.p}^{self.e})/mod={_poly_to_int(self.base_modulus, self.p)}"
        if self.m > 1:
            text += f"^{self.m}/mod={_poly_to_int(self.ext_modulus, self.q)}"
        return text

    @property
    def base(self) -> Field:
        """The coefficient field GF(q)."""
        if self.m == 1:
            return self
        return field_create(self.p, self.e, base_modulus=self.base_modulus)

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1 and self.m == 1

    def elements(self) -> range:
        """Canonical enumeration: elements in increasing integer encoding."""
        return range(self.order)

    def __call__(self, value: int) -> Scalar:
        return Scalar(self, self._check(value))

    def _check(self, value: int) -> int:
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not an element of {self.descriptor}")
        return value

    @property
    def alpha(self) -> int:
        """Root of the extension modulus (the element ``x``), i.e. the polynomial-basis generator."""
        if self.m > 1:
            return self.q
        if self.e > 1:
            return self.p
        raise PreconditionError("a prime field has no polynomial generator")

    # -- coefficient views ----------------------------------------------------

    def coefficients(self, a: int) -> list[int]:
        """Coordinates of ``a`` over GF(q) in the polynomial basis, length m."""
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.q)
            out.append(r)
        return out

    def from_coefficients(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise ValueError("too many coefficients")
        return _poly_to_int([int(c) for c in coeffs], self.q)

    # -- base field GF(q) arithmetic ---------------------------------------------

    def _make_base_ring(self) -> _Ring:
        p, e = self.p, self.e
        if e == 1:
            return _prime_ring(p)
        prime = _prime_ring(p)
        mod = list(self.base_modulus)
        q = self.q

        def badd(a: int, b: int) -> int:
            return _digitwise(a, b, p, e, lambda x, y: (x + y) % p)

        def bsub(a: int, b: int) -> int:
            return _digitwise(a, b, p, e, lambda x, y: (x - y) % p)

        @functools.lru_cache(maxsize=None)
        def bmul(a: int, b: int) -> int:
            prod = _pmod(_pmul(_int_to_poly(a, p), _int_to_poly(b, p), prime), mod, prime)
            return _poly_to_int(prod, p)

        def binv(a: int) -> int:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return _pow_generic(a, q - 2, bmul)

        return _Ring(size=q, add=badd, sub=bsub, mul=bmul, inv=binv)

    # -- field arithmetic on ints ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return _digitwise(a, b, self.p, self.e * self.m, lambda x, y: (x + y) % self.p)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return _digitwise(a, b, self.p, self.e * self.m, lambda x, y: (x - y) % self.p)

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._exp[(self._log[a] + self._log[b]) % (self.order - 1)])
        if self.m == 1:
            return self._base_ring.mul(a, b)
        if self.q == 2:
            return _clmul_mod(a, b, _poly_to_int(self.ext_modulus, 2))
        R = self._base_ring
        prod = _pmod(
            _pmul(self.coefficients(a), self.coefficients(b), R), self.ext_modulus, R
        )
        return _poly_to_int(prod, self.q)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) * k) % (self.order - 1)])
        return _pow_generic(a, k % (self.order - 1), self.mul)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            return int(self._exp[(-int(self._log[a])) % (self.order - 1)])
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int, i: int = 1) -> int:
        """``a ** (q ** i)``; ``i`` is taken mod m."""
        i %= self.m
        for _ in range(i):
            a = self.pow(a, self.q)
        return a

    # -- vectorized arithmetic ------------------------------------------------

    def _ensure_logs(self) -> bool:
        if self._log is not None:
            return True
        if self.order > _LOG_TABLE_MAX:
            return False
        g = self.primitive_element()
        n = self.order - 1
        exp = np.zeros(n, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self.mul(x, g)
        self._exp, self._log = exp, log
        return True

    @functools.cached_property
    def _primitive(self) -> int:
        n = self.order - 1
        factors = _prime_factors(n)
        for g in range(1, self.order):
            if all(self.pow(g, n // r) != 1 for r in factors):
                return g
        raise AssertionError("field has no primitive element")  # pragma: no cover

    def primitive_element(self) -> int:
        """Smallest generator of the multiplicative group."""
        return self._primitive

    def add_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        return _digitwise_array(a, b, self.p, self.e * self.m, 1)

    def sub_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        return _digitwise_array(a, b, self.p, self.e * self.m, -1)

    def neg_array(self, a: np.ndarray) -> np.ndarray:
        return self.sub_array(np.zeros_like(np.asarray(a, dtype=np.int64)), a)

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.is_prime_field:
            return (a * b) % self.p
        if self._ensure_logs():
            out = self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
            return np.where((a == 0) | (b == 0), 0, out)
        f = np.frompyfunc(self.mul, 2, 1)
        return f(a, b).astype(np.int64)

    def inv_array(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return np.frompyfunc(self.inv, 1, 1)(a).astype(np.int64)

    @functools.cached_property
    def dense_tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(add, mul, neg, inv)`` lookup tables; ``inv[0]`` is defined as 0."""
        if self.order > _DENSE_TABLE_MAX:
            raise PreconditionError(
                f"dense tables need order <= {_DENSE_TABLE_MAX}, got {self.order}"
            )
        x = np.arange(self.order, dtype=np.int64)
        add = self.add_array(x[:, None], x[None, :])
        mul = self.mul_array(x[:, None], x[None, :])
        neg = self.neg_array(x)
        inv = np.zeros(self.order, dtype=np.int64)
        inv[1:] = self.inv_array(x[1:])
        return add, mul, neg, inv


def _digitwise(a: int, b: int, p: int, ndigits: int, op: Callable[[int, int], int]) -> int:
    out, scale = 0, 1
    for _ in range(ndigits):
        a, x = divmod(a, p)
        b, y = divmod(b, p)
        out += op(x, y) * scale
        scale *= p
    return out


def _digitwise_array(a: np.ndarray, b: np.ndarray, p: int, ndigits: int, sign: int) -> np.ndarray:
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    scale = 1
    for _ in range(ndigits):
        x, y = (a // scale) % p, (b // scale) % p
        out += ((x + sign * y) % p) * scale
        scale *= p
    return out


def _pow_generic(a: int, k: int, mul: Callable[[int, int], int]) -> int:
    result = 1
    while k:
        if k & 1:
            result = mul(result, a)
        a = mul(a, a)
        k >>= 1
    return result


def _clmul_mod(a: int, b: int, modulus: int) -> int:
    deg = modulus.bit_length() - 1
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus
    return out


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, e: int, base_mod: tuple | None, m: int, ext_mod: tuple | None) -> Field:
    prime = _prime_ring(p)
    if base_mod is None:
        base_mod = smallest_irreducible(e, prime)
    else:
        if len(base_mod) != e + 1 or base_mod[-1] != 1:
            raise PreconditionError(f"base modulus must be monic of degree {e}")
        if not is_irreducible(base_mod, prime):
            raise PreconditionError(f"base modulus {base_mod} is reducible over GF({p})")
    base = Field(p, e, base_mod, 1, (0, 1))
    if m == 1:
        return base
    R = base._base_ring
    if ext_mod is None:
        ext_mod = smallest_irreducible(m, R)
    else:
        if len(ext_mod) != m + 1 or ext_mod[-1] != 1:
            raise PreconditionError(f"extension modulus must be monic of degree {m}")
        if any(not 0 <= c < base.q for c in ext_mod):
            raise PreconditionError("extension modulus coefficients must lie in GF(q)")
        if not is_irreducible(ext_mod, R):
            raise PreconditionError(f"extension modulus {ext_mod} is reducible over GF({base.q})")
    return Field(p, e, base_mod, m, ext_mod)


def field_create(
    p: int,
    e: int = 1,
    m: int = 1,
    *,
    base_modulus: int | Sequence[int] | None = None,
    ext_modulus: int | Sequence[int] | None = None,
) -> Field:
    """Build GF((p^e)^m).

    Moduli may be given as coefficient sequences (low degree first) or as
    their radix encodings; omitted moduli default to the smallest-encoded
    monic irreducible polynomial.
    """
    if not is_prime(p):
        raise PreconditionError(f"characteristic {p} is not prime")
    if e < 1 or m < 1:
        raise PreconditionError("degrees must be >= 1")
    bm = None if base_modulus is None else _as_coeffs(base_modulus, p)
    em = None if ext_modulus is None else _as_coeffs(ext_modulus, p**e)
    if e == 1 and bm is None:
        bm = (0, 1)
    if m == 1 and em is None:
        em = (0, 1)
    if m == 1 and em != (0, 1):
        raise PreconditionError("a degree-1 extension takes no modulus")
    return _field_cached(p, e, bm, m, em)


def gf(q: int, m: int = 1) -> Field:
    """GF(q^m) for a prime power q, with default moduli."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or not is_prime(p):
        raise PreconditionError(f"{q} is not a prime power")
    return field_create(p, e, m)


def parse_descriptor(text: str) -> Field:
    """Inverse of :attr:`Field.descriptor`."""
    import re

    match = re.fullmatch(r"GF\((\d+)\^(\d+)\)/mod=(\d+)(?:\^(\d+)/mod=(\d+))?", text.strip())
    if not match:
        raise ValueError(f"bad field descriptor {text!r}")
    p, e, bmod = int(match[1]), int(match[2]), int(match[3])
    if match[4] is None:
        return field_create(p, e, base_modulus=bmod)
    return field_create(p, e, int(match[4]), base_modulus=bmod, ext_modulus=int(match[5]))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scalar:
    """A field element bound to its field, with operator syntax."""

    field: Field
    value: int

    def _other(self, other: Scalar | int) -> int:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field.descriptor} vs {other.field.descriptor}")
            return other.value
        return self.field._check(other)

    def __add__(self, other: Scalar | int) -> Scalar:
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other: Scalar | int) -> Scalar:
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other: Scalar | int) -> Scalar:
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    def __neg__(self) -> Scalar:
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other: Scalar | int) -> Scalar:
        return Scalar(self.field, self.field.mul(self.value, self.field.inv(self._other(other))))

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def __pow__(self, k: int) -> Scalar:
        return Scalar(self.field, self.field.pow(self.value, k))

    def frobenius(self, i: int = 1) -> Scalar:
        return Scalar(self.field, self.field.frobenius(self.value, i))

    @property
    def coefficients(self) -> list[int]:
        return self.field.coefficients(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value


# ---------------------------------------------------------------------------
# vector <-> matrix expansion over a GF(q)-basis of GF(q^m)


def _basis_inverse(field: Field, basis: Sequence[int] | None) -> Mat | None:
    """Matrix mapping polynomial coordinates to ``basis`` coordinates (None for the polynomial basis)."""
    if basis is None:
        return None
    basis = list(basis)
    if len(basis) != field.m:
        raise PreconditionError(f"basis must have {field.m} elements")
    B = Mat.from_columns(field.base, [field.coefficients(b) for b in basis])
    if B.rank() != field.m:
        raise PreconditionError("given elements are not a basis over the base field")
    return B.inverse()


def phi_expand(field: Field, vector: Iterable[int], basis: Sequence[int] | None = None) -> Mat:
    """Expand a vector over GF(q^m) into the m x n matrix of its basis coordinates.

    Column j holds the coordinates of ``vector[j]``.  The default basis is
    the polynomial basis ``(1, alpha, ..., alpha^(m-1))``.
    """
    vector = [int(v) for v in vector]
    cols = [field.coefficients(v) for v in vector]
    A = Mat.from_columns(field.base, cols, rows=field.m)
    Binv = _basis_inverse(field, basis)
    return A if Binv is None else Binv @ A


def phi_compress(field: Field, A: Mat, basis: Sequence[int] | None = None) -> list[int]:
    """Inverse of :func:`phi_expand`."""
    if A.field != field.base:
        raise FieldMismatchError("matrix is not over the base field")
    if A.rows != field.m:
        raise PreconditionError(f"expected {field.m} rows, got {A.rows}")
    if basis is not None:
        _basis_inverse(field, basis)  # validates
        A = Mat.from_columns(field.base, [field.coefficients(b) for b in basis]) @ A
    return [field.from_coefficients(A.column(j)) for j in range(A.cols)]


def linearly_independent_over_base(field: Field, elements: Iterable[int]) -> bool:
    """Whether the elements are GF(q)-linearly independent."""
    elements = list(elements)
    if not elements:
        return True
    return phi_expand(field, elements).rank() == len(elements)


def find_independent(field: Field, elements: Iterable[int]) -> int:
    """First element (in canonical order) outside the GF(q)-span of ``elements``."""
    elements = list(elements)
    base_rank = phi_expand(field, elements).rank() if elements else 0
    if base_rank >= field.m:
        raise PreconditionError("elements already span the whole field")
    for x in range(1, field.order):
        if phi_expand(field, elements + [x]).rank() > base_rank:
            return x
    raise AssertionError("unreachable")  # pragma: no cover
