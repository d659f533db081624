"""
Exact arithmetic in prime fields F_p and extension fields F_{p^m}.

An element of F_{p^m} = F_p[t]/(modulus) is the coefficient vector
(a_0, ..., a_{m-1}) of a_0 + a_1 t + ... + a_{m-1} t^{m-1}. Everything
downstream works with its canonical integer encoding sum(a_i * p**i), which
also fixes serialization and every "lexicographic" order in the toolkit.
"""
from functools import lru_cache
from typing import Iterator, List, Literal, NamedTuple, Optional, Sequence, Tuple

import sympy
import sympy.polys.galoistools as gt
from loguru import logger
from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator
from sympy.polys.domains import ZZ

from utils.errors import FieldMismatchError

# Extension fields up to this order get discrete log/antilog tables.
TABLE_LIMIT = 1 << 16


def _digits(enc: int, p: int, m: int) -> Tuple[int, ...]:
    """Coefficient vector (ascending powers of t) of an encoding."""
    out = []
    for _ in range(m):
        enc, d = divmod(enc, p)
        out.append(d)
    return tuple(out)


def _to_dense(enc: int, p: int) -> List[int]:
    """Encoding -> galoistools dense list (descending, no leading zeros)."""
    out = []
    while enc:
        enc, d = divmod(enc, p)
        out.append(d)
    out.reverse()
    return out


def _from_dense(poly: Sequence[int], p: int) -> int:
    enc = 0
    for c in poly:
        enc = enc * p + int(c) % p
    return enc


@lru_cache(maxsize=None)
def is_irreducible(p: int, modulus: Tuple[int, ...]) -> bool:
    """
    Irreducibility of a monic modulus over F_p.

    A degree-m polynomial f is irreducible iff gcd(x^{p^i} - x, f) = 1 for
    every i <= m/2 (i = 1 rules out roots in F_p).
    """
    f = [c % p for c in reversed(modulus)]
    m = len(f) - 1
    x = [1, 0]
    h = x
    for i in range(1, m // 2 + 1):
        h = gt.gf_pow_mod(h, p, f, p, ZZ)
        g = gt.gf_gcd(gt.gf_sub(h, x, p, ZZ), f, p, ZZ)
        if [int(c) for c in g] != [1]:
            logger.debug(f"Modulus {modulus} over F_{p} shares a factor of degree dividing {i}")
            return False
    return True


class _LogTables(NamedTuple):
    exp: List[int]
    log: List[int]


class _Arithmetic:
    """Encoding-level arithmetic kernel shared by all equal FieldSpecs."""

    __slots__ = ("p", "m", "modulus", "q", "_dense_mod", "_tables", "_tables_ready")

    def __init__(self, p: int, m: int, modulus: Optional[Tuple[int, ...]]):
        self.p = p
        self.m = m
        self.modulus = modulus
        self.q = p**m
        self._dense_mod = [c for c in reversed(modulus)] if modulus else None
        self._tables: Optional[_LogTables] = None
        # Built on first use: the kernel may exist before the modulus is validated.
        self._tables_ready = m == 1 or self.q > TABLE_LIMIT

    def __reduce__(self):
        return (_arithmetic, (self.p, self.m, self.modulus))

    def _lookup(self) -> Optional[_LogTables]:
        if not self._tables_ready:
            self._tables = self._build_tables()
            self._tables_ready = True
        return self._tables

    # -- extension-field multiplication without tables
    def _poly_mul(self, a: int, b: int) -> int:
        p = self.p
        prod = gt.gf_mul(_to_dense(a, p), _to_dense(b, p), p, ZZ)
        return _from_dense(gt.gf_rem(prod, self._dense_mod, p, ZZ), p)

    def _poly_pow(self, a: int, e: int) -> int:
        p = self.p
        return _from_dense(gt.gf_pow_mod(_to_dense(a, p), e, self._dense_mod, p, ZZ), p)

    def _build_tables(self) -> _LogTables:
        order = self.q - 1
        factors = sympy.primefactors(order)
        generator = next(
            g for g in range(2, self.q)
            if all(self._poly_pow(g, order // r) != 1 for r in factors)
        )
        exp = [0] * order
        log = [0] * self.q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._poly_mul(x, generator)
        logger.debug(f"Built log tables for F_{self.q} with generator {generator}")
        return _LogTables(exp, log)

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        res, place = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            res += ((da + db) % p) * place
            place *= p
        return res

    def neg(self, a: int) -> int:
        p = self.p
        if self.m == 1:
            return -a % p
        if p == 2:
            return a
        res, place = 0, 1
        while a:
            a, d = divmod(a, p)
            res += (-d % p) * place
            place *= p
        return res

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        tables = self._lookup()
        if tables is not None:
            return tables.exp[(tables.log[a] + tables.log[b]) % (self.q - 1)]
        return self._poly_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero in a finite field")
        if self.m == 1:
            return pow(a, -1, self.p)
        tables = self._lookup()
        if tables is not None:
            return tables.exp[-tables.log[a] % (self.q - 1)]
        s, _, _ = gt.gf_gcdex(_to_dense(a, self.p), self._dense_mod, self.p, ZZ)
        return _from_dense(s, self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.m == 1:
            return pow(a, e, self.p)
        tables = self._lookup()
        if tables is not None:
            return tables.exp[tables.log[a] * e % (self.q - 1)]
        return self._poly_pow(a, e)


@lru_cache(maxsize=64)
def _arithmetic(p: int, m: int, modulus: Optional[Tuple[int, ...]]) -> _Arithmetic:
    return _Arithmetic(p, m, modulus)


class FieldSpec(BaseModel):
    """
    A finite field F_q, q = p^m, with an explicit irreducible modulus.

    JSON form: {"p": int, "m": int, "modulus": [c0, ..., cm]} (modulus is null
    for prime fields).
    """

    model_config = ConfigDict(frozen=True)

    p: int
    m: int = 1
    modulus: Optional[Tuple[int, ...]] = None

    _arith: _Arithmetic = PrivateAttr()

    @model_validator(mode="after")
    def check_field_spec(self) -> "FieldSpec":
        if self.p < 2 or not sympy.isprime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ValueError(f"extension degree must be positive, got {self.m}")
        if self.m == 1:
            if self.modulus is not None:
                raise ValueError("prime fields take no modulus")
            return self
        if self.modulus is None:
            raise ValueError(f"a modulus is required for extension degree m={self.m}")
        if len(self.modulus) != self.m + 1:
            raise ValueError(
                f"modulus has degree {len(self.modulus) - 1}, expected {self.m}"
            )
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError(f"modulus coefficients must lie in [0, {self.p})")
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not is_irreducible(self.p, self.modulus):
            raise ValueError(f"modulus {list(self.modulus)} is reducible over F_{self.p}")
        return self

    def model_post_init(self, __context) -> None:
        self._arith = _arithmetic(self.p, self.m, self.modulus)

    # Identity is (p, m, modulus); the arithmetic kernel is a cache.
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __str__(self) -> str:
        return f"F_{self.q}"

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    # Encoding-level arithmetic
    def add(self, a: int, b: int) -> int:
        return self._arith.add(a, b)

    def sub(self, a: int, b: int) -> int:
        return self._arith.sub(a, b)

    def neg(self, a: int) -> int:
        return self._arith.neg(a)

    def mul(self, a: int, b: int) -> int:
        return self._arith.mul(a, b)

    def inv(self, a: int) -> int:
        return self._arith.inv(a)

    def div(self, a: int, b: int) -> int:
        return self._arith.mul(a, self._arith.inv(b))

    def pow(self, a: int, e: int) -> int:
        return self._arith.pow(a, e)

    def from_int(self, n: int) -> int:
        """Encoding of n * 1 (the image of an integer in the prime subfield)."""
        return n % self.p

    def coeffs(self, enc: int) -> Tuple[int, ...]:
        return _digits(enc, self.p, self.m)

    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"{list(coeffs)} is not a coefficient vector of {self}")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def check(self, enc: int) -> int:
        if not isinstance(enc, int) or not 0 <= enc < self.q:
            raise ValueError(f"{enc!r} is not a canonical encoding in {self}")
        return enc

    # Element constructors
    def element(self, enc: int) -> "FieldElement":
        return FieldElement(self, enc)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        return FieldElement(self, self.encode(coeffs))

    def __call__(self, enc: int) -> "FieldElement":
        return FieldElement(self, enc)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def encodings(self, nonzero_only: bool = False) -> range:
        return range(1 if nonzero_only else 0, self.q)


class FieldElement:
    """An element of a FieldSpec; operations across fields are errors."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        self.field = field
        self.value = field.check(value)

    def _peer(self, other: object) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatchError(f"{self.field} element combined with {other.field} element")
        return other.value

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.add(self.value, self._peer(other)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.sub(self.value, self._peer(other)))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.mul(self.value, self._peer(other)))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field.div(self.value, self._peer(other)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.value == other.value and self.field == other.field

    def __lt__(self, other: "FieldElement") -> bool:
        return self.value < self._peer(other)

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, {self.field})"

    def __str__(self) -> str:
        return str(self.value)


def field_make(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """
    Build and validate a finite field.

    Args:
        p: Prime characteristic
        m: Extension degree
        modulus: Ascending coefficients [c0, ..., cm] of a monic irreducible
            polynomial over F_p; required iff m > 1

    Returns:
        Validated FieldSpec
    """
    return FieldSpec(p=p, m=m, modulus=tuple(modulus) if modulus is not None else None)


def field_arith(
    op: Literal["add", "mul", "inv", "neg"],
    a: FieldElement,
    b: Optional[FieldElement] = None,
) -> FieldElement:
    """Apply one field operation; binary operations require `b` in the same field."""
    if op in ("add", "mul"):
        if b is None:
            raise ValueError(f"'{op}' needs two operands")
        return a + b if op == "add" else a * b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError(f"unknown field operation '{op}'")


def enumerate_elements(field: FieldSpec, nonzero_only: bool = False) -> List[FieldElement]:
    """All (or all nonzero) elements in increasing canonical-encoding order."""
    return [FieldElement(field, e) for e in field.encodings(nonzero_only)]


def iter_moduli(p: int, m: int) -> Iterator[Tuple[int, ...]]:
    """Monic degree-m moduli in increasing order of their lower coefficients' encoding."""
    for low in range(p**m):
        yield _digits(low, p, m) + (1,)


@lru_cache(maxsize=None)
def find_irreducible_modulus(p: int, m: int) -> Tuple[int, ...]:
    """Smallest monic irreducible modulus of degree m over F_p (m >= 2)."""
    if m < 2:
        raise ValueError("prime fields need no modulus")
    if not sympy.isprime(p):
        raise ValueError(f"characteristic {p} is not prime")
    modulus = next(mod for mod in iter_moduli(p, m) if is_irreducible(p, mod))
    logger.debug(f"Smallest irreducible modulus for F_{p}^{m}: {list(modulus)}")
    return modulus


def field_of_order(q: int) -> FieldSpec:
    """F_q for a prime power q, using the smallest irreducible modulus."""
    factors = sympy.factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, m), = factors.items()
    if m == 1:
        return FieldSpec(p=p)
    return FieldSpec(p=p, m=m, modulus=find_irreducible_modulus(p, m))
