"""
Univariate polynomial algebra over a FieldSpec.

Coefficients are canonical encodings stored in ascending degree order
([c0, c1, ...]); the zero polynomial has the ZERO_DEGREE sentinel.
"""
from functools import total_ordering
from typing import Iterable, List, Sequence, Set, Tuple, Union

from loguru import logger

from algebra.gf import FieldElement, FieldSpec
from utils.errors import FieldMismatchError


@total_ordering
class _ZeroDegree:
    """Degree of the zero polynomial: below every integer, no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("ZERO_DEGREE")

    def __reduce__(self):
        return "ZERO_DEGREE"

    def __repr__(self) -> str:
        return "ZERO_DEGREE"


ZERO_DEGREE = _ZeroDegree()
Degree = Union[int, _ZeroDegree]


def _strip(coeffs: List[int]) -> Tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class UPoly:
    """Normalized univariate polynomial (leading coefficient nonzero unless zero)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int] = ()):
        self.field = field
        self.coeffs = _strip([field.check(c) for c in coeffs])

    @classmethod
    def _make(cls, field: FieldSpec, coeffs: List[int]) -> "UPoly":
        poly = cls.__new__(cls)
        poly.field = field
        poly.coeffs = _strip(coeffs)
        return poly

    # Constructors
    @classmethod
    def zero(cls, field: FieldSpec) -> "UPoly":
        return cls._make(field, [])

    @classmethod
    def constant(cls, field: FieldSpec, c: int) -> "UPoly":
        return cls(field, [c])

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, c: int = 1) -> "UPoly":
        if degree < 0:
            raise ValueError(f"negative degree {degree}")
        return cls(field, [0] * degree + [c])

    @classmethod
    def x(cls, field: FieldSpec) -> "UPoly":
        return cls.monomial(field, 1)

    @classmethod
    def from_elements(cls, coeffs: Sequence[FieldElement]) -> "UPoly":
        if not coeffs:
            raise ValueError("need at least one coefficient to infer the field")
        field = coeffs[0].field
        for c in coeffs:
            if c.field != field:
                raise FieldMismatchError("coefficients from different fields")
        return cls._make(field, [c.value for c in coeffs])

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Iterable[int]) -> "UPoly":
        """The monic product of (x - r) over `roots` (encodings)."""
        coeffs = [1]
        for r in roots:
            neg_r = field.neg(r)
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] = field.add(nxt[i + 1], c)
                nxt[i] = field.add(nxt[i], field.mul(c, neg_r))
            coeffs = nxt
        return cls._make(field, coeffs)

    # Basic properties
    @property
    def degree(self) -> Degree:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def _peer(self, other: "UPoly") -> None:
        if not isinstance(other, UPoly):
            raise TypeError(f"cannot combine UPoly with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} polynomial combined with {other.field} polynomial")

    # Ring operations
    def __add__(self, other: "UPoly") -> "UPoly":
        self._peer(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly._make(F, [F.add(self.coefficient(i), other.coefficient(i)) for i in range(n)])

    def __neg__(self) -> "UPoly":
        return UPoly._make(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def scale(self, c: int) -> "UPoly":
        F = self.field
        return UPoly._make(F, [F.mul(c, a) for a in self.coeffs])

    def __mul__(self, other: Union["UPoly", FieldElement]) -> "UPoly":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError("scalar from a different field")
            return self.scale(other.value)
        self._peer(other)
        if self.is_zero or other.is_zero:
            return UPoly.zero(self.field)
        F = self.field
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return UPoly._make(F, out)

    def __pow__(self, e: int) -> "UPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = UPoly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "UPoly") -> Tuple["UPoly", "UPoly"]:
        """Euclidean division: self = quotient * other + remainder."""
        self._peer(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        db = len(other.coeffs) - 1
        rem = list(self.coeffs)
        quot = [0] * max(len(rem) - db, 0)
        inv_lead = F.inv(other.leading)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            factor = F.mul(c, inv_lead)
            quot[i - db] = factor
            for j, b in enumerate(other.coeffs):
                rem[i - db + j] = F.sub(rem[i - db + j], F.mul(factor, b))
        return UPoly._make(F, quot), UPoly._make(F, rem[:db])

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UPoly":
        if self.is_zero:
            raise ZeroDivisionError("the zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.leading))

    def derivative(self) -> "UPoly":
        F = self.field
        return UPoly._make(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    # Evaluation
    def evaluate(self, x: int) -> int:
        """Horner evaluation at an encoding."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field != self.field:
            raise FieldMismatchError(f"evaluating a {self.field} polynomial at a {x.field} point")
        return FieldElement(self.field, self.evaluate(x.value))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            mono = "x" if i == 1 else f"x^{i}"
            parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UPoly({self}, {self.field})"


def _deflate(field: FieldSpec, coeffs: Sequence[int], root: int) -> List[int]:
    """Quotient of sum(coeffs[i] x^i) by (x - root), assuming root is a root."""
    n = len(coeffs) - 1
    out = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = field.add(coeffs[i], field.mul(acc, root))
        out[i - 1] = acc
    return out


def poly_divmod(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    """(quotient, remainder) with a = quotient*b + remainder, deg(remainder) < deg(b)."""
    return a.divmod(b)


def interpolate_encodings(field: FieldSpec, xs: Sequence[int], ys: Sequence[int]) -> UPoly:
    """
    Lagrange interpolation on encodings.

    Each basis polynomial prod_{j != i}(x - x_j) is obtained by deflating the
    node polynomial prod_j (x - x_j) at x_i.
    """
    if len(xs) != len(ys):
        raise ValueError("interpolation needs as many values as nodes")
    if len(set(xs)) != len(xs):
        raise ValueError("repeated interpolation node")
    if not xs:
        return UPoly.zero(field)
    node_poly = UPoly.from_roots(field, xs).coeffs
    total = [0] * len(xs)
    for xi, yi in zip(xs, ys):
        if yi == 0:
            continue
        basis = _deflate(field, node_poly, xi)
        denom = 0
        for c in reversed(basis):
            denom = field.add(field.mul(denom, xi), c)
        weight = field.div(yi, denom)
        for j, c in enumerate(basis):
            total[j] = field.add(total[j], field.mul(weight, c))
    return UPoly._make(field, total)


def interpolate(points: Sequence[Tuple[FieldElement, FieldElement]]) -> UPoly:
    """
    Unique polynomial of degree < len(points) through the given points.

    Args:
        points: (x, y) pairs of FieldElements with pairwise distinct x

    Returns:
        The interpolating UPoly
    """
    if not points:
        raise ValueError("cannot infer a field from an empty point list")
    field = points[0][0].field
    for x, y in points:
        if x.field != field or y.field != field:
            raise FieldMismatchError("interpolation points from different fields")
    return interpolate_encodings(field, [x.value for x, _ in points], [y.value for _, y in points])


def roots_in_set(u: UPoly, candidates: Iterable[FieldElement]) -> Set[FieldElement]:
    """The members of `candidates` at which `u` vanishes (u must be nonzero)."""
    if u.is_zero:
        raise ValueError("the zero polynomial vanishes everywhere; root count is undefined")
    roots = set()
    for s in candidates:
        if s.field != u.field:
            raise FieldMismatchError(f"candidate root from {s.field}, polynomial over {u.field}")
        if u.evaluate(s.value) == 0:
            roots.add(s)
    logger.debug(f"{u} has {len(roots)} roots in the candidate set")
    return roots
