"""
Sparse multivariate polynomials over a FieldSpec.

Terms map exponent vectors (length v) to nonzero canonical encodings.
Variables are numbered 1..v in the public API; index 0 is rejected.
"""
from itertools import combinations, combinations_with_replacement, permutations
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from algebra.gf import FieldElement, FieldSpec
from algebra.upoly import ZERO_DEGREE, Degree
from utils.errors import FieldMismatchError

Exponent = Tuple[int, ...]
Value = Union[FieldElement, "MPoly"]


def _grlex_key(exp: Exponent) -> Tuple[int, Exponent]:
    return (sum(exp), exp)


class MPoly:
    """Sparse polynomial in x1..xv; equality is structural over the same field."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FieldSpec, nvars: int, terms: Optional[Mapping[Exponent, int]] = None):
        if nvars < 1:
            raise ValueError(f"a polynomial needs at least one variable, got {nvars}")
        clean: Dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars or any(not isinstance(e, int) or e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
            field.check(c)
            if exp in clean:
                raise ValueError(f"duplicate exponent vector {exp}")
            if c:
                clean[exp] = c
        self.field = field
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def _make(cls, field: FieldSpec, nvars: int, terms: Dict[Exponent, int]) -> "MPoly":
        poly = cls.__new__(cls)
        poly.field = field
        poly.nvars = nvars
        poly.terms = {e: c for e, c in terms.items() if c}
        return poly

    # Constructors
    @classmethod
    def zero(cls, field: FieldSpec, nvars: int) -> "MPoly":
        return cls(field, nvars)

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, c: int) -> "MPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: FieldSpec, nvars: int, index: int) -> "MPoly":
        """The variable x_index (1-based)."""
        if not 1 <= index <= nvars:
            raise ValueError(f"variable index {index} outside 1..{nvars}")
        exp = [0] * nvars
        exp[index - 1] = 1
        return cls._make(field, nvars, {tuple(exp): 1})

    # Properties
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> Degree:
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> List[Tuple[Exponent, int]]:
        """Terms in canonical graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def _peer(self, other: "MPoly") -> None:
        if not isinstance(other, MPoly):
            raise TypeError(f"cannot combine MPoly with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} polynomial combined with {other.field} polynomial")
        if other.nvars != self.nvars:
            raise ValueError(f"variable counts differ: {self.nvars} vs {other.nvars}")

    # Ring operations
    def __add__(self, other: "MPoly") -> "MPoly":
        self._peer(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out[e], c) if e in out else c
        return MPoly._make(F, self.nvars, out)

    def __neg__(self) -> "MPoly":
        F = self.field
        return MPoly._make(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def scale(self, c: int) -> "MPoly":
        F = self.field
        if c == 0:
            return MPoly.zero(F, self.nvars)
        return MPoly._make(F, self.nvars, {e: F.mul(c, a) for e, a in self.terms.items()})

    def __mul__(self, other: Union["MPoly", FieldElement]) -> "MPoly":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError("scalar from a different field")
            return self.scale(other.value)
        self._peer(other)
        F = self.field
        out: Dict[Exponent, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = F.mul(ca, cb)
                out[e] = F.add(out[e], c) if e in out else c
        return MPoly._make(F, self.nvars, out)

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = MPoly.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # Structure
    def homogeneous_component(self, d: int) -> "MPoly":
        if d < 0:
            raise ValueError(f"negative degree {d}")
        return MPoly._make(self.field, self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def derivative(self, var: int) -> "MPoly":
        """Formal partial derivative with respect to x_var (1-based)."""
        if not 1 <= var <= self.nvars:
            raise ValueError(f"variable index {var} outside 1..{self.nvars}")
        F = self.field
        i = var - 1
        out: Dict[Exponent, int] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            lowered = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[lowered] = F.mul(F.from_int(e[i]), c)
        return MPoly._make(F, self.nvars, out)

    def permute(self, perm: Sequence[int]) -> "MPoly":
        """Rename x_{i+1} to x_{perm[i]+1} (perm is a 0-based permutation)."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError(f"{list(perm)} is not a permutation of 0..{self.nvars - 1}")
        out = {}
        for e, c in self.terms.items():
            moved = [0] * self.nvars
            for i, target in enumerate(perm):
                moved[target] = e[i]
            out[tuple(moved)] = c
        return MPoly._make(self.field, self.nvars, out)

    def is_symmetric(self) -> bool:
        return all(self.permute(perm) == self for perm in permutations(range(self.nvars)))

    def select_variables(self, indices: Sequence[int]) -> "MPoly":
        """
        Re-express the polynomial in the listed variables only.

        Every variable not listed must be absent from every term.
        """
        if not indices:
            raise ValueError("select at least one variable")
        for j in indices:
            if not 1 <= j <= self.nvars:
                raise ValueError(f"variable index {j} outside 1..{self.nvars}")
        keep = [j - 1 for j in indices]
        dropped = set(range(self.nvars)) - set(keep)
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                raise ValueError("polynomial still depends on an unselected variable")
            out[tuple(e[i] for i in keep)] = c
        return MPoly._make(self.field, len(keep), out)

    # Substitution and evaluation
    def substitute(self, assignment: Mapping[int, Value]) -> Union["MPoly", FieldElement]:
        """
        Substitute field values or polynomials for variables (1-based keys).

        Returns a FieldElement when every variable receives a field value.
        """
        F = self.field
        for j, val in assignment.items():
            if not isinstance(j, int) or not 1 <= j <= self.nvars:
                raise ValueError(f"variable index {j} outside 1..{self.nvars}")
            if isinstance(val, FieldElement):
                if val.field != F:
                    raise FieldMismatchError(f"value from {val.field} substituted into a {F} polynomial")
            elif isinstance(val, MPoly):
                self._peer(val)
            else:
                raise TypeError(f"cannot substitute {type(val).__name__}")

        if all(isinstance(v, FieldElement) for v in assignment.values()):
            scalars = {j - 1: v.value for j, v in assignment.items()}
            out: Dict[Exponent, int] = {}
            for e, c in self.terms.items():
                for i, x in scalars.items():
                    if e[i]:
                        c = F.mul(c, F.pow(x, e[i]))
                reduced = tuple(0 if i in scalars else ei for i, ei in enumerate(e))
                out[reduced] = F.add(out[reduced], c) if reduced in out else c
            result = MPoly._make(F, self.nvars, out)
            if len(scalars) == self.nvars:
                return FieldElement(F, result.constant_term())
            return result

        images = {
            j - 1: v if isinstance(v, MPoly) else MPoly.constant(F, self.nvars, v.value)
            for j, v in assignment.items()
        }
        powers: Dict[Tuple[int, int], MPoly] = {}
        total = MPoly.zero(F, self.nvars)
        for e, c in self.terms.items():
            kept = tuple(0 if i in images else ei for i, ei in enumerate(e))
            term = MPoly._make(F, self.nvars, {kept: c})
            for i, image in images.items():
                if e[i]:
                    key = (i, e[i])
                    if key not in powers:
                        powers[key] = image ** e[i]
                    term = term * powers[key]
            total = total + term
        return total

    def evaluate(self, point: Sequence[int]) -> int:
        """Value at a point given as canonical encodings."""
        return self.evaluator()(point)

    def evaluator(self) -> Callable[[Sequence[int]], int]:
        """A compiled evaluation closure for repeated use in scans."""
        F = self.field
        mul, add = F.mul, F.add
        nvars = self.nvars
        terms = [(c, [(i, ei) for i, ei in enumerate(e) if ei]) for e, c in self.terms.items()]
        top = [max((e[i] for e in self.terms), default=0) for i in range(nvars)]

        def evaluate(point: Sequence[int]) -> int:
            if len(point) != nvars:
                raise ValueError(f"expected {nvars} coordinates, got {len(point)}")
            powers = []
            for i, x in enumerate(point):
                row = [1]
                acc = 1
                for _ in range(top[i]):
                    acc = mul(acc, x)
                    row.append(acc)
                powers.append(row)
            total = 0
            for c, factors in terms:
                v = c
                for i, ei in factors:
                    v = mul(v, powers[i][ei])
                total = add(total, v)
            return total

        return evaluate

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [
                f"x{i + 1}" if ei == 1 else f"x{i + 1}^{ei}"
                for i, ei in enumerate(e) if ei
            ]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self}, vars={self.nvars}, {self.field})"


def homogeneous_component(P: MPoly, d: int) -> MPoly:
    """Sum of the terms of P with exponent sum exactly d."""
    return P.homogeneous_component(d)


def substitute(P: MPoly, assignment: Mapping[int, Value]) -> Union[MPoly, FieldElement]:
    return P.substitute(assignment)


def elementary_symmetric(i: int, v: int, field: FieldSpec) -> MPoly:
    """
    e_i(x1..xv): the sum of all products of i distinct variables.

    Args:
        i: Degree, 0 <= i <= v (e_0 = 1)
        v: Variable count
        field: Coefficient field

    Returns:
        MPoly in v variables
    """
    if v < 1:
        raise ValueError(f"need at least one variable, got {v}")
    if not 0 <= i <= v:
        raise ValueError(f"e_{i} is undefined in {v} variables")
    terms = {}
    for chosen in combinations(range(v), i):
        exp = [0] * v
        for j in chosen:
            exp[j] = 1
        terms[tuple(exp)] = 1
    return MPoly._make(field, v, terms)


def complete_homogeneous(d: int, v: int, field: FieldSpec) -> MPoly:
    """h_d(x1..xv): every degree-d monomial once, by direct enumeration."""
    if v < 1:
        raise ValueError(f"need at least one variable, got {v}")
    if d < 0:
        raise ValueError(f"negative degree {d}")
    terms = {}
    for chosen in combinations_with_replacement(range(v), d):
        exp = [0] * v
        for j in chosen:
            exp[j] += 1
        terms[tuple(exp)] = 1
    return MPoly._make(field, v, terms)


def bivariate_total_sum(d: int, field: FieldSpec) -> MPoly:
    """sum_{i+j <= d} x1^i x2^j."""
    if d < 0:
        raise ValueError(f"negative degree {d}")
    return MPoly._make(field, 2, {(i, j): 1 for i in range(d + 1) for j in range(d + 1 - i)})


def variables(field: FieldSpec, nvars: int) -> List[MPoly]:
    """[x1, ..., xv]."""
    return [MPoly.variable(field, nvars, j) for j in range(1, nvars + 1)]


def mpoly_from_terms(field: FieldSpec, nvars: int, terms: Iterable[Tuple[Sequence[int], int]]) -> MPoly:
    """Build from (exponent, coefficient) pairs, adding repeated exponents."""
    out: Dict[Exponent, int] = {}
    for exp, c in terms:
        e = tuple(exp)
        c = field.check(c)
        out[e] = field.add(out[e], c) if e in out else c
    return MPoly(field, nvars, {e: c for e, c in out.items() if c})
