"""Exact arithmetic on integer lattices and sparse group-algebra elements.

Lattices are always presented as Z^n with the standard dot product as the
pairing between a lattice and its dual, so duality is literally "swap the
two vector lists" and no separate pairing type is needed.

Three kinds of values live here:

* ``Laurent``: integer Laurent polynomials in one variable q, stored as a
  sparse map from q-exponent to integer coefficient.
* ``RationalFunction``: exact quotients of Laurent polynomials, i.e. the
  field Q(q).  Used as a coefficient field for unramified characters.
* ``GroupAlgebraElement``: finitely supported Z[q,q^-1]-combinations of
  lattice monomials e^v with v in Z^n; the carrier for spherical functions
  and characters of dual-group representations.

Integer matrices are plain tuples of row tuples.  The module also provides
the exact linear algebra used elsewhere: Fraction Gaussian elimination,
Smith normal form with unimodular transforms, and integer linear solving.

Everything is immutable after construction and every operation is pure,
so all of this is safe to use concurrently.  No floating point enters:
the sign phenomena downstream are statements about exact q-exponents.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import NotDivisibleError, RankMismatchError

Vec = tuple[int, ...]
IntMatrix = tuple[Vec, ...]


# ---------------------------------------------------------------------------
# vectors and integer matrices


def dot(x: Sequence[int], y: Sequence[int]) -> int:
    """Standard pairing of a lattice vector with a dual-lattice vector."""
    if len(x) != len(y):
        raise RankMismatchError(f"pairing of vectors of ranks {len(x)} and {len(y)}")
    return sum(a * b for a, b in zip(x, y))


def vec_add(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def vec_neg(x: Vec) -> Vec:
    return tuple(-a for a in x)


def vec_scale(c: int, x: Vec) -> Vec:
    return tuple(c * a for a in x)


def mat_identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_apply(m: IntMatrix, v: Sequence[int]) -> Vec:
    if m and len(m[0]) != len(v):
        raise RankMismatchError(f"matrix of width {len(m[0])} applied to rank {len(v)}")
    return tuple(dot(row, v) for row in m)


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = mat_transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_transpose(m: IntMatrix) -> IntMatrix:
    if not m:
        return ()
    return tuple(zip(*m))


def mat_det(m: IntMatrix) -> int:
    """Determinant of a square integer matrix, exactly."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def mat_inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of an integer matrix with determinant +-1."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        assert all(x.denominator == 1 for x in row[n:])
        out.append(tuple(int(x) for x in row[n:]))
    return tuple(out)


def solve_rational(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[tuple[Fraction, ...]]:
    """Solve sum_j c_j * columns[j] = target over Q.

    Returns one solution, or None when the system is inconsistent.  When the
    columns are linearly independent the solution is unique.
    """
    k = len(columns)
    n = len(target)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
            for i in range(n)]
    pivots: list[int] = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, n) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if rows[i][k]:
            return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = rows[i][k]
    return tuple(sol)


def int_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank of the span of the given vectors."""
    if not vectors:
        return 0
    rows = [[Fraction(x) for x in v] for v in vectors]
    n = len(rows[0])
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# Smith normal form and integer linear systems


def smith_normal_form(mat: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Diagonalize an integer matrix, returning (D, S, T) with D = S*M*T.

    S and T are unimodular and the diagonal of D satisfies d1 | d2 | ... with
    nonnegative entries.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    a = [list(r) for r in mat]
    s = [list(r) for r in mat_identity(rows)]
    t = [list(r) for r in mat_identity(cols)]

    def row_sub(i, k, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        s[i] = [x - q * y for x, y in zip(s[i], s[k])]

    def col_sub(j, k, q):
        for row in a:
            row[j] -= q * row[k]
        for row in t:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        s[i], s[k] = s[k], s[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in t:
            row[j], row[k] = row[k], row[j]

    p = 0
    while p < min(rows, cols):
        best = None
        for i in range(p, rows):
            for j in range(p, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best[0]):
                    best = (abs(a[i][j]), i, j)
        if best is None:
            break
        _, i0, j0 = best
        if i0 != p:
            swap_rows(p, i0)
        if j0 != p:
            swap_cols(p, j0)
        clean = False
        while not clean:
            clean = True
            for i in range(p + 1, rows):
                if a[i][p]:
                    q = a[i][p] // a[p][p]
                    row_sub(i, p, q)
                    if a[i][p]:
                        swap_rows(p, i)
                        clean = False
            for j in range(p + 1, cols):
                if a[p][j]:
                    q = a[p][j] // a[p][p]
                    col_sub(j, p, q)
                    if a[p][j]:
                        swap_cols(p, j)
                        clean = False
        bad = None
        for i in range(p + 1, rows):
            for j in range(p + 1, cols):
                if a[i][j] % a[p][p]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            # fold the offending row into the pivot row and redo this step
            a[p] = [x + y for x, y in zip(a[p], a[bad])]
            s[p] = [x + y for x, y in zip(s[p], s[bad])]
            continue
        if a[p][p] < 0:
            a[p] = [-x for x in a[p]]
            s[p] = [-x for x in s[p]]
        p += 1

    d = tuple(tuple(r) for r in a)
    st = tuple(tuple(r) for r in s)
    tt = tuple(tuple(r) for r in t)
    assert mat_mul(mat_mul(st, tuple(tuple(r) for r in mat)), tt) == d
    return d, st, tt


def solve_integer_linear(mat: Sequence[Sequence[int]], rhs: Sequence[int]):
    """Solve M*x = rhs over the integers.

    Returns (particular, kernel_basis) or None when no integral solution
    exists.  The kernel basis generates all homogeneous solutions.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    d, s, t = smith_normal_form(mat)
    c = mat_apply(s, tuple(rhs))
    y = [0] * cols
    rank = 0
    for i in range(min(rows, cols)):
        if d[i][i]:
            rank += 1
    for i in range(rows):
        if i < rank:
            if c[i] % d[i][i]:
                return None
            y[i] = c[i] // d[i][i]
        elif c[i]:
            return None
    t_cols = mat_transpose(t)
    particular = mat_apply(t, tuple(y))
    kernel = tuple(t_cols[j] for j in range(rank, cols))
    return particular, kernel


# ---------------------------------------------------------------------------
# Laurent polynomials in q


class Laurent:
    """Integer Laurent polynomial in one variable, as {exponent: coefficient}.

    Zero coefficients are never stored, so representations are unique and
    equality is structural.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._coeffs = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def _make(cls, coeffs: dict) -> "Laurent":
        # trusted constructor: integer keys and values, no zeros stored
        self = object.__new__(cls)
        self._coeffs = coeffs
        return self

    @classmethod
    def zero(cls) -> "Laurent":
        return cls()

    @classmethod
    def one(cls) -> "Laurent":
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exp: int = 0) -> "Laurent":
        return cls({exp: coeff})

    @classmethod
    def q_power(cls, exp: int) -> "Laurent":
        return cls({exp: 1})

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._coeffs.items())

    def min_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self._coeffs)

    def max_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return max(self._coeffs)

    def _coerce(self, other):
        if isinstance(other, Laurent):
            return other
        if isinstance(other, int):
            return Laurent({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Laurent._make(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            s = out.get(k, 0) - v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Laurent._make(out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Laurent._make({k: -v for k, v in self._coeffs.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for k1, v1 in self._coeffs.items():
            for k2, v2 in other._coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
        return Laurent._make({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items())))

    def __bool__(self):
        return bool(self._coeffs)

    def shift(self, exp: int) -> "Laurent":
        """Multiply by q^exp."""
        return Laurent._make({k + exp: v for k, v in self._coeffs.items()})

    def substitute_inverse(self) -> "Laurent":
        """Substitute q -> q^-1."""
        return Laurent._make({-k: v for k, v in self._coeffs.items()})

    def evaluate(self, x: Fraction) -> Fraction:
        if any(k < 0 for k in self._coeffs) and x == 0:
            raise ZeroDivisionError("negative q-power evaluated at 0")
        return sum((Fraction(v) * Fraction(x) ** k for k, v in self._coeffs.items()),
                   Fraction(0))

    def exact_div(self, other: "Laurent") -> "Laurent":
        """Exact division in Z[q, q^-1]; raises NotDivisibleError otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return Laurent.zero()
        if len(other._coeffs) == 1:
            # dividing by a single term c*q^k stays in the integers
            (k, c), = other._coeffs.items()
            out = {}
            for e, v in self._coeffs.items():
                quotient, remainder = divmod(v, c)
                if remainder:
                    raise NotDivisibleError("not divisible")
                out[e - k] = quotient
            return Laurent._make(out)
        a0, b0 = self.min_exp(), other.min_exp()
        da = self.max_exp() - a0
        db = other.max_exp() - b0
        if da < db:
            raise NotDivisibleError("not divisible")
        num = [Fraction(self.coefficient(a0 + i)) for i in range(da + 1)]
        den = [other.coefficient(b0 + i) for i in range(db + 1)]
        lead = Fraction(den[-1])
        quot = [Fraction(0)] * (da - db + 1)
        for i in range(da - db, -1, -1):
            qc = num[i + db] / lead
            quot[i] = qc
            if qc:
                for j, bc in enumerate(den):
                    num[i + j] -= qc * bc
        if any(num):
            raise NotDivisibleError("not divisible")
        out = {}
        for i, c in enumerate(quot):
            if c:
                if c.denominator != 1:
                    raise NotDivisibleError("quotient is not integral")
                out[i + a0 - b0] = int(c)
        return Laurent(out)

    def to_str(self, var: str = "q") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for exp, coeff in sorted(self._coeffs.items(), reverse=True):
            if exp == 0:
                body = str(abs(coeff))
            else:
                power = var if exp == 1 else f"{var}^{exp}"
                body = power if abs(coeff) == 1 else f"{abs(coeff)}*{power}"
            parts.append(("-" if coeff < 0 else "+", body))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Laurent({self.to_str()})"


# ---------------------------------------------------------------------------
# the fraction field Q(q)


def _primitive_int_poly(coeffs: list[Fraction]) -> list[int]:
    """Scale a rational coefficient list to a primitive integer list with
    positive leading coefficient."""
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        return []
    denom = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * denom) for c in coeffs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Gcd of integer polynomials (primitive, positive leading coefficient)."""

    def trim(p: list[Fraction]) -> list[Fraction]:
        while p and not p[-1]:
            p.pop()
        return p

    fa = trim([Fraction(c) for c in a])
    fb = trim([Fraction(c) for c in b])
    while fb:
        while len(fa) >= len(fb):
            f = fa[-1] / fb[-1]
            shift = len(fa) - len(fb)
            for i in range(len(fb)):
                fa[shift + i] -= f * fb[i]
            trim(fa)
            if not fa:
                break
        fa, fb = fb, fa
    return _primitive_int_poly(fa)


def _laurent_dense(l: Laurent) -> tuple[int, list[int]]:
    base = l.min_exp()
    return base, [l.coefficient(base + i) for i in range(l.max_exp() - base + 1)]


class RationalFunction:
    """An exact rational function in q: a reduced quotient of Laurents.

    Canonical form: numerator and denominator share no polynomial factor,
    the denominator has no negative q-powers, nonzero constant term, and
    positive constant coefficient.  Equality is then structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Laurent, den: Laurent | None = None):
        den = Laurent.one() if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = Laurent.zero()
            self.den = Laurent.one()
            return
        nb, ncoeffs = _laurent_dense(num)
        db, dcoeffs = _laurent_dense(den)
        g = _poly_gcd(ncoeffs, dcoeffs)
        gl = Laurent({i: c for i, c in enumerate(g)})
        num = num.exact_div(gl)
        den = den.exact_div(gl)
        shift = den.min_exp()
        num = num.shift(-shift)
        den = den.shift(-shift)
        content = math.gcd(*(c for _, c in num.items()), *(c for _, c in den.items()))
        if content > 1:
            num = Laurent({k: v // content for k, v in num.items()})
            den = Laurent({k: v // content for k, v in den.items()})
        if den.coefficient(0) < 0:
            num = -num
            den = -den
        self.num = num
        self.den = den

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(Laurent.zero())

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(Laurent.one())

    @classmethod
    def from_fraction(cls, x: Fraction | int) -> "RationalFunction":
        x = Fraction(x)
        return cls(Laurent.term(x.numerator), Laurent.term(x.denominator))

    @classmethod
    def q_power(cls, exp: int) -> "RationalFunction":
        return cls(Laurent.q_power(exp))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.from_fraction(other)
        if isinstance(other, Laurent):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __pow__(self, exp: int) -> "RationalFunction":
        if exp < 0:
            return self.inverse() ** (-exp)
        out = RationalFunction.one()
        base = self
        while exp:
            if exp & 1:
                out = out * base
            base = base * base
            exp >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, x: Fraction) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError("rational function evaluated at a pole")
        return self.num.evaluate(x) / d

    def __str__(self):
        if self.den == Laurent.one():
            return self.num.to_str()
        return f"({self.num.to_str()})/({self.den.to_str()})"

    def __repr__(self):
        return f"RationalFunction({self})"


# ---------------------------------------------------------------------------
# sparse group-algebra elements on a lattice


class GroupAlgebraElement:
    """Element of Z[q,q^-1][Z^rank]: a finite sum of terms coeff * e^v.

    The monomial order used for exact division is lexicographic on exponent
    vectors; any total order works for division with a remainder check, and
    fixing one makes results reproducible.
    """

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping[Vec, Laurent | int] | None = None):
        self.rank = rank
        store: dict[Vec, Laurent] = {}
        for v, c in (terms or {}).items():
            v = tuple(int(x) for x in v)
            if len(v) != rank:
                raise RankMismatchError(f"exponent {v} in a rank-{rank} algebra")
            c = c if isinstance(c, Laurent) else Laurent.term(int(c))
            if not c.is_zero():
                store[v] = c
        self._terms = store

    @classmethod
    def _make(cls, rank: int, terms: dict) -> "GroupAlgebraElement":
        # trusted constructor: tuple keys of the right rank, nonzero Laurents
        self = object.__new__(cls)
        self.rank = rank
        self._terms = terms
        return self

    @classmethod
    def zero(cls, rank: int) -> "GroupAlgebraElement":
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> "GroupAlgebraElement":
        return cls(rank, {(0,) * rank: Laurent.one()})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Laurent | int = 1) -> "GroupAlgebraElement":
        exponent = tuple(exponent)
        return cls(len(exponent), {exponent: coeff})

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, v: Sequence[int]) -> Laurent:
        return self._terms.get(tuple(v), Laurent.zero())

    def items(self) -> list[tuple[Vec, Laurent]]:
        return sorted(self._terms.items())

    def support(self) -> tuple[Vec, ...]:
        return tuple(sorted(self._terms))

    def _check_rank(self, other: "GroupAlgebraElement"):
        if self.rank != other.rank:
            raise RankMismatchError(f"ranks {self.rank} and {other.rank} differ")

    def __add__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check_rank(other)
        out = dict(self._terms)
        for v, c in other._terms.items():
            s = out[v] + c if v in out else c
            if s.is_zero():
                out.pop(v, None)
            else:
                out[v] = s
        return GroupAlgebraElement._make(self.rank, out)

    def __sub__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check_rank(other)
        out = dict(self._terms)
        for v, c in other._terms.items():
            s = out[v] - c if v in out else -c
            if s.is_zero():
                out.pop(v, None)
            else:
                out[v] = s
        return GroupAlgebraElement._make(self.rank, out)

    def __neg__(self):
        return GroupAlgebraElement._make(self.rank, {v: -c for v, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Laurent)):
            return self.scale(other)
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check_rank(other)
        out: dict[Vec, Laurent] = {}
        for v1, c1 in self._terms.items():
            for v2, c2 in other._terms.items():
                v = vec_add(v1, v2)
                prod = c1 * c2
                if v in out:
                    out[v] = out[v] + prod
                else:
                    out[v] = prod
        return GroupAlgebraElement._make(
            self.rank, {v: c for v, c in out.items() if not c.is_zero()})

    def __rmul__(self, other):
        if isinstance(other, (int, Laurent)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Laurent | int) -> "GroupAlgebraElement":
        c = c if isinstance(c, Laurent) else Laurent.term(int(c))
        if c.is_zero():
            return GroupAlgebraElement._make(self.rank, {})
        return GroupAlgebraElement._make(self.rank,
                                         {v: cv * c for v, cv in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        return hash((self.rank, tuple(sorted((v, c) for v, c in self._terms.items()))))

    def apply_map(self, m: IntMatrix) -> "GroupAlgebraElement":
        """Push every exponent through an integer linear map (ring hom)."""
        target = len(m)
        out: dict[Vec, Laurent] = {}
        for v, c in self._terms.items():
            w = mat_apply(m, v)
            if w in out:
                out[w] = out[w] + c
            else:
                out[w] = c
        return GroupAlgebraElement._make(
            target, {v: c for v, c in out.items() if not c.is_zero()})

    def specialize_delta(self, index: int) -> "GroupAlgebraElement":
        """Restrict to the fiber over q: send the index-th exponent n to a
        factor q^n and drop that coordinate (a ring homomorphism)."""
        if not 0 <= index < self.rank:
            raise ValueError(f"invalid delta index {index} for rank {self.rank}")
        out: dict[Vec, Laurent] = {}
        for v, c in self._terms.items():
            n = v[index]
            w = v[:index] + v[index + 1:]
            add = c.shift(n)
            if w in out:
                out[w] = out[w] + add
            else:
                out[w] = add
        return GroupAlgebraElement._make(
            self.rank - 1, {v: c for v, c in out.items() if not c.is_zero()})

    def exact_div(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        """Return c with c * other == self, exactly.

        Raises NotDivisibleError when no such element exists.  Used with a
        zero-remainder assertion as a correctness tripwire in symmetrization.
        """
        if not isinstance(other, GroupAlgebraElement):
            raise TypeError("exact_div expects a GroupAlgebraElement")
        self._check_rank(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero element")
        if self.is_zero():
            return GroupAlgebraElement.zero(self.rank)
        n = self.rank
        num_base = tuple(min(v[i] for v in self._terms) for i in range(n))
        den_base = tuple(min(v[i] for v in other._terms) for i in range(n))
        rem = {vec_sub(v, num_base): c for v, c in self._terms.items()}
        den = {vec_sub(v, den_base): c for v, c in other._terms.items()}
        lead = max(den)
        lead_c = den[lead]
        quot: dict[Vec, Laurent] = {}
        while rem:
            v = max(rem)
            step = vec_sub(v, lead)
            if any(x < 0 for x in step):
                raise NotDivisibleError("not divisible")
            qc = rem[v].exact_div(lead_c)
            quot[step] = quot.get(step, Laurent.zero()) + qc
            for w, cw in den.items():
                u = vec_add(step, w)
                nc = (rem[u] - qc * cw) if u in rem else -(qc * cw)
                if nc.is_zero():
                    rem.pop(u, None)
                else:
                    rem[u] = nc
        shift = vec_sub(num_base, den_base)
        return GroupAlgebraElement._make(
            self.rank,
            {vec_add(v, shift): c for v, c in quot.items() if not c.is_zero()})

    def laurent_div(self, scalar: Laurent) -> "GroupAlgebraElement":
        """Divide every coefficient exactly by a Laurent scalar."""
        return GroupAlgebraElement._make(
            self.rank, {v: c.exact_div(scalar) for v, c in self._terms.items()})

    def to_str(self, var: str = "q") -> str:
        if not self._terms:
            return "0"
        parts = []
        for v, c in sorted(self._terms.items(), reverse=True):
            mono = "e[" + ",".join(str(x) for x in v) + "]" if any(v) else ""
            coeff_items = c.items()
            if len(coeff_items) > 1:
                body = f"({c.to_str(var)})"
                parts.append(("+", f"{body}*{mono}" if mono else body))
                continue
            exp, coeff = coeff_items[0]
            sign = "-" if coeff < 0 else "+"
            scalar = Laurent({exp: abs(coeff)})
            if not mono:
                parts.append((sign, scalar.to_str(var)))
            elif scalar == Laurent.one():
                parts.append((sign, mono))
            else:
                parts.append((sign, f"{scalar.to_str(var)}*{mono}"))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"GroupAlgebraElement({self.to_str()})"
