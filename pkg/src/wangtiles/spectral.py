"""Exact integer and golden-ratio arithmetic for spectral verification.

Everything is arbitrary precision: matrices over the integers, polynomials
over the integers, and numbers a + b*phi in the quadratic ring Z[phi] with
phi**2 = phi + 1.  Floating point appears only in the power iteration and in
display helpers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, sqrt
from typing import Iterable, Optional, Sequence

PHI_FLOAT = (1 + sqrt(5)) / 2


class IntMatrix:
    """A matrix of Python integers; spectral operations require it square."""

    def __init__(self, rows: Iterable[Iterable[int]]):
        self.rows = tuple(tuple(int(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @property
    def n(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("matrix is not square")
        return self.nrows

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols})"

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("dimension mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in row] for row in self.rows])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("negative power")
        result = IntMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for row in self.rows for a in row)

    def is_positive(self) -> bool:
        return all(a > 0 for row in self.rows for a in row)


class IntPolynomial:
    """Integer polynomial, coefficients ascending by degree."""

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def __pow__(self, k: int) -> "IntPolynomial":
        result = IntPolynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        """Evaluate by Horner's rule; works for numbers and IntMatrix."""
        if isinstance(x, IntMatrix):
            acc = IntMatrix.identity(x.n).scale(0)
            for c in reversed(self.coeffs):
                acc = (acc @ x) + IntMatrix.identity(x.n).scale(c)
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if k == 0:
                body = f"{mag}"
            else:
                xk = var if k == 1 else f"{var}^{k}"
                body = xk if mag == 1 else f"{mag}*{xk}"
            parts.append(f"{sign} {body}" if parts else f"{sign}{body}")
        return " ".join(parts)


def char_poly(M: IntMatrix) -> IntPolynomial:
    """Characteristic polynomial det(xI - M) by the Berkowitz algorithm.

    Division-free, so every intermediate value is an exact integer.
    """
    n = M.n
    if n == 0:
        return IntPolynomial([1])
    A = [list(row) for row in M.rows]

    # vec holds the coefficients of det(xI - A_r) for the leading r x r
    # principal submatrix, highest degree first.
    vec = [1, -A[0][0]]
    for r in range(1, n):
        a = A[r][r]
        row = A[r][:r]       # R: row to the left of the pivot
        col = [A[i][r] for i in range(r)]  # C: column above the pivot
        sub = [A[i][:r] for i in range(r)]

        # Toeplitz column: [1, -a, -R C, -R S C, -R S^2 C, ...]
        toep = [1, -a]
        cur = col[:]
        for _ in range(r - 1):
            toep.append(-sum(x * y for x, y in zip(row, cur)))
            cur = [sum(sub[i][j] * cur[j] for j in range(r)) for i in range(r)]
        toep.append(-sum(x * y for x, y in zip(row, cur)))

        new = [0] * (r + 2)
        for i, v in enumerate(vec):
            for j, t in enumerate(toep):
                if i + j <= r + 1:
                    new[i + j] += v * t
        vec = new

    return IntPolynomial(reversed(vec))


def is_primitive(M: IntMatrix) -> Optional[int]:
    """Smallest k <= (n-1)**2 + 1 with M**k entrywise positive, else None.

    Requires a square nonnegative matrix; only the positivity pattern matters,
    so powers are computed over the boolean semiring (bitmask rows).
    """
    if not M.is_nonnegative():
        raise ValueError("matrix must be nonnegative")
    n = M.n
    if n == 0:
        return None
    base = [sum(1 << j for j, a in enumerate(row) if a > 0) for row in M.rows]
    full = (1 << n) - 1

    def bool_mul(X: list[int], Y: list[int]) -> list[int]:
        out = []
        for xrow in X:
            acc = 0
            rem = xrow
            while rem:
                j = (rem & -rem).bit_length() - 1
                acc |= Y[j]
                rem &= rem - 1
            out.append(acc)
        return out

    cur = base
    bound = (n - 1) * (n - 1) + 1
    for k in range(1, bound + 1):
        if all(r == full for r in cur):
            return k
        cur = bool_mul(cur, base)
    return None


@dataclass(frozen=True)
class GoldenNumber:
    """Element a + b*phi of Z[phi], phi**2 = phi + 1."""

    a: int = 0
    b: int = 0

    def __add__(self, other: "GoldenNumber") -> "GoldenNumber":
        return GoldenNumber(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "GoldenNumber") -> "GoldenNumber":
        return GoldenNumber(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "GoldenNumber":
        return GoldenNumber(-self.a, -self.b)

    def __mul__(self, other: "GoldenNumber") -> "GoldenNumber":
        a, b, c, d = self.a, self.b, other.a, other.b
        return GoldenNumber(a * c + b * d, a * d + b * c + b * d)

    def __pow__(self, k: int) -> "GoldenNumber":
        if k < 0:
            raise ValueError("use GoldenRational for negative powers")
        result = GoldenNumber(1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, k: int) -> "GoldenNumber":
        return GoldenNumber(k * self.a, k * self.b)

    def conjugate_factor(self) -> "GoldenNumber":
        """g * g.conjugate_factor() == norm(g) as a rational integer."""
        return GoldenNumber(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __float__(self) -> float:
        return self.a + self.b * PHI_FLOAT

    def __repr__(self) -> str:
        return f"GoldenNumber({self.a}, {self.b})"

    def pretty(self) -> str:
        if self.b == 0:
            return str(self.a)
        phi_part = "phi" if abs(self.b) == 1 else f"{abs(self.b)}*phi"
        if self.a == 0:
            return phi_part if self.b > 0 else f"-{phi_part}"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {phi_part}"


PHI = GoldenNumber(0, 1)
GOLDEN_ONE = GoldenNumber(1, 0)
GOLDEN_ZERO = GoldenNumber(0, 0)


@dataclass(frozen=True)
class GoldenRational:
    """Quotient of a GoldenNumber by a positive integer, kept in lowest terms.

    Z[phi] is a PID in which phi is a unit, so quotients of golden numbers
    reduce to this shape after multiplying by the conjugate.
    """

    num: GoldenNumber = GOLDEN_ZERO
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(abs(num.a), abs(num.b)), den)
        if g > 1:
            num = GoldenNumber(num.a // g, num.b // g)
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def of(g: GoldenNumber) -> "GoldenRational":
        return GoldenRational(g, 1)

    def __add__(self, other: "GoldenRational") -> "GoldenRational":
        return GoldenRational(
            self.num.scale(other.den) + other.num.scale(self.den), self.den * other.den
        )

    def __sub__(self, other: "GoldenRational") -> "GoldenRational":
        return GoldenRational(
            self.num.scale(other.den) - other.num.scale(self.den), self.den * other.den
        )

    def __neg__(self) -> "GoldenRational":
        return GoldenRational(-self.num, self.den)

    def __mul__(self, other: "GoldenRational") -> "GoldenRational":
        return GoldenRational(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "GoldenRational") -> "GoldenRational":
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        n = other.num.norm()
        num = self.num * other.num.conjugate_factor()
        return GoldenRational(num.scale(other.den if n > 0 else -other.den), self.den * abs(n))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __float__(self) -> float:
        return float(self.num) / self.den

    def pretty(self) -> str:
        if self.den == 1:
            return self.num.pretty()
        return f"({self.num.pretty()})/{self.den}"


def golden_matvec(M: IntMatrix, v: Sequence[GoldenNumber]) -> list[GoldenNumber]:
    return [
        sum((g.scale(a) for a, g in zip(row, v)), GOLDEN_ZERO)
        for row in M.rows
    ]


def golden_eigencheck(
    M: IntMatrix, eigenvalue: GoldenNumber, vector: Sequence[GoldenNumber], side: str = "right"
) -> bool:
    """Exact check of M v == lambda v (or v^T M == lambda v^T) in Z[phi]."""
    if len(vector) != M.n:
        raise ValueError("dimension mismatch")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    A = M if side == "right" else M.transpose()
    return all(x == eigenvalue * y for x, y in zip(golden_matvec(A, vector), vector))


def perron(M: IntMatrix, tolerance: float = 1e-12) -> tuple[float, list[float], list[float]]:
    """Perron data (value, right vector, left vector) by power iteration.

    Starts from the all-ones vector; stops when successive Rayleigh quotients
    differ by less than the tolerance.  Vectors are normalized so that the
    first nonzero entry equals 1.  Refuses non-primitive input, for which the
    Perron vector need not be unique.
    """
    if is_primitive(M) is None:
        raise ValueError("matrix is not primitive")

    def iterate(A: IntMatrix) -> tuple[float, list[float]]:
        v = [1.0] * A.n
        value = 0.0
        for _ in range(10000):
            w = [sum(a * x for a, x in zip(row, v)) for row in A.rows]
            norm = max(abs(x) for x in w)
            w = [x / norm for x in w]
            rayleigh = sum(
                wi * sum(a * x for a, x in zip(row, w)) for wi, row in zip(w, A.rows)
            ) / sum(x * x for x in w)
            if abs(rayleigh - value) < tolerance:
                v = w
                value = rayleigh
                break
            v, value = w, rayleigh
        first = next(x for x in v if abs(x) > 1e-15)
        return value, [x / first for x in v]

    value, right = iterate(M)
    _, left = iterate(M.transpose())
    return value, right, left


def recognize_golden(x: float, max_b: int = 64, tol: float = 1e-6) -> Optional[GoldenNumber]:
    """Nearest a + b*phi with small |b|, if within tolerance.

    Candidates are tried by increasing |b| so the simplest representation
    wins.  Callers must verify the result exactly; this is only a guess.
    """
    for k in range(0, max_b + 1):
        for b in ((k,) if k == 0 else (k, -k)):
            a = round(x - b * PHI_FLOAT)
            if abs(a + b * PHI_FLOAT - x) < tol:
                return GoldenNumber(a, b)
    return None


def golden_kernel_vector(M: IntMatrix, eigenvalue: GoldenNumber) -> Optional[list[GoldenRational]]:
    """A nonzero solution of (M - lambda I) x = 0 over Q(phi), or None.

    Gaussian elimination in the field Q(phi); the kernel is one-dimensional
    for the dominant eigenvalue of a primitive matrix.
    """
    n = M.n
    lam = GoldenRational.of(eigenvalue)
    rows = [
        [GoldenRational.of(GoldenNumber(M.rows[i][j], 0)) - (lam if i == j else GoldenRational())
         for j in range(n)]
        for i in range(n)
    ]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    if r == n:
        return None  # trivial kernel: not an eigenvalue
    free = next(c for c in range(n) if c not in {c for _, c in pivots})
    x = [GoldenRational() for _ in range(n)]
    x[free] = GoldenRational.of(GOLDEN_ONE)
    for i, c in pivots:
        x[c] = -rows[i][free]
    return x


def exact_perron_frequencies(M: IntMatrix) -> tuple[GoldenNumber, list[GoldenRational]]:
    """Exact dominant eigenvalue in Z[phi] and right eigenvector scaled to sum 1.

    The eigenvalue is recognized from the float Perron value and then verified
    exactly: if the recognized number is not a true eigenvalue the function
    raises, it never returns an unverified guess.
    """
    value, _, _ = perron(M)
    lam = recognize_golden(value)
    if lam is None:
        raise ValueError(f"dominant eigenvalue {value} not recognized in Z[phi]")
    kernel = golden_kernel_vector(M, lam)
    if kernel is None:
        raise ValueError(f"{lam.pretty()} is not an exact eigenvalue")
    total = GoldenRational()
    for x in kernel:
        total = total + x
    if total.is_zero():
        raise ValueError("eigenvector sums to zero; cannot normalize")
    freqs = [x / total for x in kernel]
    if any(float(f) <= 0 for f in freqs):
        freqs = [-f for f in freqs]
    return lam, freqs


def frequencies(m) -> tuple[list[GoldenRational], list[float]]:
    """Letter frequencies of a primitive self-morphism, exact and decimal.

    The right Perron vector of the incidence matrix, scaled to sum exactly
    to 1 in Q(phi).  Refuses non-primitive morphisms.
    """
    from .morphism import incidence_matrix  # local import; morphism uses this module

    _, exact = exact_perron_frequencies(incidence_matrix(m))
    return exact, [float(f) for f in exact]


def largest_real_root(
    p: IntPolynomial, lo: float = 0.0, hi: Optional[float] = None, tol: float = 1e-12
) -> float:
    """Largest real root of p in [lo, hi] by sign-change bisection.

    Used as an independent cross-check of the power iteration: scans down from
    hi for the first interval with a sign change.
    """
    if hi is None:
        # Cauchy bound
        lead = abs(p.coeffs[-1])
        hi = 1 + max(abs(c) for c in p.coeffs) / lead
    steps = 4000
    prev_x, prev_v = hi, p(hi)
    for k in range(1, steps + 1):
        x = hi - (hi - lo) * k / steps
        v = p(x)
        if v == 0:
            return x
        if (v < 0) != (prev_v < 0):
            a, b = x, prev_x
            fa = v
            while b - a > tol:
                m = (a + b) / 2
                fm = p(m)
                if fm == 0:
                    return m
                if (fm < 0) == (fa < 0):
                    a, fa = m, fm
                else:
                    b = m
            return (a + b) / 2
        prev_x, prev_v = x, v
    raise ValueError("no real root found in range")
