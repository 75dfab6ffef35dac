"""Sparse multivariate polynomials with exact rational coefficients.

Variables are the entries a[r,c] of an ambient n x n coordinate matrix,
identified by 1-based (row, col) pairs. A monomial is a sorted tuple of
(row, col, exponent) triples with positive exponents; coefficients are
fractions.Fraction. Polynomials are immutable after construction and two
polynomials are equal iff their term maps coincide, so all comparisons in the
symbolic layer are exact.

The canonical term order is graded, then lexicographic on the row-major
variable sequence. That order drives leading-term selection in division and
the deterministic ordering used by the serializers.
"""

from __future__ import annotations

from fractions import Fraction

from . import config
from .errors import DimensionError, IncompleteAssignmentError

Var = tuple[int, int]
Monomial = tuple[tuple[int, int, int], ...]

MONOMIAL_ONE: Monomial = ()

Scalar = (int, Fraction)


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, _, e in m)


def monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps: dict[Var, int] = {(r, c): e for r, c, e in m1}
    for r, c, e in m2:
        exps[(r, c)] = exps.get((r, c), 0) + e
    return tuple((r, c, e) for (r, c), e in sorted(exps.items()))


def monomial_divides(m1: Monomial, m2: Monomial) -> bool:
    """True if m1 divides m2."""
    have = {(r, c): e for r, c, e in m2}
    return all(have.get((r, c), 0) >= e for r, c, e in m1)


def monomial_quotient(m2: Monomial, m1: Monomial) -> Monomial:
    """m2 / m1, assuming divisibility."""
    exps = {(r, c): e for r, c, e in m2}
    for r, c, e in m1:
        exps[(r, c)] -= e
    return tuple((r, c, e) for (r, c), e in sorted(exps.items()) if e > 0)


def grlex_key(m: Monomial) -> tuple:
    # Graded, then lexicographic with earlier row-major variables weighing
    # more. Sparse encoding: compare (var, -exp) pairs so that a higher power
    # of an earlier variable sorts as the larger monomial under reverse=True.
    return (monomial_degree(m), tuple((-r, -c, e) for r, c, e in m))


class Poly:
    """Polynomial in the entries of an n x n coordinate matrix."""

    __slots__ = ("size", "terms")

    def __init__(self, size: int, terms: dict[Monomial, Fraction] | None = None):
        if size < 1:
            raise DimensionError(f"ambient matrix size must be >= 1, got {size}")
        self.size = size
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, size: int) -> "Poly":
        return cls(size)

    @classmethod
    def const(cls, size: int, value) -> "Poly":
        return cls(size, {MONOMIAL_ONE: Fraction(value)})

    @classmethod
    def variable(cls, size: int, row: int, col: int) -> "Poly":
        if not (1 <= row <= size and 1 <= col <= size):
            raise DimensionError(f"variable a[{row},{col}] outside {size}x{size} matrix")
        return cls(size, {((row, col, 1),): Fraction(1)})

    # -- predicates and views ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and MONOMIAL_ONE in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms[MONOMIAL_ONE]

    def total_degree(self) -> int:
        if self.is_zero:
            return 0
        return max(monomial_degree(m) for m in self.terms)

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for m in self.terms:
            out.update((r, c) for r, c, _ in m)
        return out

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical (descending graded row-major lex) order."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=grlex_key)
        return mono, self.terms[mono]

    # -- ring operations -----------------------------------------------------

    def _check_size(self, other: "Poly") -> None:
        if self.size != other.size:
            raise DimensionError(f"ambient sizes differ: {self.size} vs {other.size}")

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            other = Poly.const(self.size, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.size == other.size and self.terms == other.terms

    __hash__ = None

    def __add__(self, other) -> "Poly":
        if isinstance(other, Scalar):
            other = Poly.const(self.size, other)
        self._check_size(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, Fraction(0)) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return Poly(self.size, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.size, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if isinstance(other, Scalar):
            other = Poly.const(self.size, other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Scalar):
            value = Fraction(other)
            if not value:
                return Poly.zero(self.size)
            return Poly(self.size, {m: c * value for m, c in self.terms.items()})
        self._check_size(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = monomial_mul(m1, m2)
                acc = out.get(key, Fraction(0)) + c1 * c2
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        config.check_budget(len(out), "polynomial product")
        return Poly(self.size, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(self.size, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- calculus and evaluation --------------------------------------------

    def diff(self, var: Var) -> "Poly":
        """Partial derivative with respect to a[r,c]."""
        row, col = var
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            for i, (r, c, e) in enumerate(mono):
                if (r, c) == (row, col):
                    rest = list(mono)
                    if e == 1:
                        del rest[i]
                    else:
                        rest[i] = (r, c, e - 1)
                    key = tuple(rest)
                    acc = out.get(key, Fraction(0)) + coeff * e
                    if acc:
                        out[key] = acc
                    else:
                        out.pop(key, None)
                    break
        return Poly(self.size, out)

    def evaluate(self, assignment: dict[Var, Fraction]) -> Fraction:
        """Exact value at a rational point; every occurring variable must be assigned."""
        missing = self.variables() - set(assignment)
        if missing:
            raise IncompleteAssignmentError(f"no value for variables {sorted(missing)}")
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for r, c, e in mono:
                value *= Fraction(assignment[(r, c)]) ** e
            total += value
        return total

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            if mono == MONOMIAL_ONE:
                parts.append(str(coeff))
                continue
            factors = "*".join(
                f"a[{r},{c}]" + (f"^{e}" if e > 1 else "") for r, c, e in mono
            )
            if coeff == 1:
                parts.append(factors)
            elif coeff == -1:
                parts.append(f"-{factors}")
            else:
                parts.append(f"{coeff}*{factors}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


def symbolic_matrix(size: int) -> list[list[Poly]]:
    """The generic coordinate matrix (a[r,c]) as Poly entries."""
    return [
        [Poly.variable(size, r, c) for c in range(1, size + 1)]
        for r in range(1, size + 1)
    ]


def _bareiss_det(rows: list[list[Fraction]]) -> Fraction:
    """Fraction-free Bareiss determinant; rows are scaled to integers first."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m: list[list[int]] = []
    for row in rows:
        denom_lcm = 1
        for x in row:
            f = Fraction(x)
            denom_lcm = denom_lcm * f.denominator // _gcd(denom_lcm, f.denominator)
        scale /= denom_lcm
        m.append([int(Fraction(x) * denom_lcm) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return scale * sign * m[n - 1][n - 1]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a > 0 else -a


def _cofactor_det(mat: list[list[Poly]], rows: tuple[int, ...], cols: tuple[int, ...],
                  memo: dict) -> Poly:
    key = (rows, cols)
    cached = memo.get(key)
    if cached is not None:
        return cached
    size = mat[0][0].size
    if len(rows) == 1:
        result = mat[rows[0]][cols[0]]
    else:
        result = Poly.zero(size)
        r0 = rows[0]
        rest_rows = rows[1:]
        for idx, c in enumerate(cols):
            entry = mat[r0][c]
            if entry.is_zero:
                continue
            sub = _cofactor_det(mat, rest_rows, cols[:idx] + cols[idx + 1:], memo)
            term = entry * sub
            result = result + term if idx % 2 == 0 else result - term
    memo[key] = result
    return result


def determinant(mat: list[list[Poly]]) -> Poly:
    """Exact determinant of a square Poly matrix.

    Constant matrices go through fraction-free Bareiss elimination; symbolic
    matrices use cofactor expansion with memoized minors (sizes in scope stay
    at or below 6).
    """
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise DimensionError("determinant requires a non-empty square matrix")
    size = mat[0][0].size
    if any(entry.size != size for row in mat for entry in row):
        raise DimensionError("matrix entries live over different ambient sizes")
    if all(entry.is_constant for row in mat for entry in row):
        value = _bareiss_det([[e.constant_value() for e in row] for row in mat])
        return Poly.const(size, value)
    idx = tuple(range(n))
    return _cofactor_det(mat, idx, idx, {})


def minor(mat: list[list[Poly]], i: int, j: int) -> Poly:
    """Unsigned minor: determinant after deleting row i and column j (1-based).

    Cofactor signs (-1)^(i+j) are the caller's business.
    """
    n = len(mat)
    if not (1 <= i <= n and 1 <= j <= n):
        raise DimensionError(f"minor index ({i},{j}) outside {n}x{n} matrix")
    if n == 1:
        return Poly.const(mat[0][0].size, 1)
    sub = [
        [mat[r][c] for c in range(n) if c != j - 1]
        for r in range(n) if r != i - 1
    ]
    return determinant(sub)


def divmod_principal(p: Poly, f: Poly) -> tuple[Poly, Poly]:
    """Multivariate division of p by the single divisor f: returns (q, r).

    Uses the graded row-major lex order. For a single divisor the remainder
    is unique, and r = 0 iff p lies in the principal ideal (f).
    """
    if f.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.size != f.size:
        raise DimensionError(f"ambient sizes differ: {p.size} vs {f.size}")
    lt_mono, lt_coeff = f.leading_term()
    quotient: dict[Monomial, Fraction] = {}
    remainder: dict[Monomial, Fraction] = {}
    work = dict(p.terms)
    while work:
        mono = max(work, key=grlex_key)
        coeff = work.pop(mono)
        if monomial_divides(lt_mono, mono):
            qm = monomial_quotient(mono, lt_mono)
            qc = coeff / lt_coeff
            quotient[qm] = quotient.get(qm, Fraction(0)) + qc
            # subtract qc * qm * f; the leading product cancels mono, which
            # was already popped, so it is skipped here
            for fm, fc in f.terms.items():
                if fm == lt_mono:
                    continue
                key = monomial_mul(qm, fm)
                acc = work.get(key, Fraction(0)) - qc * fc
                if acc:
                    work[key] = acc
                else:
                    work.pop(key, None)
        else:
            remainder[mono] = remainder.get(mono, Fraction(0)) + coeff
    return Poly(p.size, quotient), Poly(p.size, remainder)


def reduce_mod_principal(p: Poly, f: Poly) -> Poly:
    """Remainder of p modulo the principal ideal (f)."""
    return divmod_principal(p, f)[1]


def exact_divide(p: Poly, f: Poly) -> Poly:
    """Quotient p / f when the division is exact; raises ValueError otherwise."""
    q, r = divmod_principal(p, f)
    if not r.is_zero:
        raise ValueError("division is not exact")
    return q
