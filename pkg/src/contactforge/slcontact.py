"""The SL(2p) apparatus: frames, the contact identity, the Reeb field,
invariance loci, the J-preserving subalgebra and the u-decomposition.

Everything is phrased over the polynomial ring in the 4p^2 matrix entries.
Rational-function prefactors (the Reeb field's 1/(4 det)) are never formed;
identities are stated and checked after clearing the determinant, so the
whole module stays polynomial and exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import ParameterError
from .exterior import (
    Form,
    VField,
    covector_transport,
    ext_d,
    interior_product,
    lie_derivative,
    vf_bracket,
    wedge,
    wedge_power,
)
from .polyring import (
    Poly,
    Var,
    determinant,
    divmod_principal,
    minor,
    reduce_mod_principal,
    symbolic_matrix,
)
from .report import CONFIRMED, REFUTED, REPORTED_ONLY, VerifyReport

FrameIndex = tuple[int, int]


def _mix_seed(*parts: int) -> int:
    """Fold integer seed components into one stable integer.

    Avoids seeding random.Random with tuples, whose hashes are not stable
    across processes once strings are involved.
    """
    h = 0x9E3779B97F4A7C15
    for x in parts:
        h = (h * 1000003 + (int(x) & 0xFFFFFFFFFFFFFFFF)) % (1 << 63)
    return h


def frame_indices(p: int) -> list[FrameIndex]:
    """Basis index order: diagonal (k,k), k < 2p, then off-diagonal row-major."""
    n = 2 * p
    idx = [(k, k) for k in range(1, n)]
    idx += [(k, l) for k in range(1, n + 1) for l in range(1, n + 1) if k != l]
    return idx


def identity_point(n: int) -> dict[Var, Fraction]:
    return {(i, j): Fraction(int(i == j)) for i in range(1, n + 1) for j in range(1, n + 1)}


def matrix_point(a: linalg.Mat) -> dict[Var, Fraction]:
    n = len(a)
    return {(i + 1, j + 1): Fraction(a[i][j]) for i in range(n) for j in range(n)}


def volume_generators(n: int) -> tuple[Var, ...]:
    return tuple((i, j) for i in range(1, n + 1) for j in range(1, n + 1))


@dataclass
class SLFrame:
    """Exact frame data on the ambient space of SL(2p)."""

    p: int
    size: int
    delta: Poly
    d_delta: Form
    minors: dict[Var, Poly]
    X: dict[FrameIndex, VField]
    Y: dict[FrameIndex, VField]
    alpha: dict[FrameIndex, Form]
    omega: Form

    def column_inner(self, i: int, j: int) -> Poly:
        """<C_i, C_j> = sum_r a[r,i] a[r,j]."""
        n = self.size
        acc = Poly.zero(n)
        for r in range(1, n + 1):
            acc = acc + Poly.variable(n, r, i) * Poly.variable(n, r, j)
        return acc


def build_frame(p: int) -> SLFrame:
    """Construct the frame and run its construction-time checks.

    X[k,l] = sum_i a[i,k] d/da[i,l] (with the diagonal fields relative to the
    last column), Y is the row-wise mirror, alpha[k,l] = sum_i (-1)^(i+k)
    A[i,k] da[i,l] with A the unsigned minors, and omega pairs consecutive
    columns. Tangency X(det) = Y(det) = 0 and commutation [X, Y_diag] = 0 are
    verified on the spot.
    """
    if p < 1:
        raise ParameterError("p must be >= 1")
    n = 2 * p
    mat = symbolic_matrix(n)
    delta = determinant(mat)
    minors = {
        (i, j): minor(mat, i, j) for i in range(1, n + 1) for j in range(1, n + 1)
    }
    a = lambda i, j: Poly.variable(n, i, j)

    x_fields: dict[FrameIndex, VField] = {}
    y_fields: dict[FrameIndex, VField] = {}
    for k, l in frame_indices(p):
        if k == l:
            coeffs = {(i, k): a(i, k) for i in range(1, n + 1)}
            for i in range(1, n + 1):
                coeffs[(i, n)] = coeffs.get((i, n), Poly.zero(n)) - a(i, n)
            x_fields[(k, k)] = VField(n, coeffs)
            row_coeffs = {(k, i): a(k, i) for i in range(1, n + 1)}
            for i in range(1, n + 1):
                row_coeffs[(n, i)] = row_coeffs.get((n, i), Poly.zero(n)) - a(n, i)
            y_fields[(k, k)] = VField(n, row_coeffs)
        else:
            x_fields[(k, l)] = VField(n, {(i, l): a(i, k) for i in range(1, n + 1)})
            y_fields[(k, l)] = VField(n, {(k, i): a(l, i) for i in range(1, n + 1)})

    alpha: dict[FrameIndex, Form] = {}
    for k, l in frame_indices(p):
        terms = {}
        for i in range(1, n + 1):
            coeff = minors[(i, k)]
            if (i + k) % 2:
                coeff = -coeff
            terms[((i, l),)] = coeff
        alpha[(k, l)] = Form(n, 1, terms)

    omega_terms: dict[tuple[Var, ...], Poly] = {}
    for i in range(1, n + 1):
        for j in range(1, p + 1):
            omega_terms[((i, 2 * j - 1),)] = a(i, 2 * j)
            omega_terms[((i, 2 * j),)] = -a(i, 2 * j - 1)
    omega = Form(n, 1, omega_terms)

    d_delta = ext_d(Form.from_poly(delta))
    lemma_form = Form(
        n,
        1,
        {
            ((i, j),): (minors[(i, j)] if (i + j) % 2 == 0 else -minors[(i, j)])
            for i in range(1, n + 1)
            for j in range(1, n + 1)
        },
    )
    if d_delta != lemma_form:
        raise AssertionError("d(det) does not match the signed-cofactor expansion")

    for kl, x in x_fields.items():
        if not x.apply(delta).is_zero:
            raise AssertionError(f"X{kl} is not tangent to the det = 1 level set")
    for kl, y in y_fields.items():
        if not y.apply(delta).is_zero:
            raise AssertionError(f"Y{kl} is not tangent to the det = 1 level set")
    # the row-wise diagonal fields are only pinned down by commutation
    for k in range(1, n):
        ykk = y_fields[(k, k)]
        for x in x_fields.values():
            if not vf_bracket(x, ykk).is_zero:
                raise AssertionError(f"[X, Y({k},{k})] != 0; diagonal Y construction is wrong")

    return SLFrame(
        p=p,
        size=n,
        delta=delta,
        d_delta=d_delta,
        minors=minors,
        X=x_fields,
        Y=y_fields,
        alpha=alpha,
        omega=omega,
    )


# -- contact identity -----------------------------------------------------------


@dataclass
class ContactReport:
    """Exact factorization of omega ^ (d omega)^(2p^2-1) ^ d(det)."""

    p: int
    top_coefficient: Poly
    quotient_by_delta: Poly | None
    constant: Fraction | None
    claimed_constant: int
    volume_reading_matches: bool
    dw_top_scalar: Fraction
    dw_reading_rhs: Fraction | None
    dw_reading_matches: bool
    is_contact: bool
    report: VerifyReport = field(default=None)


def verify_contact_identity(p: int, frame: SLFrame | None = None) -> ContactReport:
    """Expand the top identity exactly and factor out the determinant.

    The computed top form is compared against C * det * V for the row-major
    volume V; the scalar C is then audited against the quoted constant
    -2^(2p^2+p-1) under both readings of the reference volume (V itself, and
    the full power (d omega)^(2p^2)).
    """
    frame = frame or build_frame(p)
    n = frame.size
    rep = VerifyReport("verify-contact", {"p": p})
    d_omega = ext_d(frame.omega)
    power = wedge_power(d_omega, 2 * p * p - 1)
    top = wedge(wedge(frame.omega, power), frame.d_delta)
    vol = volume_generators(n)
    stray = [g for g in top.terms if g != vol]
    if stray:
        rep.add("top form is a multiple of the volume form", False, True, "derived", REFUTED,
                note=f"unexpected generator tuples: {stray[:3]}")
    top_coeff = top.coefficient(vol)

    quotient, remainder = divmod_principal(top_coeff, frame.delta)
    if not remainder.is_zero:
        rep.add("top coefficient divisible by det", False, True, "derived", REFUTED,
                note="exact division by det left a remainder; identity violated")
        return ContactReport(p, top_coeff, None, None, -(2 ** (2 * p * p + p - 1)),
                             False, Fraction(0), None, False, report=rep)
    rep.add("top coefficient divisible by det", True, True, "derived", CONFIRMED)

    if not quotient.is_constant:
        rep.add("quotient is a scalar multiple of V", False, True, "derived", REFUTED,
                note=f"non-constant quotient {quotient!r}")
        constant = None
    else:
        constant = quotient.constant_value()
        rep.add("quotient is a scalar multiple of V", True, True, "derived", CONFIRMED)

    claimed = -(2 ** (2 * p * p + p - 1))
    dw_top = wedge_power(d_omega, 2 * p * p)
    dw_scalar = dw_top.coefficient(vol).constant_value()

    volume_ok = constant == claimed
    rep.audit(
        "factorization constant under the reading Theta = V",
        constant,
        claimed,
        note="computed scalar C in omega ^ (d omega)^(2p^2-1) ^ d(det) = C * det * V",
    )
    dw_rhs = Fraction(claimed) * dw_scalar
    dw_ok = constant == dw_rhs
    rep.audit(
        "factorization constant under the reading Theta = (d omega)^(2p^2)",
        constant,
        dw_rhs,
        note=f"(d omega)^(2p^2) = {dw_scalar} * V, so this reading asks for C = {dw_rhs}",
    )
    is_contact = constant is not None and constant != 0
    rep.check("induced form is contact (scalar C nonzero)", is_contact, True, "claimed")
    return ContactReport(
        p=p,
        top_coefficient=top_coeff,
        quotient_by_delta=quotient,
        constant=constant,
        claimed_constant=claimed,
        volume_reading_matches=volume_ok,
        dw_top_scalar=dw_scalar,
        dw_reading_rhs=dw_rhs,
        dw_reading_matches=dw_ok,
        is_contact=is_contact,
        report=rep,
    )


# -- Reeb field -----------------------------------------------------------------


@dataclass
class ReebResult:
    """The quoted Reeb candidate, audited, plus the correctly normalized field.

    Both fields are returned as polynomial numerators: the candidate is
    numerator / (4 det), the normalized field is normalized_numerator / det.
    """

    p: int
    numerator: VField
    pairing: Fraction | None
    normalizer: Fraction | None
    normalized_numerator: VField | None
    report: VerifyReport = field(default=None)


def reeb_field(p: int, frame: SLFrame | None = None) -> ReebResult:
    frame = frame or build_frame(p)
    n = frame.size
    rep = VerifyReport("reeb", {"p": p})

    coeffs: dict[Var, Poly] = {}
    for i in range(1, n + 1):
        sign = 1 if i % 2 == 1 else -1
        for j in range(1, p + 1):
            coeffs[(i, 2 * j - 1)] = frame.minors[(i, 2 * j)] * sign
            coeffs[(i, 2 * j)] = frame.minors[(i, 2 * j - 1)] * sign
    numerator = VField(n, coeffs)  # equals 4 * det * R_candidate

    d_omega = ext_d(frame.omega)
    contraction = interior_product(numerator, d_omega)
    kernel_ok = contraction == frame.d_delta * 2
    rep.check(
        "2 det * i(R) d omega = d(det) (kernel direction, cleared of det)",
        kernel_ok,
        True,
        "derived",
        note="i(4 det R) d omega computed exactly and compared to 2 d(det)",
    )

    pairing_poly = interior_product(numerator, frame.omega).as_poly()
    quotient, remainder = divmod_principal(pairing_poly, frame.delta)
    pairing = None
    if remainder.is_zero and quotient.is_constant:
        pairing = quotient.constant_value() / 4
        rep.check(
            "omega(R) is the constant -p/2",
            pairing,
            Fraction(-p, 2),
            "derived",
        )
    else:
        rep.add("omega(R) is constant", False, True, "derived", REFUTED,
                note=f"omega(4 det R) = {pairing_poly!r} is not a scalar multiple of det")
    rep.audit(
        "quoted normalization omega(R) = 1",
        pairing,
        Fraction(1),
        note="the exhibited field pairs to -p/2; corrective scalar is -2/p",
    )

    normalizer = None
    normalized_numerator = None
    if pairing:
        normalizer = 1 / pairing  # -2/p
        normalized_numerator = numerator * (normalizer / 4)
        pairing_norm = interior_product(normalized_numerator, frame.omega).as_poly()
        rep.check(
            "normalized field pairs to exactly 1 (omega(R_norm) det = det)",
            pairing_norm == frame.delta,
            True,
            "derived",
        )
        kernel_form = wedge(interior_product(normalized_numerator, d_omega), frame.d_delta)
        rep.check(
            "i(R_norm) d omega ^ d(det) = 0 in the ambient ring",
            kernel_form.is_zero,
            True,
            "derived",
        )
    elif pairing == 0:
        rep.add("normalization", None, None, "derived", REFUTED,
                note="omega(R) vanishes identically; the candidate cannot be normalized")

    return ReebResult(
        p=p,
        numerator=numerator,
        pairing=pairing,
        normalizer=normalizer,
        normalized_numerator=normalized_numerator,
        report=rep,
    )


# -- structural suite ------------------------------------------------------------


def structural_checks(p: int, frame: SLFrame | None = None) -> VerifyReport:
    """Brackets [X,Y], Lie derivatives L_Y alpha, and the duality table alpha(X)."""
    frame = frame or build_frame(p)
    rep = VerifyReport("structural", {"p": p})
    shift = frame.delta - 1
    indices = frame_indices(p)

    bracket_failures = []
    for xi in indices:
        for yi in indices:
            if not vf_bracket(frame.X[xi], frame.Y[yi]).is_zero:
                bracket_failures.append((xi, yi))
    rep.check(
        f"[X,Y] = 0 for all {len(indices)}^2 index pairs",
        bracket_failures,
        [],
        "claimed",
    )

    lie_failures = []
    for yi in indices:
        for ai in indices:
            lform = lie_derivative(frame.Y[yi], frame.alpha[ai])
            residual = {
                g: r
                for g, c in lform.terms.items()
                if not (r := reduce_mod_principal(c, shift)).is_zero
            }
            if residual:
                lie_failures.append((yi, ai))
    rep.check(
        "L_Y alpha = 0 modulo (det - 1) for all pairs",
        lie_failures,
        [],
        "claimed",
    )

    def tag(ai, xi):
        return f"alpha[{ai[0]},{ai[1]}](X[{xi[0]},{xi[1]}])"

    pattern: dict[str, object] = {}
    non_constant = []
    out_of_range = []
    off_kronecker = []
    for ai in indices:
        for xi in indices:
            value = reduce_mod_principal(
                interior_product(frame.X[xi], frame.alpha[ai]).as_poly(), shift
            )
            if not value.is_constant:
                non_constant.append(tag(ai, xi))
                continue
            v = value.constant_value()
            if v:
                pattern[tag(ai, xi)] = int(v) if v.denominator == 1 else str(v)
            if v not in (0, 1, -1):
                out_of_range.append(tag(ai, xi))
            if v != Fraction(int(ai == xi)):
                off_kronecker.append((tag(ai, xi), str(v)))
    rep.check(
        "every duality pairing alpha(X) reduces to a constant in {0, 1, -1}",
        non_constant + out_of_range,
        [],
        "derived",
    )
    rep.check(
        "duality pattern is the Kronecker delta of a dual basis",
        off_kronecker,
        [],
        "derived",
        note=f"nonzero pairings found: {len(pattern)} (expected {len(indices)})",
    )
    rep.add(
        "exact duality pattern (nonzero entries)",
        pattern,
        {tag(i, i): 1 for i in indices},
        "derived",
        CONFIRMED if not off_kronecker else REFUTED,
    )
    return rep


# -- samplers ---------------------------------------------------------------------


def _cayley(s: linalg.Mat) -> linalg.Mat | None:
    n = len(s)
    eye = linalg.identity(n)
    plus = [[eye[i][j] + s[i][j] for j in range(n)] for i in range(n)]
    minus = [[eye[i][j] - s[i][j] for j in range(n)] for i in range(n)]
    inv = linalg.inverse(plus)
    if inv is None:
        return None
    return linalg.mat_mul(minus, inv)


def j_matrix(p: int) -> linalg.Mat:
    """Block-diagonal J: p copies of [[0, 1], [-1, 0]]."""
    n = 2 * p
    m = [[Fraction(0)] * n for _ in range(n)]
    for b in range(p):
        m[2 * b][2 * b + 1] = Fraction(1)
        m[2 * b + 1][2 * b] = Fraction(-1)
    return m


def is_orthogonal(a: linalg.Mat) -> bool:
    return linalg.mat_mul(linalg.transpose(a), a) == linalg.identity(len(a))


def preserves_j(a: linalg.Mat, jm: linalg.Mat) -> bool:
    return linalg.mat_mul(linalg.mat_mul(linalg.transpose(a), jm), a) == jm


def point_determinant(a: linalg.Mat) -> Fraction:
    n = len(a)
    mat = [[Poly.const(n, x) for x in row] for row in a]
    return determinant(mat).constant_value()


def h_matrix_basis(p: int) -> list[linalg.Mat]:
    """Direct basis of {Y : JY + tY J = 0}: traceless 2x2 diagonal blocks plus
    free upper blocks mirrored by M[j][i] = J2 (M[i][j])^T J2."""
    n = 2 * p
    j2 = [[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(0)]]
    basis = []

    def place(block_i, block_j, b22):
        m = [[Fraction(0)] * n for _ in range(n)]
        for r in range(2):
            for c in range(2):
                m[2 * block_i + r][2 * block_j + c] = b22[r][c]
        return m

    diag_gens = [
        [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]],
        [[Fraction(0), Fraction(1)], [Fraction(0), Fraction(0)]],
        [[Fraction(0), Fraction(0)], [Fraction(1), Fraction(0)]],
    ]
    for i in range(p):
        for g in diag_gens:
            basis.append(place(i, i, g))
    for i in range(p):
        for j in range(i + 1, p):
            for r in range(2):
                for c in range(2):
                    unit = [[Fraction(int(rr == r and cc == c)) for cc in range(2)] for rr in range(2)]
                    mirror = linalg.mat_mul(linalg.mat_mul(j2, linalg.transpose(unit)), j2)
                    m = place(i, j, unit)
                    for rr in range(2):
                        for cc in range(2):
                            m[2 * j + rr][2 * i + cc] = mirror[rr][cc]
                    basis.append(m)
    return basis


def sample_group_point(group: str, n: int, seed: int) -> linalg.Mat:
    """Exact rational point on SL(n), SO(n) or H(p) (pass p as n for H).

    SL points come from unit-triangular integer factors, SO and H points from
    Cayley transforms of random skew (resp. J-skew) rational matrices; a
    Cayley pole triggers a deterministic resample.
    """
    if group == "SL":
        rng = random.Random(_mix_seed(1, n, seed))
        lower = linalg.identity(n)
        upper = linalg.identity(n)
        for i in range(n):
            for j in range(n):
                if i > j:
                    lower[i][j] = Fraction(rng.randint(-3, 3))
                elif i < j:
                    upper[i][j] = Fraction(rng.randint(-3, 3))
        return linalg.mat_mul(lower, upper)
    if group == "SO":
        for attempt in range(100):
            rng = random.Random(_mix_seed(2, n, seed, attempt))
            s = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    v = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                    s[i][j] = v
                    s[j][i] = -v
            a = _cayley(s)
            if a is not None:
                return a
        raise ParameterError("could not sample an SO point (persistent Cayley pole)")
    if group == "H":
        p = n
        basis = h_matrix_basis(p)
        for attempt in range(100):
            rng = random.Random(_mix_seed(3, p, seed, attempt))
            y = [[Fraction(0)] * (2 * p) for _ in range(2 * p)]
            for b in basis:
                c = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
                y = [[y[i][j] + c * b[i][j] for j in range(2 * p)] for i in range(2 * p)]
            a = _cayley(y)
            if a is not None:
                return a
        raise ParameterError("could not sample an H point (persistent Cayley pole)")
    raise ParameterError(f"unknown group {group!r}")


def sample_sl_nonorthogonal(n: int, seed: int) -> linalg.Mat:
    for attempt in range(100):
        a = sample_group_point("SL", n, _mix_seed(seed, attempt))
        if not is_orthogonal(a):
            return a
    raise ParameterError("could not sample a non-orthogonal SL point")


# -- invariance loci ---------------------------------------------------------------


def left_locus_equations(frame: SLFrame) -> dict[Var, Poly]:
    """Coefficient differences of the left-transported identity covector vs omega.

    Up to sign these are exactly a[i,j] - (-1)^(i+j) A[i,j]; the signed match
    is verified here so downstream point checks can rely on it.
    """
    n = frame.size
    mat = symbolic_matrix(n)
    omega_e = frame.omega.evaluate_coefficients(identity_point(n))
    transported = covector_transport(mat, "left", omega_e)
    diff = transported - frame.omega
    equations: dict[Var, Poly] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            eq = diff.coefficient(((i, j),))
            # the difference on da[i,j] involves the partner column of the
            # symplectic pair (2k-1, 2k), not column j itself
            pj = j + 1 if j % 2 == 1 else j - 1
            stated = Poly.variable(n, i, pj) - (
                frame.minors[(i, pj)] if (i + pj) % 2 == 0 else -frame.minors[(i, pj)]
            )
            if eq != stated and eq != -stated:
                raise AssertionError(
                    f"left locus equation on da[{i},{j}] is not +-(a - cofactor)"
                )
            equations[(i, j)] = eq
    return equations


def right_locus_equations(frame: SLFrame) -> dict[Var, Poly]:
    n = frame.size
    mat = symbolic_matrix(n)
    omega_e = frame.omega.evaluate_coefficients(identity_point(n))
    transported = covector_transport(mat, "right", omega_e)
    diff = transported - frame.omega
    return {
        (i, j): diff.coefficient(((i, j),))
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }


def _point_equation_values(equations: dict[Var, Poly], a: linalg.Mat) -> list[Fraction]:
    point = matrix_point(a)
    return [eq.evaluate(point) for eq in equations.values()]


def _left_equation_values_at_point(a: linalg.Mat) -> list[Fraction]:
    """a[i,j] - (-1)^(i+j) A[i,j] evaluated numerically (used for large p)."""
    n = len(a)
    mat = [[Poly.const(n, x) for x in row] for row in a]
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            m = minor(mat, i, j).constant_value()
            sign = 1 if (i + j) % 2 == 0 else -1
            out.append(a[i - 1][j - 1] - sign * m)
    return out


def _right_equation_values_at_point(a: linalg.Mat, p: int) -> list[Fraction]:
    """Transported-right coefficients minus omega coefficients, numerically."""
    n = len(a)
    mat = [[Poly.const(n, x) for x in row] for row in a]
    out = []
    for r in range(1, n + 1):
        partner = r + 1 if r % 2 == 1 else r - 1
        for c in range(1, n + 1):
            m = minor(mat, partner, c).constant_value()
            transported = (1 if c % 2 == 1 else -1) * m
            omega_coeff = a[r - 1][c] if c % 2 == 1 else -a[r - 1][c - 2]
            out.append(transported - omega_coeff)
    return out


def invariance_loci(p: int, samples: int = 20, seed: int = 0) -> VerifyReport:
    """Point-sampled bidirectional check of the two invariance loci.

    The left locus must cut out exactly the orthogonal points, the right
    locus exactly the J-preserving points; for p = 1 the right locus is all
    of SL(2). For p <= 2 the equations are built symbolically from the
    covector transport; for p = 3 only point evaluations are performed.
    """
    if p not in (1, 2, 3):
        raise ParameterError("invariance loci are checked for p in {1, 2, 3}")
    n = 2 * p
    rep = VerifyReport("invariance", {"p": p, "samples": samples, "seed": seed})
    jm = j_matrix(p)

    symbolic = p <= 2
    if symbolic:
        frame = build_frame(p)
        left_eqs = left_locus_equations(frame)
        right_eqs = right_locus_equations(frame)
        rep.check(
            "left locus equations match +-(a[i,j] - (-1)^(i+j) A[i,j])",
            True,
            True,
            "claimed",
        )
        left_values = lambda a: _point_equation_values(left_eqs, a)
        right_values = lambda a: _point_equation_values(right_eqs, a)
    else:
        left_values = _left_equation_values_at_point
        right_values = lambda a: _right_equation_values_at_point(a, p)

    so_failures = []
    for k in range(samples):
        a = sample_group_point("SO", n, _mix_seed(seed, k))
        if not is_orthogonal(a) or point_determinant(a) != 1:
            so_failures.append((k, "sampler produced a non-SO point"))
            continue
        if any(left_values(a)):
            so_failures.append((k, "left equations do not vanish"))
    rep.check(
        f"left locus holds at {samples} sampled SO({n}) points",
        so_failures,
        [],
        "claimed",
    )

    nonorth_failures = []
    for k in range(samples):
        a = sample_sl_nonorthogonal(n, _mix_seed(seed, k))
        values = left_values(a)
        if not any(values):
            nonorth_failures.append(k)
    rep.check(
        f"left locus fails at {samples} non-orthogonal SL({n}) points",
        nonorth_failures,
        [],
        "claimed",
        note="point-sampled converse: equations hold iff the point is orthogonal",
    )

    h_failures = []
    for k in range(samples):
        a = sample_group_point("H", p, _mix_seed(seed, k))
        if not preserves_j(a, jm) or point_determinant(a) != 1:
            h_failures.append((k, "sampler produced a point outside H"))
            continue
        if any(right_values(a)):
            h_failures.append((k, "right equations do not vanish"))
    rep.check(
        f"right locus holds at {samples} sampled H points",
        h_failures,
        [],
        "claimed",
    )

    if p == 1:
        sl_failures = []
        for k in range(samples):
            a = sample_group_point("SL", n, _mix_seed(seed, k, 7))
            if any(right_values(a)) or not preserves_j(a, jm):
                sl_failures.append(k)
        rep.check(
            "for p = 1 the right locus holds at arbitrary SL(2) points (H = SL(2))",
            sl_failures,
            [],
            "claimed",
        )
    else:
        nonh_failures = []
        for k in range(samples):
            a = sample_sl_nonorthogonal(n, _mix_seed(seed, k, 11))
            if preserves_j(a, jm):
                continue  # exceedingly unlikely; skip rather than miscount
            if not any(right_values(a)):
                nonh_failures.append(k)
        rep.check(
            f"right locus fails at {samples} sampled non-H SL({n}) points",
            nonh_failures,
            [],
            "claimed",
            note="point-sampled converse: equations hold iff tA J A = J",
        )
    return rep


# -- the subalgebra h --------------------------------------------------------------


@dataclass
class SubalgebraResult:
    """Solution space of J Y + tY J = 0 with closure and block-shape audits."""

    p: int
    system: linalg.Mat
    basis: list[linalg.Mat]
    dimension: int
    bracket_closed: bool
    quoted_block_rule_holds: bool
    corrected_block_rule_holds: bool
    report: VerifyReport = field(default=None)


def h_algebra(p: int) -> SubalgebraResult:
    n = 2 * p
    jm = j_matrix(p)
    rep = VerifyReport("h-algebra", {"p": p})

    # unknowns y[r][c] flattened row-major; equations are the entries of JY + tY J
    rows: linalg.Mat = []
    for u in range(n):
        for v in range(n):
            row = [Fraction(0)] * (n * n)
            for w in range(n):
                row[w * n + v] += jm[u][w]
                row[w * n + u] += jm[w][v]
            rows.append(row)
    kernel = linalg.nullspace(rows)
    basis = [[vec[r * n:(r + 1) * n] for r in range(n)] for vec in kernel]

    for y in basis:
        lhs = linalg.mat_mul(jm, y)
        rhs = linalg.mat_mul(linalg.transpose(y), jm)
        if any(lhs[i][j] + rhs[i][j] != 0 for i in range(n) for j in range(n)):
            raise AssertionError("nullspace element violates the defining equations")

    dim = len(basis)
    rep.check("dim h = p(2p+1)", dim, p * (2 * p + 1), "claimed")

    span_rows = kernel
    closed = True
    for i in range(dim):
        for j in range(i + 1, dim):
            comm = linalg.mat_sub(
                linalg.mat_mul(basis[i], basis[j]), linalg.mat_mul(basis[j], basis[i])
            )
            vec = [comm[r][c] for r in range(n) for c in range(n)]
            if not linalg.in_row_space(span_rows, vec):
                closed = False
    rep.check("h is closed under the matrix bracket", closed, True, "derived")

    traceless = all(sum(y[i][i] for i in range(n)) == 0 for y in basis)
    rep.check("h consists of traceless matrices", traceless, True, "derived",
              note="for p = 1 this recovers sl(2) exactly" if p == 1 else "")

    j2 = [[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(0)]]

    def block(y, bi, bj):
        return [[y[2 * bi + r][2 * bj + c] for c in range(2)] for r in range(2)]

    quoted_ok = True
    corrected_ok = True
    for y in basis:
        for bi in range(p):
            for bj in range(bi + 1, p):
                mij = block(y, bi, bj)
                mji = block(y, bj, bi)
                if mji != linalg.mat_mul(linalg.mat_mul(j2, mij), j2):
                    quoted_ok = False
                if mji != linalg.mat_mul(linalg.mat_mul(j2, linalg.transpose(mij)), j2):
                    corrected_ok = False
    if p == 1:
        rep.add("block mirror rule (no off-diagonal blocks for p = 1)", True, True,
                "derived", CONFIRMED)
    else:
        rep.audit(
            "quoted block rule M[j,i] = J M[i,j] J",
            quoted_ok,
            True,
            note="fails on the solution space; the transpose is missing",
        )
        rep.check(
            "corrected block rule M[j,i] = J (M[i,j])^T J",
            corrected_ok,
            True,
            "derived",
            note="consistent with the displayed p = 2 matrix",
        )
    return SubalgebraResult(
        p=p,
        system=rows,
        basis=basis,
        dimension=dim,
        bracket_closed=closed,
        quoted_block_rule_holds=quoted_ok,
        corrected_block_rule_holds=corrected_ok,
        report=rep,
    )


# -- u-decomposition ----------------------------------------------------------------


def u_decomposition(p: int, frame: SLFrame | None = None) -> VerifyReport:
    """Expand omega in the alpha coframe and audit the inner-product table.

    The coefficients u[k,l] = omega(X[k,l]) are computed by exact contraction
    (the contraction is the oracle; the quoted table is checked against it).
    The reconstruction sum u[k,l] alpha[k,l] is then compared with omega: the
    two agree as forms on the det = 1 locus, and the exact ambient identity
    sum u alpha = det * omega + gamma * d(det) with gamma = (sum_k u[k,k])/(2p)
    is verified coefficient-wise.
    """
    frame = frame or build_frame(p)
    n = frame.size
    rep = VerifyReport("u-decomp", {"p": p})
    shift = frame.delta - 1
    indices = frame_indices(p)

    u = {kl: interior_product(frame.X[kl], frame.omega).as_poly() for kl in indices}

    def expected_u(k: int, l: int) -> Poly:
        if k == l:
            base = (
                frame.column_inner(k, k + 1)
                if k % 2 == 1
                else -frame.column_inner(k - 1, k)
            )
            return base + frame.column_inner(n - 1, n)
        if l % 2 == 0:
            return -frame.column_inner(k, l - 1)
        return frame.column_inner(k, l + 1)

    mismatches = []
    for k, l in indices:
        if u[(k, l)] != expected_u(k, l):
            mismatches.append(
                {"index": (k, l), "computed": u[(k, l)], "table": expected_u(k, l)}
            )
    rep.check(
        "inner-product table: u[k,l] = omega(X[k,l]) for every frame index",
        mismatches,
        [],
        "claimed",
        note="diagonal entries carry the uniform <C[2p-1], C[2p]> shift",
    )

    if p == 1:
        a = lambda i, j: Poly.variable(n, i, j)
        quoted = {
            (1, 1): 2 * (a(1, 1) * a(1, 2) + a(2, 1) * a(2, 2)),
            (1, 2): -(a(1, 1) * a(1, 1) + a(2, 1) * a(2, 1)),
            (2, 1): a(1, 2) * a(1, 2) + a(2, 2) * a(2, 2),
        }
        for kl, expected in quoted.items():
            rep.check(f"p=1 closed form for u{kl}", u[kl], expected, "claimed")
        rep.add(
            "index of the third coefficient",
            "omega(X[2,1])",
            "omega(X[1,2]) as printed",
            "claimed",
            REPORTED_ONLY,
            note="the printed label repeats X[1,2]; the contraction oracle pins it to X[2,1]",
        )

    reconstruction = Form.zero(n, 1)
    for kl in indices:
        reconstruction = reconstruction + frame.alpha[kl] * u[kl]

    gamma = Poly.zero(n)
    for k in range(1, n):
        gamma = gamma + u[(k, k)]
    gamma = gamma * Fraction(1, 2 * p)

    exact_rhs = frame.omega * frame.delta + frame.d_delta * gamma
    rep.check(
        "exact ambient identity: sum u alpha = det * omega + gamma * d(det)",
        reconstruction == exact_rhs,
        True,
        "derived",
        note="gamma = (sum_k u[k,k]) / (2p)",
    )

    difference = reconstruction - frame.omega
    tangential = wedge(difference, frame.d_delta)
    tangential_ok = all(
        reduce_mod_principal(c, shift).is_zero for c in tangential.terms.values()
    )
    rep.check(
        "reconstruction equals omega as a form on the det = 1 locus",
        tangential_ok,
        True,
        "derived",
        note="(sum u alpha - omega) ^ d(det) reduces to 0 mod (det - 1)",
    )

    residual = {
        g: r
        for g, c in difference.terms.items()
        if not (r := reduce_mod_principal(c, shift)).is_zero
    }
    gamma_ddelta_reduced = {
        g: reduce_mod_principal(c, shift)
        for g, c in (frame.d_delta * gamma).terms.items()
        if not reduce_mod_principal(c, shift).is_zero
    }
    rep.add(
        "literal coefficient-wise reading: sum u alpha = omega modulo (det - 1)",
        "residual gamma * d(det), nonzero" if residual else "residual 0",
        "residual 0",
        "claimed",
        CONFIRMED if not residual else REPORTED_ONLY,
        note=(
            "the two sides differ by gamma * d(det), which vanishes on vectors "
            "tangent to the det = 1 locus; the decomposition is an identity of "
            "forms on the group, not of ambient coefficient polynomials"
        ),
    )
    if residual and residual != gamma_ddelta_reduced:
        rep.add(
            "residual equals gamma * d(det) modulo (det - 1)",
            False,
            True,
            "derived",
            REFUTED,
        )
    return rep
