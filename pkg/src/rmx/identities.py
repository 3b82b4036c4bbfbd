r"""The identity hierarchy satisfied by the quantum R-matrices.

The central objects are the cyclic matrix products on n sites

.. math::

    \sum_{(i_1, \dots, i_{n-1})} R_{a i_1}(z_a - z_{i_1})
        R_{i_1 i_2}(z_{i_1} - z_{i_2}) \cdots R_{i_{n-1} a}(z_{i_{n-1}} - z_a),

summed over all orderings of the remaining sites.  For n >= 3 the sum is a
scalar matrix, independent of the points and of the outer site a, with
coefficient :math:`(-N)^n \wp^{(n-2)}(N\hbar)`.  The n = 2 member is the
unitarity relation

.. math::

    R_{12}(z) R_{21}(-z) = N^2 \bigl(\wp(N\hbar) - \wp(z)\bigr)\,\mathrm{Id},

and n = 1 degenerates to the same-site scalar :math:`N\phi(N\hbar, z/N)`.
Alongside these live the quantum and associative Yang-Baxter equations and
the skew-symmetry R(z, hbar) = -P R(-z, -hbar) P.

Each check returns an :class:`IdentityReport` carrying the measured
residual, the tolerance it was judged against, and diagnostic details.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateArguments, DimensionMismatch, PoleProximity, ZeroArgument
from .special_functions import cyclic_orderings, scalar_cyclic_sum, weierstrass_p
from .rmatrix import r_matrix, r_same_site, same_site_closed_form
from .tensor_ops import (
    DEFAULT_SIZE_CAP,
    embed_two_site,
    frobenius_distance,
    is_scalar_operator,
    permutation_operator,
)

__all__ = [
    "IdentityReport",
    "default_tolerance",
    "term_sequences",
    "cyclic_product_sum",
    "check_nth_order",
    "check_unitarity",
    "check_qybe",
    "check_aybe",
    "check_skew_symmetry",
    "check_outer_index_independence",
]


@dataclass
class IdentityReport:
    """Outcome of one identity check."""

    name: str
    passed: bool
    residual: float
    tolerance: float
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def default_tolerance(kind, N=1, n=3):
    """Residual tolerance for an identity check.

    Rational and trigonometric data stay near machine precision; the
    elliptic family loses digits through the theta quotients, more so at
    larger N and deeper n (higher wp derivatives on the right-hand side).
    """
    label = kind.value if hasattr(kind, "value") else str(kind)
    if label in ("yang", "rational"):
        return 1e-13
    if label == "trigonometric":
        return 1e-12
    if N >= 3 and n >= 5:
        return 5e-9
    return 1e-9


def term_sequences(n, outer):
    """The (n-1)! site orderings entering the n-th cyclic sum, 1-based."""
    return cyclic_orderings(n, outer)


def _resolve_hbar(spec, hbar):
    if hbar is None:
        return spec.hbar
    spec.validate_hbar(hbar)
    return complex(hbar)


def cyclic_product_sum(
    spec, n, points, outer=1, hbar=None, size_cap=DEFAULT_SIZE_CAP
):
    """Sum of embedded R-matrix chain products over all orderings.

    Parameters
    ----------
    spec : RMatrixSpec
    n : int
        Number of sites, n >= 2.
    points : sequence of n complex numbers
        Site positions; R factors are evaluated at their differences.
    outer : int
        The distinguished site a, 1-based.
    hbar : complex, optional
        Override of spec.hbar.
    size_cap : int
        Bound on the embedded dimension N**n.

    Returns
    -------
    ndarray of shape (N**n, N**n)
    """
    if len(points) != n:
        raise DimensionMismatch(f"expected {n} points, got {len(points)}")
    hbar = _resolve_hbar(spec, hbar)
    N = spec.site_dim
    pts = [complex(p) for p in points]
    orderings = term_sequences(n, outer)

    embedded = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                rm = r_matrix(spec, pts[i - 1] - pts[j - 1], hbar)
                embedded[(i, j)] = embed_two_site(rm, i, j, N, n, size_cap)

    dim = N ** n
    total = np.zeros((dim, dim), dtype=complex)
    for ordering in orderings:
        chain = (outer,) + ordering + (outer,)
        prod = embedded[(chain[0], chain[1])]
        for u, v in zip(chain[1:-1], chain[2:]):
            prod = prod @ embedded[(u, v)]
        total += prod
    return total


def check_unitarity(spec, z, hbar=None, tolerance=None):
    """Unitarity: R_12(z) R_21(-z) is N^2 (wp(N hbar) - wp(z)) times Id."""
    hbar = _resolve_hbar(spec, hbar)
    N = spec.site_dim
    z = complex(z)
    if tolerance is None:
        tolerance = default_tolerance(spec.kind, N, 2)
    perm = permutation_operator(N)
    r12 = r_matrix(spec, z, hbar)
    r21 = perm @ r_matrix(spec, -z, hbar) @ perm
    prod = r12 @ r21
    expected = N * N * (
        weierstrass_p(N * hbar, spec.lattice) - weierstrass_p(z, spec.lattice)
    )
    _, coeff, nonscalar = is_scalar_operator(prod, tol=np.inf)
    coeff_resid = abs(coeff - expected) / max(abs(expected), 1.0)
    residual = max(nonscalar, coeff_resid)
    return IdentityReport(
        name="unitarity",
        passed=residual < tolerance,
        residual=residual,
        tolerance=tolerance,
        details={
            "coefficient": coeff,
            "expected": expected,
            "nonscalar_residual": nonscalar,
        },
    )


def check_nth_order(
    spec,
    n,
    points,
    outer=1,
    hbar=None,
    tolerance=None,
    size_cap=DEFAULT_SIZE_CAP,
):
    """n-th member of the identity hierarchy at the given points.

    n = 1 compares the same-site matrix with its closed form, n = 2 is
    unitarity at z = points[0] - points[1], and n >= 3 checks that the
    cyclic product sum is scalar with coefficient
    (-N)^n wp^(n-2)(N hbar).  For n >= 3 the details carry a cross-check
    against N^n times the scalar cyclic sum at eta = N hbar.
    """
    hbar = _resolve_hbar(spec, hbar)
    N = spec.site_dim
    if tolerance is None:
        tolerance = default_tolerance(spec.kind, N, max(n, 2))

    if n == 1:
        if len(points) != 1:
            raise DimensionMismatch(f"n = 1 takes one point, got {len(points)}")
        z = complex(points[0])
        mat = r_same_site(spec, z, hbar)
        closed = same_site_closed_form(spec, z, hbar)
        residual = frobenius_distance(mat, closed * np.eye(N))
        return IdentityReport(
            name="same-site",
            passed=residual < tolerance,
            residual=residual,
            tolerance=tolerance,
            details={"closed_form": closed},
        )

    if n == 2:
        if len(points) != 2:
            raise DimensionMismatch(f"n = 2 takes two points, got {len(points)}")
        rep = check_unitarity(
            spec, complex(points[0]) - complex(points[1]), hbar, tolerance
        )
        rep.name = "order-2 (unitarity)"
        return rep

    total = cyclic_product_sum(spec, n, points, outer, hbar, size_cap)
    expected = (-N) ** n * weierstrass_p(N * hbar, spec.lattice, deriv_order=n - 2)
    _, coeff, nonscalar = is_scalar_operator(total, tol=np.inf)
    coeff_resid = abs(coeff - expected) / max(abs(expected), 1.0)
    residual = max(nonscalar, coeff_resid)

    scalar_sum = scalar_cyclic_sum(n, outer, N * hbar, points, spec.lattice)
    cross = abs(coeff - N ** n * scalar_sum) / max(abs(coeff), 1.0)
    return IdentityReport(
        name=f"order-{n}",
        passed=residual < tolerance,
        residual=residual,
        tolerance=tolerance,
        details={
            "coefficient": coeff,
            "expected": expected,
            "nonscalar_residual": nonscalar,
            "scalar_cross_residual": cross,
            "orderings": len(term_sequences(n, outer)),
        },
    )


def check_outer_index_independence(
    spec, n, points, hbar=None, tolerance=None, size_cap=DEFAULT_SIZE_CAP
):
    """The cyclic product sum must not depend on the distinguished site."""
    if n < 3:
        raise DimensionMismatch("outer index independence needs n >= 3")
    hbar = _resolve_hbar(spec, hbar)
    if tolerance is None:
        tolerance = default_tolerance(spec.kind, spec.site_dim, n)
    sums = [
        cyclic_product_sum(spec, n, points, a, hbar, size_cap)
        for a in range(1, n + 1)
    ]
    residual = max(
        frobenius_distance(sums[0], s) for s in sums[1:]
    )
    coeffs = [complex(np.trace(s) / s.shape[0]) for s in sums]
    return IdentityReport(
        name=f"outer-independence-{n}",
        passed=residual < tolerance,
        residual=residual,
        tolerance=tolerance,
        details={"coefficients": coeffs},
    )


def check_qybe(spec, points, hbar=None, tolerance=None):
    """Quantum Yang-Baxter equation on three sites.

    R_12(z_12) R_13(z_13) R_23(z_23) = R_23(z_23) R_13(z_13) R_12(z_12).
    """
    if len(points) != 3:
        raise DimensionMismatch(f"QYBE takes three points, got {len(points)}")
    hbar = _resolve_hbar(spec, hbar)
    if tolerance is None:
        tolerance = default_tolerance(spec.kind, spec.site_dim, 3)
    N = spec.site_dim
    z1, z2, z3 = (complex(p) for p in points)

    def emb(zi, zj, i, j):
        return embed_two_site(r_matrix(spec, zi - zj, hbar), i, j, N, 3)

    r12 = emb(z1, z2, 1, 2)
    r13 = emb(z1, z3, 1, 3)
    r23 = emb(z2, z3, 2, 3)
    residual = frobenius_distance(r12 @ r13 @ r23, r23 @ r13 @ r12)
    return IdentityReport(
        name="qybe",
        passed=residual < tolerance,
        residual=residual,
        tolerance=tolerance,
        details={},
    )


def check_aybe(spec, points, second_hbar, hbar=None, tolerance=None):
    """Associative Yang-Baxter equation with two quantization parameters.

    With sites (a, c, b) = (1, 3, 2) and eta = second_hbar:

        R^hbar_ac R^eta_cb =
            R^eta_ab R^(hbar-eta)_ac + R^(eta-hbar)_cb R^hbar_ab,

    every factor taken at the difference of its site points.

    Raises
    ------
    DegenerateArguments
        If hbar - eta (or eta itself) sits on or near the pole set, where
        the right-hand side degenerates.
    """
    if len(points) != 3:
        raise DimensionMismatch(f"AYBE takes three points, got {len(points)}")
    hbar = _resolve_hbar(spec, hbar)
    eta = complex(second_hbar)
    if tolerance is None:
        tolerance = default_tolerance(spec.kind, spec.site_dim, 3)
    try:
        spec.validate_hbar(eta)
        spec.validate_hbar(hbar - eta)
    except (PoleProximity, ZeroArgument) as exc:
        raise DegenerateArguments(
            f"AYBE parameters degenerate: {exc}"
        ) from exc
    N = spec.site_dim
    za, zb, zc = (complex(p) for p in points)

    def emb(m, i, j):
        return embed_two_site(m, i, j, N, 3)

    r_ac_h = emb(r_matrix(spec, za - zc, hbar), 1, 3)
    r_cb_e = emb(r_matrix(spec, zc - zb, eta), 3, 2)
    r_ab_e = emb(r_matrix(spec, za - zb, eta), 1, 2)
    r_ac_he = emb(r_matrix(spec, za - zc, hbar - eta), 1, 3)
    r_cb_eh = emb(r_matrix(spec, zc - zb, eta - hbar), 3, 2)
    r_ab_h = emb(r_matrix(spec, za - zb, hbar), 1, 2)

    lhs = r_ac_h @ r_cb_e
    rhs = r_ab_e @ r_ac_he + r_cb_eh @ r_ab_h
    residual = frobenius_distance(lhs, rhs)
    return IdentityReport(
        name="aybe",
        passed=residual < tolerance,
        residual=residual,
        tolerance=tolerance,
        details={},
    )


def check_skew_symmetry(spec, z, hbar=None, tolerance=None):
    """Skew symmetry: R(z, hbar) = -P R(-z, -hbar) P."""
    hbar = _resolve_hbar(spec, hbar)
    if tolerance is None:
        tolerance = default_tolerance(spec.kind, spec.site_dim, 2)
    z = complex(z)
    perm = permutation_operator(spec.site_dim)
    lhs = r_matrix(spec, z, hbar)
    rhs = -perm @ r_matrix(spec, -z, -hbar) @ perm
    residual = frobenius_distance(lhs, rhs)
    return IdentityReport(
        name="skew-symmetry",
        passed=residual < tolerance,
        residual=residual,
        tolerance=tolerance,
        details={},
    )
