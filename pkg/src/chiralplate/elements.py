"""Rectangular 4-node plane-strain elements with analytic stiffness.

Local corner numbering follows the sign pattern

    q:      1        2        3        4
    (xi_q, eta_q): (-1,-1)  (1,-1)   (1,1)   (-1,1)

with dimensionless coordinates ``xi = 2(x - x_c)/a_fe`` and
``eta = 2(y - y_c)/b_fe``. Degrees of freedom are node-major:
``(v1x, v1y, v2x, v2y, v3x, v3y, v4x, v4y)``.

Two element families are implemented, both with closed-form 8x8 stiffness
assembled from 2x2 blocks indexed by the corner signs:

* the conforming element with bilinear shape functions, for isotropic and
  transversely isotropic materials;
* the incompatible element, whose displacement field adds quadratic modes
  tied to the opposite-axis nodal displacements. The additions cancel the
  varying part of the shear strain, which is what softens the element in
  bending. Only the isotropic form exists.

``quadrature_stiffness`` integrates ``beta^T chi beta`` with Gauss-Legendre
rules directly from the shape functions and serves as the independent
oracle for every closed form (the integrands are quadratic per direction,
so order 2 is already exact; higher orders must agree identically).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, MaterialError
from .materials import (
    IsotropicMaterial,
    TransverselyIsotropicMaterial,
    plane_strain_matrix,
    ti_plane_strain_matrix,
)

__all__ = [
    "XI_CORNERS",
    "ETA_CORNERS",
    "ElementGeometry",
    "conforming_stiffness_iso",
    "conforming_stiffness_ti",
    "incompatible_stiffness_iso",
    "incompatible_stiffness_iso_layered",
    "strain_displacement",
    "strain_displacement_full",
    "quadrature_stiffness",
]

XI_CORNERS = (-1.0, 1.0, 1.0, -1.0)
ETA_CORNERS = (-1.0, -1.0, 1.0, 1.0)


@dataclass(frozen=True)
class ElementGeometry:
    """Axis-aligned rectangle: side lengths and out-of-plane depth [mm]."""

    a_fe: float
    b_fe: float
    h: float

    def __post_init__(self):
        if min(self.a_fe, self.b_fe, self.h) <= 0:
            raise GeometryError(
                f"element dimensions must be positive, got "
                f"a_fe={self.a_fe}, b_fe={self.b_fe}, h={self.h}"
            )

    @property
    def gamma(self) -> float:
        """Aspect ratio b_fe / a_fe."""
        return self.b_fe / self.a_fe


def _blocks_to_matrix(block) -> np.ndarray:
    k = np.empty((8, 8))
    for r in range(4):
        for s in range(4):
            k[2 * r : 2 * r + 2, 2 * s : 2 * s + 2] = block(r, s)
    return k


def conforming_stiffness_iso(
    g: ElementGeometry, mat: IsotropicMaterial
) -> np.ndarray:
    """Closed-form stiffness of the conforming element, isotropic material.

    Sum of the normal-strain and shear blocks; symmetric, positive
    semidefinite with exactly the three rigid-body zero modes.
    """
    return conforming_stiffness_ti(
        g,
        TransverselyIsotropicMaterial(
            E1=mat.E, mu1=mat.mu, E2=mat.E, mu2=mat.mu, G2=mat.G
        ),
    )


def conforming_stiffness_ti(
    g: ElementGeometry, mat: TransverselyIsotropicMaterial
) -> np.ndarray:
    """Closed-form stiffness of the conforming element, TI material.

    Reduces to the isotropic form under isotropic degeneration of the
    material card.
    """
    gam, h = g.gamma, g.h
    n1, mu1, mu2, G2 = mat.n1, mat.mu1, mat.mu2, mat.G2
    cE = mat.E2 * h / (4.0 * (1.0 + mu1) * (1.0 - mu1 - 2.0 * n1 * mu2**2))
    cG = G2 * h / 4.0
    a11 = n1 - n1**2 * mu2**2
    a12 = n1 * mu2 * (1.0 + mu1)
    a22 = 1.0 - mu1**2

    def block(r, s):
        xr, xs = XI_CORNERS[r], XI_CORNERS[s]
        er, es = ETA_CORNERS[r], ETA_CORNERS[s]
        kE = cE * np.array(
            [
                [a11 * gam * xr * xs * (1.0 + er * es / 3.0), a12 * xr * es],
                [a12 * er * xs, a22 * (er * es / gam) * (1.0 + xr * xs / 3.0)],
            ]
        )
        kG = cG * np.array(
            [
                [(er * es / gam) * (1.0 + xr * xs / 3.0), er * xs],
                [xr * es, gam * xr * xs * (1.0 + er * es / 3.0)],
            ]
        )
        return kE + kG

    return _blocks_to_matrix(block)


def incompatible_stiffness_iso(
    g: ElementGeometry, mat: IsotropicMaterial
) -> np.ndarray:
    """Closed-form stiffness of the incompatible element.

    The shear block loses the 1/3 correction terms of the conforming
    element (the added modes make the shear strain constant), and the
    normal block's bracket becomes ``1 - mu + (1 - mu - mu^2 - mu^3)/3``
    on the diagonal coupling.
    """
    gam, h = g.gamma, g.h
    E, mu, G = mat.E, mat.mu, mat.G
    cE = E * h / (4.0 * (1.0 + mu) * (1.0 - 2.0 * mu))
    cG = G * h / 4.0
    br = (1.0 - mu - mu**2 - mu**3) / 3.0

    def block(r, s):
        xr, xs = XI_CORNERS[r], XI_CORNERS[s]
        er, es = ETA_CORNERS[r], ETA_CORNERS[s]
        kE = cE * np.array(
            [
                [gam * xr * xs * (1.0 - mu + br * er * es), mu * xr * es],
                [mu * er * xs, (er * es / gam) * (1.0 - mu + br * xr * xs)],
            ]
        )
        kG = cG * np.array(
            [
                [er * es / gam, er * xs],
                [xr * es, gam * xr * xs],
            ]
        )
        return kE + kG

    return _blocks_to_matrix(block)


# The layered formulas parameterize gamma, E and mu by the layer index but
# are otherwise identical to the single-layer incompatible element.
incompatible_stiffness_iso_layered = incompatible_stiffness_iso


def strain_displacement(
    kind: str, g: ElementGeometry, xi: float, eta: float, mu: float = 0.0
) -> np.ndarray:
    """2x8 normal-strain/displacement matrix at a local point.

    Rows give ``(eps_xx, eps_yy)``; this is the matrix the nodal stress
    recovery applies together with the 2x2 recovery matrix. ``kind`` is
    ``"conforming"`` or ``"incompatible"``; the incompatible rows add the
    coupling terms, which carry a factor ``mu`` and vanish for ``mu = 0``.
    """
    if not (-1.0 <= xi <= 1.0 and -1.0 <= eta <= 1.0):
        raise GeometryError(f"local point ({xi}, {eta}) outside [-1, 1]^2")
    B = np.zeros((2, 8))
    a_fe, b_fe = g.a_fe, g.b_fe
    for q in range(4):
        xq, eq = XI_CORNERS[q], ETA_CORNERS[q]
        b_a = xq * (1.0 + eq * eta) / a_fe
        a_a = eq * (1.0 + xq * xi) / b_fe
        B[0, 2 * q] = b_a / 2.0
        B[1, 2 * q + 1] = a_a / 2.0
        if kind == "incompatible":
            c_a = -mu * xq * eq * xi / b_fe
            e_a = -mu * xq * eq * eta / a_fe
            B[0, 2 * q + 1] = c_a / 2.0
            B[1, 2 * q] = e_a / 2.0
        elif kind != "conforming":
            raise MaterialError(f"unknown element kind {kind!r}")
    return B


def strain_displacement_full(
    kind: str, g: ElementGeometry, xi: float, eta: float, mu: float = 0.0
) -> np.ndarray:
    """3x8 strain/displacement matrix including the shear row.

    Used by the quadrature oracle and the diagnostic recovery. For the
    incompatible element the added modes cancel the bilinear variation of
    the shear strain, leaving a constant shear row.
    """
    B = np.zeros((3, 8))
    B[:2] = strain_displacement(kind, g, xi, eta, mu)
    a_fe, b_fe = g.a_fe, g.b_fe
    for q in range(4):
        xq, eq = XI_CORNERS[q], ETA_CORNERS[q]
        if kind == "incompatible":
            B[2, 2 * q] = eq / (2.0 * b_fe)
            B[2, 2 * q + 1] = xq / (2.0 * a_fe)
        else:
            B[2, 2 * q] = eq * (1.0 + xq * xi) / (2.0 * b_fe)
            B[2, 2 * q + 1] = xq * (1.0 + eq * eta) / (2.0 * a_fe)
    return B


def quadrature_stiffness(
    kind: str,
    g: ElementGeometry,
    chi_full: np.ndarray,
    order: int = 2,
    mu: float = 0.0,
) -> np.ndarray:
    """Gauss-Legendre integration of ``beta^T chi beta`` over the element.

    Independent oracle for the closed-form stiffness matrices; order 2 is
    exact for the conforming element and order >= 2 for the incompatible
    one, so results are order-independent above the exactness threshold.
    """
    if order < 2:
        raise GeometryError(f"quadrature order must be >= 2, got {order}")
    pts, wts = np.polynomial.legendre.leggauss(order)
    k = np.zeros((8, 8))
    for xi, wx in zip(pts, wts):
        for eta, wy in zip(pts, wts):
            B = strain_displacement_full(kind, g, xi, eta, mu)
            k += wx * wy * (B.T @ chi_full @ B)
    return k * (g.a_fe * g.b_fe * g.h / 4.0)


def element_stiffness(
    kind: str,
    g: ElementGeometry,
    mat: IsotropicMaterial | TransverselyIsotropicMaterial,
) -> np.ndarray:
    """Dispatch to the right closed form for a (kind, material) pair."""
    if isinstance(mat, TransverselyIsotropicMaterial):
        if kind != "conforming":
            raise MaterialError(
                "incompatible elements are defined for isotropic layers only"
            )
        return conforming_stiffness_ti(g, mat)
    if kind == "conforming":
        return conforming_stiffness_iso(g, mat)
    if kind == "incompatible":
        return incompatible_stiffness_iso(g, mat)
    raise MaterialError(f"unknown element kind {kind!r}")


def full_elasticity_matrix(
    mat: IsotropicMaterial | TransverselyIsotropicMaterial,
) -> np.ndarray:
    """Full 3x3 elasticity matrix for either material model."""
    if isinstance(mat, TransverselyIsotropicMaterial):
        return ti_plane_strain_matrix(mat)
    return plane_strain_matrix(mat)
