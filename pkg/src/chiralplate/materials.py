"""Elastic materials and their plane-strain constitutive matrices.

Unit system is fixed to mm / N / MPa throughout the library. Two material
models are supported: isotropic solids and transversely isotropic media
(used for the homogenized honeycomb core). For each, the module builds

* the full 3x3 plane-strain elasticity matrix ``chi`` ordered
  ``(eps_xx, eps_yy, eps_xy)``,
* its split into a normal-strain part ``chi_E`` and a shear part ``chi_G``
  (the two submatrices behind the analytic element stiffness), and
* the 2x2 stress-recovery matrix obtained by dropping the shear row and
  column, which is what the nodal stress recovery uses.

Von Mises equivalent-stress helpers for the plane (two principal stresses)
and triaxial (three principal stresses) cases round out the module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MaterialError

__all__ = [
    "IsotropicMaterial",
    "TransverselyIsotropicMaterial",
    "plane_strain_matrix",
    "plane_strain_submatrices",
    "ti_plane_strain_matrix",
    "ti_submatrices",
    "stress_recovery_matrix_iso",
    "stress_recovery_matrix_ti",
    "von_mises_plane",
    "von_mises_3d",
]


@dataclass(frozen=True)
class IsotropicMaterial:
    """Isotropic linear-elastic solid.

    Parameters
    ----------
    E : float
        Young's modulus [MPa]. Must be positive.
    mu : float
        Poisson's ratio. Must satisfy ``0 <= mu < 0.5``; the plane-strain
        matrix is singular at 0.5.
    rho : float, optional
        Density [kg/m^3]; informational only.
    sigma_el : float, optional
        Elastic-limit stress [MPa] used for critical-load scaling.
    """

    E: float
    mu: float
    rho: float = 0.0
    sigma_el: float | None = None

    def __post_init__(self):
        if not self.E > 0:
            raise MaterialError(f"Young's modulus must be positive, got E={self.E}")
        if not (0.0 <= self.mu < 0.5):
            raise MaterialError(
                f"Poisson's ratio must lie in [0, 0.5), got mu={self.mu}"
            )
        if self.sigma_el is not None and self.sigma_el <= 0:
            raise MaterialError(f"sigma_el must be positive, got {self.sigma_el}")

    @property
    def G(self) -> float:
        """Shear modulus E / (2 (1 + mu)) [MPa]."""
        return self.E / (2.0 * (1.0 + self.mu))


@dataclass(frozen=True)
class TransverselyIsotropicMaterial:
    """Transversely isotropic medium for the plane problem.

    ``E1``/``mu1`` describe the isotropy plane, ``E2``/``mu2``/``G2`` the
    response along and across the symmetry axis. Dimensionless ratios
    ``n1 = E1/E2`` and ``m1 = G2/E2`` enter the elasticity matrix.

    Parameters
    ----------
    E1 : float
        In-plane modulus [MPa], ``E1 >= 0``.
    mu1 : float
        In-plane Poisson's ratio.
    E2 : float
        Out-of-plane modulus [MPa], ``E2 > 0``.
    mu2 : float
        Out-of-plane Poisson's ratio.
    G2 : float
        Out-of-plane shear modulus [MPa], ``G2 > 0``.
    """

    E1: float
    mu1: float
    E2: float
    mu2: float
    G2: float

    def __post_init__(self):
        if self.E1 < 0:
            raise MaterialError(f"E1 must be non-negative, got {self.E1}")
        if not self.E2 > 0:
            raise MaterialError(f"E2 must be positive, got {self.E2}")
        if not self.G2 > 0:
            raise MaterialError(f"G2 must be positive, got {self.G2}")
        if self._denominator() <= 0:
            raise MaterialError(
                "elasticity matrix ill-posed: (1+mu1)(1-mu1-2*n1*mu2^2) = "
                f"{self._denominator():g} must be positive"
            )

    @property
    def n1(self) -> float:
        return self.E1 / self.E2

    @property
    def m1(self) -> float:
        return self.G2 / self.E2

    def _denominator(self) -> float:
        return (1.0 + self.mu1) * (1.0 - self.mu1 - 2.0 * self.n1 * self.mu2**2)


def plane_strain_matrix(mat: IsotropicMaterial) -> np.ndarray:
    """Full 3x3 plane-strain elasticity matrix of an isotropic solid.

    Rows and columns are ordered ``(eps_xx, eps_yy, eps_xy)``. The matrix is
    symmetric and positive definite for ``0 <= mu < 0.5``.
    """
    E, mu = mat.E, mat.mu
    c = E / ((1.0 + mu) * (1.0 - 2.0 * mu))
    return c * np.array(
        [
            [1.0 - mu, mu, 0.0],
            [mu, 1.0 - mu, 0.0],
            [0.0, 0.0, (1.0 - 2.0 * mu) / 2.0],
        ]
    )


def plane_strain_submatrices(mat: IsotropicMaterial) -> tuple[np.ndarray, np.ndarray]:
    """Split the isotropic plane-strain matrix into normal and shear parts.

    Returns ``(chi_E, chi_G)`` with ``chi_E + chi_G == plane_strain_matrix``:
    ``chi_E`` carries the normal-strain block with a zero shear row/column,
    ``chi_G`` carries the shear modulus G in the (2, 2) slot only.
    """
    chi = plane_strain_matrix(mat)
    chi_E = chi.copy()
    chi_E[2, 2] = 0.0
    chi_G = np.zeros((3, 3))
    chi_G[2, 2] = mat.G
    return chi_E, chi_G


def ti_plane_strain_matrix(mat: TransverselyIsotropicMaterial) -> np.ndarray:
    """3x3 plane-strain elasticity matrix of a transversely isotropic medium.

    The (2, 2) shear entry reduces to exactly ``G2``. Degenerates to the
    isotropic matrix when ``E1 = E2``, ``mu1 = mu2`` and ``G2 = E/(2(1+mu))``.
    """
    n1, mu1, mu2 = mat.n1, mat.mu1, mat.mu2
    c = mat.E2 / mat._denominator()
    return c * np.array(
        [
            [n1 * (1.0 - n1 * mu2**2), n1 * mu2 * (1.0 + mu1), 0.0],
            [n1 * mu2 * (1.0 + mu1), 1.0 - mu1**2, 0.0],
            [0.0, 0.0, mat.m1 * mat._denominator()],
        ]
    )


def ti_submatrices(
    mat: TransverselyIsotropicMaterial,
) -> tuple[np.ndarray, np.ndarray]:
    """Normal/shear split of the transversely isotropic matrix."""
    chi = ti_plane_strain_matrix(mat)
    chi_E = chi.copy()
    chi_E[2, 2] = 0.0
    chi_G = np.zeros((3, 3))
    chi_G[2, 2] = mat.G2
    return chi_E, chi_G


def stress_recovery_matrix_iso(mat: IsotropicMaterial) -> np.ndarray:
    """2x2 recovery matrix: the isotropic matrix with shear eliminated."""
    return plane_strain_matrix(mat)[:2, :2].copy()


def stress_recovery_matrix_ti(mat: TransverselyIsotropicMaterial) -> np.ndarray:
    """2x2 recovery matrix: the TI matrix with shear eliminated."""
    return ti_plane_strain_matrix(mat)[:2, :2].copy()


def von_mises_plane(s1: float, s2: float) -> float:
    """Equivalent stress from two principal stresses [MPa].

    ``sqrt(s1^2 + s2^2 - s1*s2)``; symmetric in its arguments and equal to
    ``|s|`` for equal-biaxial or uniaxial states.
    """
    return float(np.sqrt(s1 * s1 + s2 * s2 - s1 * s2))


def von_mises_3d(s1: float, s2: float, s3: float) -> float:
    """Equivalent stress from three principal stresses [MPa].

    Vanishes for hydrostatic states and is invariant under permutation of
    the arguments.
    """
    return float(
        np.sqrt(((s1 - s2) ** 2 + (s2 - s3) ** 2 + (s3 - s1) ** 2) / 2.0)
    )
