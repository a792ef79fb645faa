"""Tetrachiral cell: density, effective moduli and the Poisson transition.

The cell family is fixed by the pitch rule L_h = 1.6 d_a; all homogenized
quantities then depend on the wall thickness through dimensionless ratios
only. Sweeping the wall thickness from thin to thick walls shows

* the relative density rising from 0 toward ~0.98,
* the bending-dominated in-plane modulus E1 staying orders of magnitude
  below the out-of-plane modulus E2 = E_s * rho_rel,
* the in-plane Poisson's ratio starting strongly negative (auxetic) and
  crossing to positive values around one third relative density.
"""

import chiralplate as cp
from chiralplate.experiments import RHO_GRID

solid = cp.FORMLABS_CLEAR

print("d_a = 1 mm cell, walls sized to hit each target density")
print(f"{'rho':>6} {'t_sw mm':>8} {'E1 MPa':>9} {'E2 MPa':>9} "
      f"{'G2 MPa':>9} {'mu_qi':>8} {'mu_lu':>8}")
for rho in RHO_GRID:
    t = cp.wall_thickness_for_density(1.0, rho)
    g = cp.geometry_from_cell(1.0, t)
    try:
        mu_lu = f"{cp.poisson_lu(g):8.3f}"
    except cp.GeometryError:
        mu_lu = "     ---"  # walls too thick for the flexure model
    print(
        f"{rho:6.3f} {t:8.4f} {cp.effective_E1(g, solid.E):9.3f} "
        f"{cp.effective_E2(g, solid.E):9.1f} {cp.effective_G2(g, solid.G):9.2f} "
        f"{cp.poisson_qi(g):8.3f} {mu_lu}"
    )

print()
print("cell-size independence: identical ratios at every diameter")
for d_a in cp.DA_GRID:
    t = cp.wall_thickness_for_density(d_a, 0.353)
    g = cp.geometry_from_cell(d_a, t)
    print(
        f"d_a = {d_a:3.1f} mm: t_sw = {t:6.4f} mm, t_sw/d_a = {t / d_a:.6f}, "
        f"mu_qi = {cp.poisson_qi(g):+.4f}"
    )

print()
print("round trip: wall thickness from density and back")
t = cp.wall_thickness_for_density(1.6, 0.496)
g = cp.geometry_from_cell(1.6, t)
print(f"target 0.496 -> t_sw = {t:.6f} mm -> density {cp.relative_density(g):.12f}")
