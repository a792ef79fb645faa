"""Constant-thickness sweep: face stresses fall as the core densifies.

Three-layer plates (0.5 mm faces, 1 mm homogenized core) are solved at a
30 N probe force for nine core densities. Denser cores carry more of the
load path, so the face-layer maxima decrease monotonically and the
critical load rises. Cell size does not enter: the homogenized card
depends on density ratios only, so every diameter gives the same face
stresses.

The same sweep with incompatible face elements shows the two formulations
agreeing well once the core is stiff enough; at the softest cores the
bending-enriched elements resolve more of the local peak next to the load.
"""

import chiralplate as cp

CLAMPED = cp.BoundaryCondition.CLAMPED

print("setup 1, clamped, d_a = 1 mm, F = 30 N")
print(f"{'rho':>6} {'t_cl mm':>8} {'s_core':>8} {'s_top':>8} "
      f"{'s_bottom':>9} {'F_crit N':>9} {'governing':>11}")
rows = cp.run_sweep(1, CLAMPED, "conforming", d_a_values=(1.0,))
for r in rows:
    print(
        f"{r.rho_rel:6.3f} {r.t_cl:8.3f} {r.sigma_core:8.3f} {r.sigma_top:8.3f} "
        f"{r.sigma_bottom:9.3f} {r.F_crit:9.2f} {r.governing:>11}"
    )
print("(core values are homogenized continuum stresses: they do not resolve")
print(" stress concentrations inside the cell walls)")

print()
print("conforming vs incompatible faces, top-face maxima")
inc = cp.run_sweep(1, CLAMPED, "incompatible_faces", d_a_values=(1.0,))
print(f"{'rho':>6} {'conforming':>11} {'incompatible':>13} {'gap':>7}")
for rc, ri in zip(rows, inc):
    gap = ri.sigma_top / rc.sigma_top - 1
    print(f"{rc.rho_rel:6.3f} {rc.sigma_top:11.3f} {ri.sigma_top:13.3f} {gap:+7.1%}")
