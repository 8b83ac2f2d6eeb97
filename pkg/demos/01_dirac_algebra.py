"""Clifford algebra of the Dirac operators and the energy-sphere identity.

Builds the canonical (alpha, beta) set, prints the anticommutation table,
assembles the block Hamiltonian for a chosen mass and momentum, and shows
that it squares to E^2 * 1 (so the dynamics live on a sphere of constant
Tr H^2).
"""
import numpy as np

from spinctl import (
    assemble_dirac,
    build_basis,
    dirac_operators,
    isotropic_energy,
    project_coefficients,
    verify_algebra,
)

np.set_printoptions(precision=4, suppress=True, linewidth=120)

ops = dirac_operators()
print("beta  = sigma_z (x) 1:")
print(ops.beta.real.astype(int))

print("\nAll 16 Clifford relations, max deviation per relation:")
for relation, dev in verify_algebra(ops).items():
    print(f"  {relation:24s} {dev:.1e}")

m, p = 1.0, np.array([0.0, 0.0, 1.0])
h = assemble_dirac(ops, m, p)
print(f"\nH = m*beta + p.alpha for m={m}, p={p}:")
print(h)

e2 = m ** 2 + p @ p
print(f"\nH^2 == E^2 * 1 with E^2 = {e2}:  max dev",
      np.max(np.abs(h @ h - e2 * np.eye(4))))
print("isotropic energy from the trace:", isotropic_energy(h))

basis = build_basis("su4")
coeffs = project_coefficients(h, basis)
print("\nnonzero generator coefficients of H:")
for label, c in zip(basis.labels, coeffs):
    if abs(c) > 1e-12:
        print(f"  {label}: {c:+.3f}")
