# Quantum versus classical probability density for a bouncing particle.
#
# The classical particle spends most of its time near the top of its flight,
# so its density 1/(2 sqrt(h (h - z))) diverges at the turning point h.  The
# quantum density |psi_n|**2 oscillates with n maxima below h and leaks a
# little above it.  Run this to print a coarse side-by-side table for n = 3
# and n = 10 and write the two overlay figures to ./demo_output/.

from pathlib import Path

import numpy as np

from qbouncer import bouncer as bc
from qbouncer import cli

out = Path("demo_output")
for n in (3, 10):
    state = bc.make_state(n)
    h = state.turning_point
    grid = bc.density_grid(h, 13)
    q = bc.quantum_density(state, grid).values
    c = bc.classical_density(h, grid).values
    print(f"n = {n}, turning point h = {h:.4f}")
    for z, a, b in zip(grid / h, q, c):
        print(f"  z/h = {z:5.3f}   quantum {a:8.5f}   classical {b:8.5f}")
    cli.main(["density", "--n", str(n), "--out-dir", str(out), "--reproducible"])

print(f"\nfigures written to {out.resolve()}")
print("both densities integrate to 1:",
      np.isclose(bc.moment_z_quantum(bc.make_state(10), 0), 1.0),
      np.isclose(bc.moment_z_classical(5.0, 0), 1.0))
