# Local averaging turns the oscillating quantum density into the classical one.
#
# The window half-width at height z is two local oscillation periods,
# 2 pi / sqrt(h - z), clipped to stay inside [0, 0.95 h].  The interior L1
# distance between the averaged quantum density and the classical density
# then falls steadily with n.

from qbouncer import bouncer as bc
from qbouncer import correspondence as cr

policy = cr.WindowPolicy()
print("window policy:", policy.describe())

state = bc.make_state(100)
h = state.turning_point
rho = bc.density_function(state)
for frac in (0.2, 0.5, 0.8):
    z = frac * h
    avg = cr.local_average(rho, z, policy.epsilon(h, z))
    classical = 0.5 / (h * (h - z)) ** 0.5
    print(f"n=100, z/h={frac}: raw {rho(z):.5f}, averaged {avg:.5f}, classical {classical:.5f}")

print()
for n in (3, 10, 20, 50, 100, 200):
    print(f"n = {n:4d}   interior L1 error = {cr.interior_l1_error(bc.make_state(n)):.4f}")
