"""Four ways to the Fourier coefficient of an eigenstate density.

numeric      direct oscillatory quadrature of the density
albright1    moment series with the first correction layer (~ |a_n|**-3)
albright0    moment series with the leading moments only
closed_form  the leading series summed with the rotated error function

and a fifth, the coefficient of the classical density.  With
c(q) = (1/2pi) int rho exp(-i q z) dz and Q = q h_n, every route returns
1/(2pi) at Q = 0.
"""

import numpy as np

from qbouncer import bouncer as bc
from qbouncer import correspondence as cr

state = bc.make_state(10)
h = state.turning_point
print(f"n = 10, a_n = {state.a_n:.6f}, |a_n|**-3 = {abs(state.a_n) ** -3:.2e}\n")
print(f"{'Q':>5} {'|num-alb1|':>11} {'|num-closed|':>13} {'|alb0-closed|':>14} {'|closed-classical|':>19}")
for Q in np.linspace(0.0, 30.0, 7):
    q = Q / h
    num = cr.quantum_coefficient_numeric(state, q).value
    a1 = cr.quantum_coefficient_albright(state, q, 1).value
    a0 = cr.quantum_coefficient_albright(state, q, 0).value
    closed = cr.quantum_coefficient_closed(state, q).value
    cl = cr.classical_coefficient(h, q).value
    print(f"{Q:5.1f} {abs(num - a1):11.2e} {abs(num - closed):13.2e} {abs(a0 - closed):14.2e} {abs(closed - cl):19.2e}")

# Reading the columns: the leading series and its closed form agree to
# rounding, the closed form and the classical coefficient agree to rounding,
# and the true quantum coefficient differs from them by the correction layer.
