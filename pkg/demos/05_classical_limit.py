"""The classical limit in coefficient space.

The leading term of the quantum coefficient is exactly the classical one,
so |numeric - closed| measures everything quantum.  Fitting it against
|a_n| at fixed Q recovers the |a_n|**-3 suppression of the first
correction layer.
"""

from qbouncer import bouncer as bc
from qbouncer import correspondence as cr

ns = [10, 20, 50, 100, 200]
a, dev = [], []
for n in ns:
    s = bc.make_state(n)
    q = 5.0 / s.turning_point
    a.append(abs(s.a_n))
    dev.append(abs(cr.quantum_coefficient_numeric(s, q).value - cr.quantum_coefficient_closed(s, q).value))
    print(f"n = {n:4d}  |a_n| = {a[-1]:8.3f}  deviation at Q = 5: {dev[-1]:.3e}")

print(f"\nfitted exponent: {cr.fit_power_law(a, dev):.4f}")
