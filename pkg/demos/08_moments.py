"""Position and momentum moments against their classical values.

<z> = 2h/3 and <z**2> = 8h**2/15 hold exactly in every eigenstate, not only
as n grows.  Higher moments approach the classical Beta-function values.
Momentum is measured in units of m sqrt(g l_g), where p**2 = 2 (E - z).
"""

from qbouncer import bouncer as bc

for n in (1, 10, 100):
    s = bc.make_state(n)
    h = s.turning_point
    print(f"n = {n}")
    for k in (1, 2, 3, 4):
        qm, cl = bc.moment_z_quantum(s, k), bc.moment_z_classical(h, k)
        print(f"   <z^{k}>: quantum {qm:14.6f}   classical {cl:14.6f}   ratio {qm / cl:.6f}")
    p2 = bc.moment_p_even_quantum(s, 1)
    print(f"   <p^2>: quantum {p2:.6f}   classical 2h/3 = {2 * h / 3:.6f}")
