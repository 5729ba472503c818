"""How much probability sits above the classical turning point?

For the eigenstates of the bouncer the answer has a closed form,
P_n = [Ai'(0) / Ai'(a_n)]**2, because the tail integral of Ai**2 has an
elementary primitive.  We check it against direct quadrature and set it
beside decimals that circulate in the literature (0.25, 0.20, 0.016,
0.0077 for n = 1, 2, 10, 30).  Those decimals do not agree with the closed
form; the quadrature sides with the closed form, so the quoted numbers are
kept only as annotations.
"""

from qbouncer import bouncer as bc

print(f"{'n':>3} {'closed form':>12} {'quadrature':>12} {'|diff|':>9} {'quoted':>8}")
for n in (1, 2, 3, 10, 30, 100):
    tp = bc.tail_probability(bc.make_state(n))
    quoted = "" if tp.quoted_value is None else f"{tp.quoted_value:g}"
    print(f"{n:>3} {tp.closed_form:>12.6f} {tp.quadrature:>12.6f} "
          f"{abs(tp.closed_form - tp.quadrature):>9.1e} {quoted:>8}")

# The tail shrinks only like n**(-1/3): Ai'(a_n)**2 grows like |a_n|**(1/2).
