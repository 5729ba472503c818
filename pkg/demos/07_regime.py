"""Which quantum numbers does a millimetre drop reach?"""

from qbouncer import bouncer as bc

for sp in bc.load_species().values():
    est = bc.regime_estimate(sp.l_g, 1e-3, sp.label)
    print(f"{sp.label:>8}: l_g = {sp.l_g * 1e6:.4f} um, n ~ {est.n_estimate:9.0f}, "
          f"1/|a_n|**3 ~ {est.suppression:.1e}")

# Even a neutron sits near n = 470, where the first quantum correction to the
# coefficients is already two parts in ten million.
