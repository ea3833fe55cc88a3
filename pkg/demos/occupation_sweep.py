"""Steady-state populations vs environment occupation.

Sweeps the thermal occupation over five decades for the asymmetric-rate
V system; at low occupation the populations sit at the zero-temperature
values 4/7, 3/7, 0 while at large occupation all levels equalize at 1/3.
"""

from lindgain.cli import fig3b_sweep

rows = fig3b_sweep(16)
print(f"{'n':>10} {'rho_gg':>10} {'rho_e1e1':>10} {'rho_e2e2':>10}")
for n, gg, e1, e2 in rows:
    print(f"{n:10.4g} {gg:10.6f} {e1:10.6f} {e2:10.6f}")

print()
print("low-n limit: 4/7 = {:.6f}, 3/7 = {:.6f}".format(4 / 7, 3 / 7))
print("high-n limit: 1/3 = {:.6f}".format(1 / 3))
