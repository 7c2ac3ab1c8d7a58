"""Fit a Magic-Formula tire from curve features and inspect the result.

The longitudinal force curve is characterized by four features a tire
bench would report: the peak force, the large-slip asymptote, the slope
at zero slip and the slip ratio where the peak occurs.  The fit inverts
those into the B/C/D/E coefficients; evaluating the fitted curve should
hand the features back.
"""

import numpy as np

from mfcsim import fit_pacejka, pacejka_force

peak = 4000.0        # N
asymptote = 3500.0   # N
slope = 80000.0      # N per unit slip
peak_slip = 0.15

tire = fit_pacejka(peak, asymptote, slope, peak_slip)
print("fitted coefficients:")
print(f"  stiffness B = {tire.stiffness_factor:.4f}")
print(f"  shape     C = {tire.shape_factor:.4f}")
print(f"  peak      D = {tire.peak_force:.1f} N")
print(f"  curvature E = {tire.curvature_factor:.4f}")

# round trip: re-extract the features from the curve itself
taus = np.linspace(0.0, 1.0, 200001)
forces = np.array([pacejka_force(t, tire) for t in taus])
i = int(np.argmax(forces))
h = 1e-7
slope_num = (pacejka_force(h, tire) - pacejka_force(-h, tire)) / (2 * h)
print("\nround trip from the fitted curve:")
print(f"  peak force   {forces[i]:.2f} N   (target {peak})")
print(f"  peak slip    {taus[i]:.4f}      (target {peak_slip})")
print(f"  initial slope {slope_num:.1f} N (target {slope})")
print(f"  asymptote    {pacejka_force(1e9, tire):.2f} N (target {asymptote})")

# a few points along the curve, both directions
print("\nslip ->  force [N] (odd in the slip ratio):")
for tau in (-0.3, -0.15, -0.05, 0.05, 0.15, 0.3):
    print(f"  {tau:+.2f}  {pacejka_force(tau, tire):+9.1f}")
