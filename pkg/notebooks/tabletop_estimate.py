"""
Tabletop order-of-magnitude estimate
====================================

An electron spin in a 1 T field, switched on for about a nanosecond,
with the two branches 100 micrometres apart.  Every term is tiny; the
thermal amplitude damping dominates at room-scale temperatures.
"""

from spindeco import TabletopScenario, dimensionless_from_si, tabletop_report

scenario = TabletopScenario(magnetic_field=1.0, interaction_time=1.0, temperature=100.0, separation=100e-6)
print(dimensionless_from_si(scenario))

report = tabletop_report(scenario)
for key, value in report.to_dict().items():
    print(f"{key:22s} {value}")

for T in (10.0, 100.0, 1000.0):
    r = tabletop_report(TabletopScenario(temperature=T))
    print(f"T={T:6.0f} K  exact A^beta={r.a_loc_beta:.3e}  high-T form={r.a_loc_beta_high_t:.3e}")
