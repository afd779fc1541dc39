#!/usr/bin/env python3
"""Hotter cavities kill entanglement sooner.

Thermal occupation mixes many photon-number branches with incommensurate
exchange frequencies, so even a small mean photon number shortens the life
of the pair entanglement and flattens the revivals.  The table tracks the
first dead window of the AB pair at a = pi/4 as the mean occupation grows.
"""
import numpy as np

from dtcm import BellType, FieldSpec, Model, Scenario, detect_esd, sweep_concurrence

tau = np.linspace(0.0, 25.0, 5001)
alpha = np.array([np.pi / 4])

print("one-excitation pair, two-pair layout, both cavities thermal")
print(f"{'mean n':>7} {'death':>7} {'revival':>8} {'peak after revival':>19}")
for nbar in (0.0, 0.1, 0.5, 1.0, 2.0):
    field = FieldSpec.vacuum() if nbar == 0.0 else FieldSpec.thermal(nbar)
    scenario = Scenario(Model.DTCM, BellType.PSI, field, field)
    curve = sweep_concurrence(scenario, "AB", alpha, tau)[0]
    events = detect_esd(curve)
    after = curve.values[curve.tau >= (events.revival_time or 0.0)]
    print(f"{nbar:7.1f} {events.death_time:7.3f} {events.revival_time:8.3f} {after.max():19.3f}")
