"""
Z_l-extensions as characters and neighborhood scans
===================================================

Inside a Z_2^2-extension, Z_2-extensions are primitive characters up to
units.  We look at Greenberg and log-Kleine neighborhoods of the cyclotomic
direction, then scan the invariants of Lambda_2/(T_1 - T_2) near (1,1).
"""

from importlib.resources import files

from logiwasawa import (
    ExtensionPoint,
    cyclotomic_isolation,
    greenberg_ball,
    invariant_map,
    kleine_neighborhood,
)
from logiwasawa.scenario import Scenario

data = files("logiwasawa") / "data"
cfg = Scenario.load(data / "isolation_demo.json").config
cyc = cfg.cyclotomic(4)

ball = greenberg_ball(cyc, 1).enumerate(4)
print(len(ball), "classes in the level-1 Greenberg ball")
print([p.label() for p in kleine_neighborhood(cyc, 1, cfg, logarithmic=True).enumerate(4)])
print("isolated at level", cyclotomic_isolation(cfg, 4))

sc = Scenario.load(data / "demo_scan.json").validate()
result = invariant_map(sc.presentations[0], ExtensionPoint(2, (1, 1), 4), 1, 3)
print(result.to_csv(), end="")
print(result.summary())
