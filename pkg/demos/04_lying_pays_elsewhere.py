"""Outside the threshold setting, a guest can gain by misreporting.

Run: python3 demos/04_lying_pays_elsewhere.py
"""

from stable_invitations import GsipInstance, find_manipulation, solve_asip

# The first guest prefers an intimate evening, the others a full house.
inst = GsipInstance.from_prefs(["1>2>3>0", "3>0>1~2", "3>0>1~2"])
print("truthful outcome:", sorted(solve_asip(inst).invitation))
m = find_manipulation(inst, "algorithm1", 0, "interval_reports")
print(f"guest 1 reports {m.misreport} instead and gets {sorted(m.outcome_deviant)}")

# Two guests who refuse each other; dropping the grudge flips the outcome.
rivals = GsipInstance.from_prefs(["1~2>0"] * 2, reject=[{1}, {0}])
m = find_manipulation(rivals, "gsip_solver", 1, "fr_sets")
print(f"guest 2 declares {m.misreport}: {sorted(m.outcome_truthful)} -> {sorted(m.outcome_deviant)}")
