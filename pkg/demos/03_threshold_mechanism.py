"""Agents who like bigger events report a minimum head count.

The threshold mechanism gives nobody a reason to lie about it.

Run: python3 demos/03_threshold_mechanism.py
"""

import itertools

from stable_invitations import ThresholdProfile, run_inc_mechanism

profile = ThresholdProfile((2, 3, 3))
print("reported thresholds", profile.thresholds, "->", sorted(run_inc_mechanism(profile)))
print("raising one threshold to 4 ->", sorted(run_inc_mechanism(profile.replace(2, 4))))


def value(agent, threshold, invited):
    if agent not in invited:
        return 0
    return len(invited) if len(invited) >= threshold else -1


n = 3
gains = 0
for truth in itertools.product(range(1, n + 2), repeat=n):
    honest = run_inc_mechanism(truth)
    for agent, lie in itertools.product(range(n), range(1, n + 2)):
        lied = truth[:agent] + (lie,) + truth[agent + 1:]
        gains += value(agent, truth[agent], run_inc_mechanism(lied)) > value(agent, truth[agent], honest)
print(f"profitable lies among all {n}-agent profiles: {gains}")
