"""Guests who insist on certain friends and refuse certain rivals.

Run: python3 demos/02_friends_and_rivals.py
"""

from stable_invitations import GsipInstance, decide_stable_at_least_k, enumerate_stable, solve_gsip

# Two couples; each person needs their partner there and cannot stand one member of the other couple.
couples = GsipInstance.from_prefs(
    ["1~2~3~4>0"] * 4,
    accept=[{1}, {0}, {3}, {2}],
    reject=[{2}, {3}, {0}, {1}],
)
print("stable lists:", [sorted(s) for s in enumerate_stable(couples)])
res = solve_gsip(couples)
print(f"solver path {res.path!r} returns {sorted(res.invitation)} after {res.nodes} search nodes")
print("any stable list with at least 3 guests?", decide_stable_at_least_k(couples, 3))

# A triangle of grudges: nobody can be left out without envy, nobody can share a room.
triangle = GsipInstance.from_prefs(["1~2~3>0"] * 3, reject=[{1}, {2}, {0}])
res = solve_gsip(triangle)
print(f"triangle of grudges via {res.path!r}:", "no stable list" if not res.stable else res.invitation)
