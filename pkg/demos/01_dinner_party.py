"""A host picks guests who only care about how many people show up.

Run: python3 demos/01_dinner_party.py
"""

from stable_invitations import GsipInstance, enumerate_stable, solve_asip

# Two friends who want a one-on-one chat, and a third who would rather stay home.
party = GsipInstance.from_prefs(["1>0>2~3", "1>0>2~3", "0>1~2~3"])
print("every stable guest list:", [sorted(s) for s in enumerate_stable(party)])
print("largest one picked by the greedy solver:", sorted(solve_asip(party).invitation))

# Now one guest only comes alone and the other only comes as a pair.
awkward = GsipInstance.from_prefs(["1>0>2", "2>0>1"])
res = solve_asip(awkward)
print("awkward pair:", "no stable list" if not res.stable else sorted(res.invitation))
print("sizes the solver tried:", res.sizes_tried)
