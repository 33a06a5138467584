"""Choosing both the time slot and the guest list.

Run: python3 demos/06_time_slots.py
"""

from stable_invitations import GsipInstance
from stable_invitations.asip import MultiSlotInstance, solve_asip_multislot

lunch = GsipInstance.from_prefs(["1>0>2", "2>0>1"])
dinner = GsipInstance.from_prefs(["1>0>2", "1>0>2"])
slot, res = solve_asip_multislot(MultiSlotInstance.from_slots([lunch, dinner]))
print(f"best slot index {slot} ({['lunch', 'dinner'][slot]}) with guests {sorted(res.invitation)}")
