"""Brute-force check that no mechanism is both truthful and always stable.

Every table from action profiles to guest lists is enumerated.

Run: python3 demos/05_no_fair_mechanism.py
"""

from stable_invitations import verify_no_sp_stable_mechanism

for case in ("theorem2_asip", "lemma_gsip", "single_agent"):
    rep = verify_no_sp_stable_mechanism(case)
    print(f"{case:14s} {rep.tables_enumerated:>8,} tables  {rep.sp_tables:>3} truthful  "
          f"{rep.stable_finding_tables:>2} stable-finding  both: {rep.intersection}")
