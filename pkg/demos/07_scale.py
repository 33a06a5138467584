"""Timing the anonymous solver on ten thousand agents, and the exact search on twenty.

Run: python3 demos/07_scale.py
"""

import time

from stable_invitations import GeneratorConfig, GsipInstance, generate_random_instance, solve_asip, solve_gsip
from stable_invitations.generate import random_rank_matrix

inst = GsipInstance(random_rank_matrix(10_000, "arbitrary_preorder", seed=1))
t = time.perf_counter()
res = solve_asip(inst)
print(f"n=10,000 anonymous: size {res.size if res.stable else 'none'} in {time.perf_counter() - t:.2f}s")

inst = generate_random_instance(GeneratorConfig(n=20, alpha_max=2, beta_max=2, seed=4, exact_bounds=True))
t = time.perf_counter()
res = solve_gsip(inst)
print(f"n=20 with (2,2) sets: path {res.path}, size {res.size if res.stable else 'none'}, "
      f"{res.nodes} nodes in {time.perf_counter() - t:.2f}s")
