"""Tables of search results and congruence properties for gallery algebras.

Searches on lattices grow quickly with n: chain:2 with (n, m) = (6, 2) works
in a power generating the free distributive lattice on six generators. A small
work budget turns such searches into OVERFLOW rows instead of long waits.
"""
import pandas as pd
from exactmaj.tools.gallery import get_algebra
from exactmaj.tools.survey import congruence_survey, majority_survey

pairs = [(3, 1), (3, 2), (4, 1), (5, 2), (5, 3), (6, 2)]
frames = []
for name in ["z_mod:2", "z_mod:3", "chain:2"]:
    frame = majority_survey(get_algebra(name), pairs, cap=100_000, max_work=10_000_000)
    frame.insert(0, "algebra", name)
    frames.append(frame)
results = pd.concat(frames, ignore_index=True)

congruences = congruence_survey(
    ["chain:3", "n5", "m3", "klein", "sym:3", "v35_chain_witness", "v35_group_witness"]
)

if __name__ == "__main__":
    print(results.pivot(index=["n", "m"], columns="algebra", values="status"))
    print()
    print(congruences)
