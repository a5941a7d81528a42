"""A search for an exact-m-majority term performed step by step.

find_exact_majority_term does all of this in one call, but doing it by hand
shows what happens: the equations become coordinates of a power of the
algebra, the variables become generator tuples and the demanded values
become a target tuple. A term exists iff the target lies in the generated
subpower.
"""
from exactmaj.identities import check_exact_majority
from exactmaj.subpower import CoordinateSet, Subpower, extract_witness
from exactmaj.terms import format_term
from exactmaj.tools.gallery import get_algebra

algebra = get_algebra("z_mod:2")
n, m = 5, 3

# Step 1: one coordinate per equation instance (J, a, b), duplicates merged
coordinates = CoordinateSet(algebra.size, n, m)
if __name__ == "__main__":
    print(f"{len(coordinates.instances)} equation instances, {len(coordinates)} coordinates")
    for j, generator in enumerate(coordinates.generators, start=1):
        print(f"g{j} = {tuple(int(v) for v in generator)}")
    print(f"target = {tuple(int(v) for v in coordinates.target)}")

# Step 2: close the generators under the operations, stop at the target
subpower = Subpower(algebra, coordinates.generators)
is_member = subpower.close(stop_at=coordinates.target)
if __name__ == "__main__":
    print(f"target found: {is_member} after {subpower.rounds} rounds, {len(subpower)} tuples")

# Step 3: the derivation of the target spells out the term
term = extract_witness(subpower.dag, coordinates.target)
if __name__ == "__main__":
    print(f"witness: {format_term(term)}")
    print(f"recheck: {check_exact_majority(algebra, term, n, m).status}")
