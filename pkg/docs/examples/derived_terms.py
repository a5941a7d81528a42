"""Terms derived from exact-m-majority terms and checked on small algebras."""
from exactmaj.constructions import (
    build_group_sum_term,
    build_lattice_majority_term,
    check_gumm_identities,
    check_maltsev_identities,
    derive_gumm,
    derive_maltsev,
    derive_near_unanimity,
)
from exactmaj.identities import check_exact_majority, check_near_unanimity
from exactmaj.terms import format_term
from exactmaj.tools.gallery import get_algebra

# x1 + x2 + x3 + x4 is an exact-1-of-4 term of Z3, so Z3 has a Maltsev term
z3 = get_algebra("z_mod:3")
u, n = build_group_sum_term(h=1, q=3, k=1, m=1)
t = derive_maltsev(u, n, 1)
if __name__ == "__main__":
    print(f"u = {format_term(u)}: {check_exact_majority(z3, u, n, 1).status}")
    print(f"t = {format_term(t)}")
    for verdict in check_maltsev_identities(z3, t):
        print(f"  {verdict.label}: {verdict.status}")

# the lattice term for 4 of 6 collapses to a majority term
n5 = get_algebra("n5")
u46 = build_lattice_majority_term(6, 4)
v = derive_near_unanimity(u46, 6, 4)
if __name__ == "__main__":
    print(f"v = {format_term(v)}: {check_near_unanimity(n5, v, 3).status}")

# exact 3 of 5 gives directed Gumm terms
u35 = build_lattice_majority_term(5, 3)
system = derive_gumm(u35, 5, 3)
if __name__ == "__main__":
    for name, term in system.terms:
        print(f"{name} = {format_term(term)}")
    for verdict in check_gumm_identities(n5, system):
        print(f"  {verdict.label}: {verdict.status}")
