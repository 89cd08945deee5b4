"""Walk through the polytope oracles: test a few graphs for t-perfection and
inspect the fractional witness that comes back on failure."""

from tperfect.corpus import make
from tperfect.polytopes import is_t_perfect, verify_witness

for name in ("C5", "fig1a", "K4", "W5"):
    g = make(name)
    ok, witness = is_t_perfect(g)
    print(f"{name}: t-perfect = {ok}")
    if not ok:
        point = ", ".join(str(x) for x in witness.point)
        print(f"  fractional vertex of the relaxation: ({point})")
        print(f"  tight inequalities: {len(witness.tight_tags)}")
        verify_witness(g, witness)
        print("  witness re-verified from scratch")
