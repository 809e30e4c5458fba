"""Stock finite lattices.

The catalog covers every lattice with at most five elements up to
isomorphism (ten of them); the extended catalog adds a few mid-size
shapes that are cheap to check exhaustively.  build_fd3 constructs the
free distributive lattice on x, y, z without constants, as the 18
nonconstant monotone Boolean functions; build_a doubles its six
join-of-atoms / meet-of-coatoms elements one at a time.
"""

from __future__ import annotations

from .finlat import FiniteLattice, double, from_covers
from .terms import GeneratorSet


def chain(k: int) -> FiniteLattice:
    if k < 1:
        raise ValueError("chain needs at least one element")
    return from_covers(f"chain{k}", k, [(i, i + 1) for i in range(k - 1)])


def diamond() -> FiniteLattice:
    return from_covers("diamond", 4, [(0, 1), (0, 2), (1, 3), (2, 3)],
                       ["0", "a", "b", "1"])


def diamond_top() -> FiniteLattice:
    return from_covers("diamond_top", 5,
                       [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
                       ["0", "a", "b", "m", "1"])


def diamond_bot() -> FiniteLattice:
    return from_covers("diamond_bot", 5,
                       [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)],
                       ["0", "m", "a", "b", "1"])


def pentagon() -> FiniteLattice:
    """N5: 0 < a < 1 on one side, 0 < b < c < 1 on the other."""
    return from_covers("pentagon", 5,
                       [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)],
                       ["0", "a", "b", "c", "1"])


build_n5 = pentagon


def m3() -> FiniteLattice:
    return from_covers("m3", 5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
                       ["0", "a", "b", "c", "1"])


def cube() -> FiniteLattice:
    covers = []
    for i in range(8):
        for b in (1, 2, 4):
            if not i & b:
                covers.append((i, i | b))
    return from_covers("cube", 8, covers, [f"{i:03b}" for i in range(8)])


def hexagon() -> FiniteLattice:
    return from_covers("hexagon", 6,
                       [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)],
                       ["0", "a", "b", "c", "d", "1"])


def grid2x3() -> FiniteLattice:
    # product of a 2-chain and a 3-chain; element i*3+j is (i, j)
    covers = []
    for i in range(2):
        for j in range(3):
            if j < 2:
                covers.append((i * 3 + j, i * 3 + j + 1))
            if i < 1:
                covers.append((i * 3 + j, (i + 1) * 3 + j))
    return from_covers("grid2x3", 6, covers,
                       [f"{i}{j}" for i in range(2) for j in range(3)])


def _monotone_tables() -> list[int]:
    tables = []
    for t in range(1, 255):  # skip the two constants
        if all(not (t >> k) & 1 or (t >> (k | b)) & 1
               for k in range(8) for b in (1, 2, 4)):
            tables.append(t)
    return sorted(tables, key=lambda t: (t.bit_count(), t))


def _dnf_label(table: int) -> str:
    points = [k for k in range(8) if (table >> k) & 1]
    minimal = [k for k in points
               if not any(p != k and k | p == k for p in points)]
    prods = ["".join(n for n, b in zip("xyz", (4, 2, 1)) if k & b)
             for k in minimal]
    return "+".join(sorted(prods, key=lambda p: (len(p), p)))


def build_fd3() -> FiniteLattice:
    """Free distributive lattice on x, y, z (no constants): the eighteen
    nonconstant monotone Boolean functions, ordered pointwise.  Labels
    are minimal disjunctive normal forms and parse as terms."""
    tables = _monotone_tables()
    assert len(tables) == 18
    up = []
    for t in tables:
        row = 0
        for j, u in enumerate(tables):
            if not t & ~u:
                row |= 1 << j
        up.append(row)
    return FiniteLattice(up, [_dnf_label(t) for t in tables], "fd3")


def fd3_doubling_targets(L: FiniteLattice) -> list[int]:
    """Joins of two distinct atoms and meets of two distinct coatoms."""
    atoms = L.upper_covers(L.bottom)
    coatoms = L.lower_covers(L.top)
    out = set()
    for i, a in enumerate(atoms):
        for b in atoms[i + 1:]:
            out.add(L.joins[a][b])
        for c in coatoms[i + 1:]:
            out.add(L.meets[coatoms[i]][c])
    return sorted(out)


def build_a(order: list[str] | None = None) -> FiniteLattice:
    """The 24-element lattice from doubling fd3 at its six atom-join /
    coatom-meet elements, one singleton at a time.  The result does not
    depend on the doubling order; pass one (as labels) to check that."""
    L = build_fd3()
    if order is None:
        order = sorted(L.labels[i] for i in fd3_doubling_targets(L))
    for k, lbl in enumerate(order):
        last = k == len(order) - 1
        L = double(L, [L.index_of(lbl)], name="A" if last else f"fd3+{k + 1}")
    return L


def catalog() -> list[FiniteLattice]:
    """Every lattice with at most five elements, up to isomorphism."""
    return [chain(1), chain(2), chain(3), chain(4), chain(5),
            diamond(), diamond_top(), diamond_bot(), pentagon(), m3()]


def extended_catalog() -> list[FiniteLattice]:
    return catalog() + [cube(), hexagon(), grid2x3()]


def builtin_lattice(name: str) -> FiniteLattice:
    for L in extended_catalog():
        if L.name == name:
            return L
    if name == "n5":
        return pentagon()
    if name == "fd3":
        return build_fd3()
    if name == "A":
        return build_a()
    raise KeyError(f"no builtin lattice named {name!r}")


def pentagon_hom():
    """x, y, z onto the pentagon: x to c, y to b, z to a."""
    from .bhom import Hom

    L = pentagon()
    g = GeneratorSet(("x", "y", "z"))
    return Hom(g, L, {"x": L.index_of("c"), "y": L.index_of("b"),
                      "z": L.index_of("a")})


def doubled_hom():
    """x, y, z onto the 24-element doubled lattice, generator to generator."""
    from .bhom import Hom

    L = build_a()
    g = GeneratorSet(("x", "y", "z"))
    return Hom(g, L, {n: L.index_of(n) for n in g.names})
