"""Finite groups given by Cayley tables, plus the built-in catalogue."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import FileFormatError, NoIdentity, NotAssociative, NotLatinSquare


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as an index Cayley table (identity at index 0)."""

    name: str
    order: int
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    abelian: bool

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes ordered identity first, then by smallest member index."""
        n = self.order
        seen = [False] * n
        classes = []
        for g in range(n):
            if seen[g]:
                continue
            orbit = sorted(
                {self.mul(self.mul(h, g), self.inverse[h]) for h in range(n)}
            )
            for x in orbit:
                seen[x] = True
            classes.append(tuple(orbit))
        classes.sort(key=lambda cl: (self.identity not in cl, cl[0]))
        return tuple(classes)

    def class_of(self) -> tuple[int, ...]:
        """Map element index -> conjugacy class index."""
        out = [0] * self.order
        for k, cl in enumerate(self.conjugacy_classes()):
            for g in cl:
                out[g] = k
        return tuple(out)


def from_cayley_table(table, name: str = "group") -> FiniteGroup:
    """Validate a square index table and wrap it as a group.

    Raises :class:`NotLatinSquare`, :class:`NoIdentity` or
    :class:`NotAssociative` naming the failed axiom.
    """
    tab = tuple(tuple(int(v) for v in row) for row in table)
    n = len(tab)
    if any(len(row) != n for row in tab):
        raise NotLatinSquare(f"{name}: table is not square")
    rng = set(range(n))
    for i, row in enumerate(tab):
        if set(row) != rng:
            raise NotLatinSquare(f"{name}: row {i} is not a permutation")
    for j in range(n):
        if {tab[i][j] for i in range(n)} != rng:
            raise NotLatinSquare(f"{name}: column {j} is not a permutation")
    identity = None
    for e in range(n):
        if all(tab[e][x] == x and tab[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity(f"{name}: no two-sided identity")
    for a in range(n):
        for b in range(n):
            ab = tab[a][b]
            for c in range(n):
                if tab[ab][c] != tab[a][tab[b][c]]:
                    raise NotAssociative(f"{name}: ({a}.{b}).{c} != {a}.({b}.{c})")
    inverse = [0] * n
    for a in range(n):
        inverse[a] = tab[a].index(identity)
        if tab[inverse[a]][a] != identity:
            raise NotAssociative(f"{name}: one-sided inverse at {a}")
    abelian = all(tab[a][b] == tab[b][a] for a in range(n) for b in range(n))
    return FiniteGroup(name, n, tab, identity, tuple(inverse), abelian)


def _from_permutations(perms, name: str) -> FiniteGroup:
    perms = list(perms)
    npts = len(perms[0])
    ident = tuple(range(npts))
    perms.sort()
    perms.remove(ident)
    perms.insert(0, ident)
    index = {p: i for i, p in enumerate(perms)}

    def compose(a, b):
        return tuple(a[b[i]] for i in range(npts))

    table = [[index[compose(a, b)] for b in perms] for a in perms]
    return from_cayley_table(table, name)


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return from_cayley_table(table, f"Z{n}")


@lru_cache(maxsize=None)
def klein() -> FiniteGroup:
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return from_cayley_table(table, "K4")


@lru_cache(maxsize=None)
def symmetric(n: int) -> FiniteGroup:
    return _from_permutations(permutations(range(n)), f"S{n}")


@lru_cache(maxsize=None)
def alternating(n: int) -> FiniteGroup:
    def parity(p):
        seen = [False] * len(p)
        par = 0
        for i in range(len(p)):
            if seen[i]:
                continue
            j, ln = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                ln += 1
            par ^= (ln - 1) & 1
        return par

    return _from_permutations(
        (p for p in permutations(range(n)) if parity(p) == 0), f"A{n}"
    )


@lru_cache(maxsize=None)
def dihedral4() -> FiniteGroup:
    """Symmetries of the square, as permutations of its corners."""
    r = (1, 2, 3, 0)
    s = (1, 0, 3, 2)

    def compose(a, b):
        return tuple(a[b[i]] for i in range(4))

    elems = {tuple(range(4))}
    frontier = [tuple(range(4))]
    while frontier:
        g = frontier.pop()
        for h in (r, s):
            for x in (compose(g, h), compose(h, g)):
                if x not in elems:
                    elems.add(x)
                    frontier.append(x)
    return _from_permutations(elems, "D4")


@lru_cache(maxsize=None)
def quaternion8() -> FiniteGroup:
    """Q8 = {1, -1, i, -i, j, -j, k, -k}."""
    # encode q = (sign, axis) with axis 0 -> 1, 1 -> i, 2 -> j, 3 -> k
    mul_axis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    index = {q: i for i, q in enumerate(elems)}

    def mul(a, b):
        s, ax = mul_axis[(a[1], b[1])]
        return (s * a[0] * b[0], ax)

    table = [[index[mul(a, b)] for b in elems] for a in elems]
    return from_cayley_table(table, "Q8")


_BUILTINS = {
    "s3": lambda: symmetric(3),
    "s4": lambda: symmetric(4),
    "a4": lambda: alternating(4),
    "d4": dihedral4,
    "q8": quaternion8,
    "klein": klein,
}


def get_group(name: str) -> FiniteGroup:
    """Look up a built-in group by name ('s3', 'd4', 'q8', 'a4', 'z<n>', ...)."""
    key = name.lower()
    if key in _BUILTINS:
        return _BUILTINS[key]()
    if key.startswith("z") and key[1:].isdigit():
        return cyclic(int(key[1:]))
    raise KeyError(f"unknown group {name!r}")


# -- group file format: "cayley <n>" header + n lines of n indices -------


def save_group(G: FiniteGroup, path: str) -> None:
    lines = [f"cayley {G.order}"]
    for row in G.cayley:
        lines.append(" ".join(str(v) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_group(path: str, name: str | None = None) -> FiniteGroup:
    with open(path) as fh:
        raw = [ln.strip() for ln in fh.read().splitlines()]
    raw = [ln for ln in raw if ln and not ln.startswith("#")]
    if not raw or not raw[0].startswith("cayley"):
        raise FileFormatError("missing 'cayley <n>' header", line=1)
    try:
        n = int(raw[0].split()[1])
    except (IndexError, ValueError):
        raise FileFormatError("bad 'cayley <n>' header", line=1) from None
    if len(raw) < n + 1:
        raise FileFormatError(f"expected {n} table lines")
    table = []
    for ln, line in enumerate(raw[1 : n + 1], start=2):
        try:
            row = [int(t) for t in line.split()]
        except ValueError:
            raise FileFormatError("table entries must be integers", line=ln) from None
        table.append(row)
    return from_cayley_table(table, name or "group")
