"""Constructors for hypergroup tables: groups, families, fusion rules, products.

The example classes realized here:

* ``conjugacy_hypergroup(G)`` — conjugacy classes of a finite group, Haar
  weight lam(C) = |C|;
* ``irr_hypergroup(G)`` — classes of irreducible representations with
  lam(pi) = d_pi^2, built from the spectral engine run on Conj(G);
* ``su2_fusion`` / ``suq2_fusion`` — truncated fusion hypergroups of SU(2)
  and SU_q(2) (labels are the classical dimensions, q-integers weight the
  quantum case);
* ``tree_radial(q)`` — radial walk on the (q+1)-regular tree, generated from
  the degree-one recurrence by associativity; the canonical family failing
  (P2) at desk scale;
* ``chebyshev`` — alias of ``su2_fusion`` (the tables coincide).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import DEFAULT_SEED, HypergroupTable, NNTail
from .errors import NonIntegerDimension
from .groups import FiniteGroup, cyclic, from_cayley_table

PRODUCT_SIZE_CAP = 10_000


def q_integer(k: int, q):
    """[k]_q = (q^k - q^{-k}) / (q - q^{-1}); [k]_1 = k."""
    if k < 0:
        raise ValueError("q-integer needs k >= 0")
    if q == 1:
        return Fraction(k)
    if isinstance(q, Fraction) or isinstance(q, int):
        q = Fraction(q)
        return (q**k - q**-k) / (q - q**-1)
    q = float(q)
    return (q**k - q**-k) / (q - 1.0 / q)


# -- group-derived tables -------------------------------------------------


def group_hypergroup(G: FiniteGroup) -> HypergroupTable:
    """A group is a hypergroup with point products c^z_{x,y} = delta_{z,xy}."""
    rows = {
        (x, y): [(G.mul(x, y), Fraction(1))]
        for x in range(G.order)
        for y in range(G.order)
    }
    return HypergroupTable(
        f"{G.name}_group",
        G.order,
        G.inverse,
        rows,
        identity=G.identity,
        haar=[Fraction(1)] * G.order,
        commutative=G.abelian,
        elements=tuple(f"g{i}" for i in range(G.order)),
    )


def conjugacy_hypergroup(G: FiniteGroup) -> HypergroupTable:
    """Conj(G) with c^{Ck}_{Ci,Cj} from brute force over the Cayley table."""
    classes = G.conjugacy_classes()
    cls_of = G.class_of()
    k = len(classes)
    rows = {}
    for i in range(k):
        for j in range(i, k):
            counts = [0] * k
            for a in classes[i]:
                for b in classes[j]:
                    counts[cls_of[G.mul(a, b)]] += 1
            denom = len(classes[i]) * len(classes[j])
            rows[(i, j)] = [
                (t, Fraction(c, denom)) for t, c in enumerate(counts) if c
            ]
    inv_class = tuple(cls_of[G.inverse[cl[0]]] for cl in classes)
    return HypergroupTable(
        f"Conj({G.name})",
        k,
        inv_class,
        rows,
        haar=[Fraction(len(cl)) for cl in classes],
        elements=tuple(f"C{i}" for i in range(k)),
    )


@dataclass(frozen=True)
class GroupCharacterData:
    """Unnormalized character table of G recovered from the spectral engine.

    ``chars[a][j]`` is chi_a evaluated on class j, ``dims[a]`` the degree,
    ``mult[a][b][g]`` the tensor multiplicity N^g_{ab}, ``conjugate[a]`` the
    index of the contragredient class.
    """

    group: FiniteGroup
    class_sizes: tuple[int, ...]
    dims: tuple[int, ...]
    chars: tuple[tuple[complex, ...], ...]
    mult: tuple[tuple[tuple[int, ...], ...], ...]
    conjugate: tuple[int, ...]


def group_character_data(
    G: FiniteGroup, tol: float = 1e-6, seed: int = DEFAULT_SEED
) -> GroupCharacterData:
    """Character table of G via class-sum joint diagonalization of Conj(G).

    Dimensions are recovered from d = sqrt(|G| / sum_C |C| |chi(C)/d|^2) and
    rounded; a deviation beyond ``tol`` signals a spectral failure and raises
    :class:`NonIntegerDimension`.  Multiplicities are inner products of
    characters, rounded under the same guard.
    """
    from . import spectral  # deferred: spectral depends on core only

    table = conjugacy_hypergroup(G)
    ct = spectral.characters(table, seed=seed)
    sizes = tuple(len(cl) for cl in G.conjugacy_classes())
    order = G.order
    nclasses = len(sizes)

    dims = []
    for row in ct.chars:
        s = sum(sz * abs(v) ** 2 for sz, v in zip(sizes, row))
        d = math.sqrt(order / s)
        if abs(d - round(d)) > tol:
            raise NonIntegerDimension(
                f"{G.name}: recovered dimension {d} is not an integer"
            )
        dims.append(int(round(d)))
    chars = tuple(
        tuple(dims[a] * complex(v) for v in ct.chars[a]) for a in range(nclasses)
    )

    conjugate = []
    for a in range(nclasses):
        target = tuple(v.conjugate() for v in chars[a])
        match = min(
            range(nclasses),
            key=lambda b: max(abs(chars[b][j] - target[j]) for j in range(nclasses)),
        )
        if max(abs(chars[match][j] - target[j]) for j in range(nclasses)) > 1e-6:
            raise NonIntegerDimension(f"{G.name}: no conjugate partner for chi_{a}")
        conjugate.append(match)

    mult = []
    for a in range(nclasses):
        rows_a = []
        for b in range(nclasses):
            entries = []
            for g in range(nclasses):
                val = (
                    sum(
                        sizes[j] * chars[a][j] * chars[b][j] * chars[g][j].conjugate()
                        for j in range(nclasses)
                    )
                    / order
                )
                n = round(val.real)
                if abs(val - n) > tol:
                    raise NonIntegerDimension(
                        f"{G.name}: multiplicity <chi_{a} chi_{b}, chi_{g}> = {val}"
                    )
                entries.append(int(n))
            rows_a.append(tuple(entries))
        mult.append(tuple(rows_a))

    return GroupCharacterData(G, sizes, tuple(dims), chars, tuple(mult), tuple(conjugate))


def irr_hypergroup(G: FiniteGroup, seed: int = DEFAULT_SEED) -> HypergroupTable:
    """Irr(G) with alpha.beta = sum_gamma (d_gamma / d_alpha d_beta) N^gamma gamma.

    Emitted in exact rational mode from the integer dimensions and
    multiplicities; Haar weight lam(pi) = d_pi^2.
    """
    data = group_character_data(G, seed=seed)
    n = len(data.dims)
    rows = {}
    for a in range(n):
        for b in range(a, n):
            entries = []
            for g in range(n):
                N = data.mult[a][b][g]
                if N:
                    entries.append(
                        (g, Fraction(data.dims[g] * N, data.dims[a] * data.dims[b]))
                    )
            if sum(v for _, v in entries) != 1:
                raise NonIntegerDimension(
                    f"{G.name}: fusion row ({a},{b}) does not sum to 1"
                )
            rows[(a, b)] = entries
    return HypergroupTable(
        f"Irr({G.name})",
        n,
        data.conjugate,
        rows,
        haar=[Fraction(d * d) for d in data.dims],
        elements=tuple(f"pi{a}d{d}" for a, d in enumerate(data.dims)),
    )


# -- products -------------------------------------------------------------


def product(
    H1: HypergroupTable, H2: HypergroupTable, max_size: int = PRODUCT_SIZE_CAP
) -> HypergroupTable:
    """Product table: c^{(z,w)}_{(x,u),(y,v)} = c^z_{x,y} c^w_{u,v}.

    Pairs are indexed row-major, (x, u) -> x * |H2| + u.  Haar weights
    multiply and the involution acts componentwise.
    """
    if H1.truncated or H2.truncated:
        raise ValueError("product of truncated tables is not supported")
    n1, n2 = H1.size, H2.size
    if n1 * n2 > max_size:
        raise ValueError(f"product size {n1 * n2} exceeds cap {max_size}")
    commutative = H1.commutative and H2.commutative

    def pair(x, u):
        return x * n2 + u

    rows = {}
    for x in range(n1):
        for y in range(n1):
            row1 = H1.row(x, y)
            for u in range(n2):
                for v in range(n2):
                    rows[(pair(x, u), pair(y, v))] = [
                        (pair(z, w), c1 * c2)
                        for z, c1 in row1
                        for w, c2 in H2.row(u, v)
                    ]
    involution = [
        pair(H1.involution[x], H2.involution[u]) for x in range(n1) for u in range(n2)
    ]
    haar = [H1.haar[x] * H2.haar[u] for x in range(n1) for u in range(n2)]
    return HypergroupTable(
        f"{H1.name}x{H2.name}",
        n1 * n2,
        involution,
        rows,
        identity=pair(H1.identity, H2.identity),
        haar=haar,
        commutative=commutative,
        elements=tuple(
            f"{a}|{b}" for a in H1.elements for b in H2.elements
        ),
    )


# -- truncated families ----------------------------------------------------


def su2_fusion(radius: int, q=1) -> HypergroupTable:
    """Fusion hypergroup of SU(2) (q = 1) or SU_q(2) quantum dimensions.

    Labels are the dimensions 1..radius; delta_a . delta_b is supported on
    |a-b|+1, |a-b|+3, ..., a+b-1 with mass [c]_q / ([a]_q [b]_q).
    """
    if radius < 2:
        raise ValueError("fusion section needs radius >= 2")
    if isinstance(q, float):
        if not 0 < q <= 1:
            raise ValueError("q must lie in (0, 1]")
    else:
        q = Fraction(q)
        if not 0 < q <= 1:
            raise ValueError("q must lie in (0, 1]")
    R = radius
    qi = [q_integer(k, q) for k in range(R + 2)]
    rows = {}
    for a in range(1, R + 1):
        for b in range(a, R + 1):
            if a + b - 1 > R:
                continue
            rows[(a - 1, b - 1)] = [
                (c - 1, qi[c] / (qi[a] * qi[b]))
                for c in range(b - a + 1, a + b, 2)
            ]
    haar = [qi[a] * qi[a] for a in range(1, R + 1)]
    # tail: row of the generator (label 2) at label b has mass
    # [b-1]/([2][b]) below and [b+1]/([2][b]) above; the lower mass
    # increases to q^2/(1+q^2) and the upper decreases, so sups over
    # labels b >= R are the limit resp. the boundary value.
    qf = float(q)
    alpha_sup = qf * qf / (1.0 + qf * qf) if qf < 1 else 0.5
    beta_sup = float(q_integer(R + 1, q)) / float(q_integer(2, q) * q_integer(R, q))
    name = f"suq2_fusion_q{q}_R{R}" if q != 1 else f"su2_fusion_R{R}"
    return HypergroupTable(
        name,
        R,
        list(range(R)),
        rows,
        haar=haar,
        truncated=True,
        radius=R,
        tail=NNTail(alpha_sup, 0.0, beta_sup, start=R - 1, exact=False),
        generator=1,
        elements=tuple(str(a) for a in range(1, R + 1)),
    )


def tree_radial(q: int, radius: int) -> HypergroupTable:
    """Radial hypergroup of the (q+1)-regular tree, section of radius R.

    delta_1 . delta_n = (1/(q+1)) delta_{n-1} + (q/(q+1)) delta_{n+1}; all
    higher products are generated from this recurrence by associativity,
    exactly in rational arithmetic.  Haar weights are lam(0) = 1,
    lam(n) = (q+1) q^{n-1}.
    """
    if not (isinstance(q, int) and q >= 2):
        raise ValueError("tree_radial needs an integer branching q >= 2")
    if radius < 2:
        raise ValueError("tree_radial needs radius >= 2")
    R = radius
    lo, hi = Fraction(1, q + 1), Fraction(q, q + 1)
    rows: dict[tuple[int, int], dict[int, Fraction]] = {}
    for n in range(R + 1):
        rows[(0, n)] = {n: Fraction(1)}
    for n in range(1, R):
        rows[(1, n)] = {n - 1: lo, n + 1: hi}

    def vec_convolve_gen(v: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for z, c in v.items():
            gen_row = rows[(1, z)].items() if z >= 1 else [(1, Fraction(1))]
            for w, c2 in gen_row:
                out[w] = out.get(w, Fraction(0)) + c * c2
        return out

    for m in range(1, R):
        for n in range(m + 1, R - m):
            # delta_{m+1}.delta_n = (delta_1.(delta_m.delta_n)
            #                        - lo * delta_{m-1}.delta_n) / hi
            lifted = vec_convolve_gen(rows[(m, n)])
            prev = rows[(m - 1, n)]
            out = {
                z: (lifted.get(z, Fraction(0)) - lo * prev.get(z, Fraction(0))) / hi
                for z in set(lifted) | set(prev)
            }
            rows[(m + 1, n)] = {z: c for z, c in out.items() if c}

    haar = [Fraction(1)] + [Fraction((q + 1) * q ** (n - 1)) for n in range(1, R + 1)]
    return HypergroupTable(
        f"tree_radial_q{q}_R{R}",
        R + 1,
        list(range(R + 1)),
        {k: list(v.items()) for k, v in rows.items()},
        haar=haar,
        truncated=True,
        radius=R,
        tail=NNTail(float(lo), 0.0, float(hi), start=1, exact=True),
        generator=1,
        elements=tuple(str(n) for n in range(R + 1)),
    )


# -- family dispatch --------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """Recipe for a built-in table.

    name in {cyclic, group_from_cayley, conj, irr, su2_fusion, suq2_fusion,
    tree_radial, chebyshev}; ``n`` for cyclic, ``q`` for the deformed
    families, ``radius`` for the truncated ones, ``group`` (a FiniteGroup or
    built-in name) for conj/irr, ``cayley`` for group_from_cayley.
    """

    name: str
    n: int | None = None
    q: object | None = None
    radius: int | None = None
    group: object | None = None
    cayley: object | None = None


def _resolve_group(spec: FamilySpec) -> FiniteGroup:
    from .groups import get_group

    if isinstance(spec.group, FiniteGroup):
        return spec.group
    if isinstance(spec.group, str):
        return get_group(spec.group)
    raise ValueError(f"family {spec.name!r} needs a group")


def family(spec: FamilySpec) -> HypergroupTable:
    """Instantiate a built-in family from its spec."""
    name = spec.name.lower()
    if name == "cyclic":
        if not spec.n or spec.n < 1:
            raise ValueError("cyclic needs n >= 1")
        return group_hypergroup(cyclic(spec.n))
    if name == "group_from_cayley":
        if spec.cayley is None:
            raise ValueError("group_from_cayley needs a table")
        return group_hypergroup(from_cayley_table(spec.cayley))
    if name == "conj":
        return conjugacy_hypergroup(_resolve_group(spec))
    if name == "irr":
        return irr_hypergroup(_resolve_group(spec))
    if name in ("su2_fusion", "chebyshev"):
        if spec.radius is None:
            raise ValueError(f"{name} needs a truncation radius")
        return su2_fusion(spec.radius)
    if name == "suq2_fusion":
        if spec.radius is None or spec.q is None:
            raise ValueError("suq2_fusion needs q and a truncation radius")
        return su2_fusion(spec.radius, q=spec.q)
    if name == "tree_radial":
        if spec.radius is None or spec.q is None:
            raise ValueError("tree_radial needs q and a truncation radius")
        return tree_radial(int(spec.q), spec.radius)
    raise ValueError(f"unknown family {spec.name!r}")
