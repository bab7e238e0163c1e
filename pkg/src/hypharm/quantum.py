"""Fusion rings of compact (quantum) groups and the central-algebra maps.

A fusion ring carries labels with conjugation, tensor multiplicities
N^gamma_{alpha beta}, classical dimensions n and quantum dimensions d
(equal exactly when the quantum group is of Kac type).  Each dimension
function induces a discrete hypergroup

    alpha . beta = sum_gamma (dim_gamma / (dim_alpha dim_beta))
                   N^gamma_{alpha beta} gamma,

with Haar weight dim^2; the two tables coincide iff the ring is Kac.

For a finite group G the hat map

    f^(alpha) = (1/n_alpha) <f, chi_{alpha-bar}>,   <f,h> = (1/|G|) sum f h,

identifies the center ZL1(G) with A(Irr(G), n) isometrically and sends
convolution to the pointwise product; the dual map T* identifies central
measures with B(Irr(G)) through T*(mu)(pi) = (1/d_pi) <mu, chi_pi>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .builders import (
    DEFAULT_SEED,
    GroupCharacterData,
    conjugacy_hypergroup,
    group_character_data,
    q_integer,
    su2_fusion,
)
from .core import HFunction, HypergroupTable
from .errors import FileFormatError, ReciprocityError
from .groups import FiniteGroup
from .norms import norm_A, norm_Blambda
from .spectral import characters


@dataclass(frozen=True)
class FusionRing:
    """Irreducible labels with tensor multiplicities and the two dimensions.

    ``mult[(a, b)]`` maps gamma -> N^gamma_{ab}; rows may be missing for
    truncated rings (label sets cut at a radius), in which case only the
    stored rows are validated and the induced tables are truncated.
    """

    name: str
    labels: tuple[str, ...]
    trivial: int
    conjugate: tuple[int, ...]
    mult: dict[tuple[int, int], dict[int, int]]
    ndims: tuple[int, ...]
    ddims: tuple
    q: object | None = None  # deformation parameter for su2-type rings

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def complete(self) -> bool:
        return all(
            (a, b) in self.mult for a in range(self.size) for b in range(self.size)
        )

    def N(self, a: int, b: int, g: int) -> int:
        row = self.mult.get((a, b))
        if row is None:
            row = self.mult.get((b, a))
        if row is None:
            raise KeyError(f"multiplicity row ({a},{b}) not stored")
        return row.get(g, 0)

    def validate(self, tol: float = 1e-9) -> None:
        """Frobenius reciprocity, dimension homomorphisms, trivial row."""
        for (a, b), row in self.mult.items():
            for g, n in row.items():
                if n < 0:
                    raise ReciprocityError(f"negative multiplicity at ({a},{b},{g})")
                for (x, y, z) in (
                    (self.conjugate[a], g, b),
                    (g, self.conjugate[b], a),
                ):
                    try:
                        other = self.N(x, y, z)
                    except KeyError:
                        continue
                    if other != n:
                        raise ReciprocityError(
                            f"N^{g}_{{{a},{b}}}={n} but partner ({x},{y},{z})={other}"
                        )
            for dims in (self.ndims, self.ddims):
                lhs = sum(row.get(g, 0) * dims[g] for g in range(self.size))
                if abs(float(lhs - dims[a] * dims[b])) > tol * float(
                    dims[a] * dims[b]
                ):
                    raise ReciprocityError(
                        f"dimension homomorphism fails on row ({a},{b})"
                    )
            expected = 1 if b == self.conjugate[a] else 0
            if row.get(self.trivial, 0) != expected:
                raise ReciprocityError(f"trivial multiplicity wrong on ({a},{b})")


def group_fusion_ring(G: FiniteGroup, seed: int = DEFAULT_SEED) -> FusionRing:
    """Fusion ring of Irr(G) for a finite group (Kac: d = n)."""
    data = _char_data(G, seed)
    k = len(data.dims)
    mult = {
        (a, b): {g: data.mult[a][b][g] for g in range(k) if data.mult[a][b][g]}
        for a in range(k)
        for b in range(k)
    }
    ring = FusionRing(
        f"Irr({G.name})",
        tuple(f"pi{a}d{d}" for a, d in enumerate(data.dims)),
        0,
        data.conjugate,
        mult,
        data.dims,
        tuple(Fraction(d) for d in data.dims),
    )
    ring.validate()
    return ring


@lru_cache(maxsize=None)
def _char_data(G: FiniteGroup, seed: int = DEFAULT_SEED) -> GroupCharacterData:
    return group_character_data(G, seed=seed)


def su2_fusion_ring(radius: int, q=1) -> FusionRing:
    """Truncated fusion ring of SU_q(2): labels 1..radius, CG multiplicities."""
    if radius < 2:
        raise ValueError("fusion ring needs radius >= 2")
    if not isinstance(q, float):
        q = Fraction(q)
    mult = {}
    for a in range(1, radius + 1):
        for b in range(a, radius + 1):
            if a + b - 1 > radius:
                continue
            row = {c - 1: 1 for c in range(b - a + 1, a + b, 2)}
            mult[(a - 1, b - 1)] = row
    ring = FusionRing(
        f"Irr(SUq2)_q{q}_R{radius}",
        tuple(str(a) for a in range(1, radius + 1)),
        0,
        tuple(range(radius)),
        mult,
        tuple(range(1, radius + 1)),
        tuple(q_integer(a, q) for a in range(1, radius + 1)),
        q=q,
    )
    ring.validate()
    return ring


def _ring_table(FR: FusionRing, dims, kind: str) -> HypergroupTable:
    rows = {}
    for (a, b), row in FR.mult.items():
        rows[(a, b)] = [
            (g, Fraction(dims[g] * n, dims[a] * dims[b])
             if isinstance(dims[g], int) or isinstance(dims[g], Fraction)
             else dims[g] * n / (dims[a] * dims[b]))
            for g, n in row.items()
        ]
    truncated = not FR.complete
    tail = None
    if truncated and FR.q is not None:
        # su2-type ring: reuse the closed-form tail bounds of the family
        ref = su2_fusion(FR.size, q=FR.q if kind == "d" else 1)
        tail = ref.tail
    return HypergroupTable(
        f"({FR.name},{kind})",
        FR.size,
        FR.conjugate,
        rows,
        identity=FR.trivial,
        haar=[d * d for d in dims],
        truncated=truncated,
        radius=FR.size if truncated else None,
        tail=tail,
        generator=1 if FR.size > 1 else 0,
        elements=FR.labels,
    )


def hypergroup_n(FR: FusionRing) -> HypergroupTable:
    """The hypergroup (Irr, n) built from the classical dimensions."""
    FR.validate()
    return _ring_table(FR, FR.ndims, "n")


def hypergroup_d(FR: FusionRing) -> HypergroupTable:
    """The hypergroup (Irr, d) built from the quantum dimensions."""
    FR.validate()
    return _ring_table(FR, FR.ddims, "d")


def is_kac(FR: FusionRing, tol: float = 1e-9) -> bool:
    """Kac type iff the two dimension functions agree: max |n - d| < tol."""
    return max(abs(float(n - d)) for n, d in zip(FR.ndims, FR.ddims)) < tol


def quantum_character_decomposition(FR: FusionRing, a: int, b: int) -> dict[int, int]:
    """chi_q^a chi_q^b = sum_g N^g_{ab} chi_q^g as a multiset {g: N}.

    Consistency with the support of the (Irr, d) table row is checked.
    """
    row = FR.mult.get((a, b)) or FR.mult.get((b, a))
    if row is None:
        raise KeyError(f"decomposition ({a},{b}) leaves the stored ring")
    table_row = dict(hypergroup_d(FR).row(a, b))
    if set(table_row) != {g for g, n in row.items() if n}:
        raise ReciprocityError(f"row support mismatch at ({a},{b})")
    return dict(row)


# -- central functions on finite groups --------------------------------------


@dataclass(frozen=True)
class CentralFunction:
    """Class function on a finite group: one complex value per conjugacy class."""

    group: str
    values: tuple[complex, ...]


def zl1_norm(G: FiniteGroup, f: CentralFunction) -> float:
    """|f|_{ZL1(G)} = (1/|G|) sum_g |f(g)| under Haar probability measure."""
    sizes = [len(c) for c in G.conjugacy_classes()]
    return float(sum(s * abs(v) for s, v in zip(sizes, f.values))) / G.order


def central_convolve(G: FiniteGroup, f: CentralFunction, g: CentralFunction) -> CentralFunction:
    """(f * g)(x) = (1/|G|) sum_y f(y) g(y^{-1} x) on class representatives."""
    table = conjugacy_hypergroup(G)
    sizes = [len(c) for c in G.conjugacy_classes()]
    k = len(sizes)
    out = [0j] * k
    for i in range(k):
        if f.values[i] == 0:
            continue
        for j in range(k):
            if g.values[j] == 0:
                continue
            w = f.values[i] * g.values[j] * sizes[i] * sizes[j]
            for t, c in table.row(i, j):
                out[t] += w * complex(c) / sizes[t]
    return CentralFunction(G.name, tuple(v / G.order for v in out))


def hat_map(
    G: FiniteGroup,
    f: CentralFunction,
    seed: int = DEFAULT_SEED,
    verify: bool = True,
    tol: float = 1e-9,
) -> HFunction:
    """f^(alpha) = (1/n_alpha)(1/|G|) sum_g f(g) chi_{alpha-bar}(g) on Irr(G).

    With ``verify`` the ZL1 -> A(Irr(G), n) isometry is checked on f itself.
    """
    data = _char_data(G, seed)
    sizes = data.class_sizes
    k = len(sizes)
    vals = {}
    for a in range(k):
        abar = data.conjugate[a]
        s = sum(
            sizes[j] * f.values[j] * data.chars[abar][j] for j in range(k)
        ) / G.order
        vals[a] = s / data.dims[a]
    out = HFunction(vals)
    if verify:
        from .builders import irr_hypergroup

        table = irr_hypergroup(G, seed=seed)
        ct = characters(table, seed=seed)
        lhs = zl1_norm(G, f)
        rhs, _ = norm_A(table, ct, out, with_witness=False)
        if abs(lhs - rhs) > tol * max(1.0, lhs):
            raise ArithmeticError(
                f"{G.name}: hat map is not isometric ({lhs} vs {rhs})"
            )
    return out


def inverse_hat_map(G: FiniteGroup, coeffs: HFunction, seed: int = DEFAULT_SEED) -> CentralFunction:
    """f(C) = sum_alpha n_alpha f^(alpha) chi_alpha(C)."""
    data = _char_data(G, seed)
    k = len(data.dims)
    vals = []
    for j in range(k):
        vals.append(
            complex(
                sum(data.dims[a] * complex(coeffs[a]) * data.chars[a][j] for a in range(k))
            )
        )
    return CentralFunction(G.name, tuple(vals))


@dataclass(frozen=True)
class CentralMeasure:
    """Central measure: total mass per conjugacy class (uniform on the class)."""

    group: str
    masses: tuple[complex, ...]


def convolve_central_measures(
    G: FiniteGroup, mu: CentralMeasure, nu: CentralMeasure
) -> CentralMeasure:
    """Mass on class k of mu * nu is sum_{ij} mu_i nu_j c^k_{ij}."""
    table = conjugacy_hypergroup(G)
    k = table.size
    out = [0j] * k
    for i in range(k):
        for j in range(k):
            w = mu.masses[i] * nu.masses[j]
            if w == 0:
                continue
            for t, c in table.row(i, j):
                out[t] += w * complex(c)
    return CentralMeasure(G.name, tuple(out))


def zm_to_b(
    G: FiniteGroup,
    mu: CentralMeasure,
    seed: int = DEFAULT_SEED,
    verify: bool = True,
    tol: float = 1e-9,
) -> HFunction:
    """T*(mu)(pi) = (1/d_pi) <mu, chi_pi>: central measures into B(Irr(G)).

    With ``verify``, multiplicativity under measure convolution and the
    equality |T*(mu)|_{B_lambda(Irr G)} = total variation are checked.
    """
    data = _char_data(G, seed)
    k = len(data.dims)
    vals = {
        a: sum(mu.masses[j] * data.chars[a][j] for j in range(k)) / data.dims[a]
        for a in range(k)
    }
    out = HFunction(vals)
    if verify:
        from .builders import irr_hypergroup

        sq = convolve_central_measures(G, mu, mu)
        lhs = zm_to_b(G, sq, seed=seed, verify=False)
        worst = max(
            abs(complex(lhs[a]) - complex(out[a]) ** 2) for a in range(k)
        )
        if worst > tol * max(1.0, max(abs(complex(out[a])) for a in range(k)) ** 2):
            raise ArithmeticError(f"{G.name}: T* is not multiplicative ({worst:.2e})")
        table = irr_hypergroup(G, seed=seed)
        ct = characters(table, seed=seed)
        bnorm = norm_Blambda(table, ct, out)
        tv = float(sum(abs(m) for m in mu.masses))
        if abs(bnorm - tv) > tol * max(1.0, tv):
            raise ArithmeticError(
                f"{G.name}: |T* mu|_Blambda = {bnorm} but TV = {tv}"
            )
    return out


# -- fusion-ring file format --------------------------------------------------
#
#     fusionring v1
#     name <token>
#     labels <l0> <l1> ...
#     trivial <index>
#     conj <i0> <i1> ...
#     ndims <n0> <n1> ...
#     ddims <d0> <d1> ...     (optional; "qparam <q>" may appear instead)
#     mult
#     <alpha> <beta> <gamma> <N>     (label tokens, nonnegative integer N)
#     end


def save_fusion_ring(FR: FusionRing, path: str) -> None:
    lines = ["fusionring v1", f"name {FR.name}"]
    lines.append("labels " + " ".join(FR.labels))
    lines.append(f"trivial {FR.trivial}")
    lines.append("conj " + " ".join(str(i) for i in FR.conjugate))
    lines.append("ndims " + " ".join(str(n) for n in FR.ndims))
    if FR.q is not None:
        lines.append(f"qparam {FR.q}")
    else:
        lines.append("ddims " + " ".join(str(d) for d in FR.ddims))
    lines.append("mult")
    for (a, b) in sorted(FR.mult):
        for g, n in sorted(FR.mult[(a, b)].items()):
            lines.append(f"{FR.labels[a]} {FR.labels[b]} {FR.labels[g]} {n}")
    lines.append("end")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_fusion_ring(path: str) -> FusionRing:
    """Parse and validate a fusion-ring file (reciprocity checked on load)."""
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw or raw[0].strip() != "fusionring v1":
        raise FileFormatError("missing 'fusionring v1' header", line=1)
    header: dict[str, list[str]] = {}
    mult: dict[tuple[int, int], dict[int, int]] = {}
    in_mult = False
    label_index: dict[str, int] = {}
    for ln, line in enumerate(raw[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line == "mult":
            in_mult = True
            label_index = {l: i for i, l in enumerate(header.get("labels", []))}
            continue
        if line == "end":
            break
        toks = line.split()
        if not in_mult:
            header[toks[0]] = toks[1:]
            continue
        if len(toks) != 4:
            raise FileFormatError("mult line needs 'alpha beta gamma N'", line=ln)
        try:
            a, b, g = (label_index[t] for t in toks[:3])
        except KeyError as exc:
            raise FileFormatError(f"unknown label {exc}", line=ln) from None
        try:
            n = int(toks[3])
        except ValueError:
            raise FileFormatError("N must be an integer", line=ln) from None
        mult.setdefault((a, b), {})[g] = n
    try:
        labels = tuple(header["labels"])
        ndims = tuple(int(t) for t in header["ndims"])
        conj = tuple(int(t) for t in header["conj"])
    except KeyError as exc:
        raise FileFormatError(f"missing header line {exc}") from None
    q = None
    if "qparam" in header:
        tok = header["qparam"][0]
        q = Fraction(tok) if "/" in tok or tok.isdigit() else float(tok)
        ddims = tuple(q_integer(n, q) for n in ndims)
    elif "ddims" in header:
        ddims = tuple(
            Fraction(t) if "/" in t or t.lstrip("-").isdigit() else float(t)
            for t in header["ddims"]
        )
    else:
        ddims = tuple(Fraction(n) for n in ndims)
    ring = FusionRing(
        header.get("name", ["ring"])[0],
        labels,
        int(header.get("trivial", ["0"])[0]),
        conj,
        mult,
        ndims,
        ddims,
        q=q,
    )
    ring.validate()
    return ring
