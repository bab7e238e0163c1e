"""Discrete hypergroup tables and their convolution calculus.

A discrete hypergroup is a set with an identity ``e``, an involution
``x -> x~`` and a product that sends each pair of points to a probability
measure: ``x . y = sum_z c^z_{x,y} delta_z``.  This module stores finite
tables (or finite sections of infinite ones) of the structure constants
``c^z_{x,y}``, computes Haar weights ``lam(x) = 1 / c^e_{x,x~}``, and
implements the weighted convolution

    (f ._lam g)(x) = sum_y lam(y) f(y) g(y~ . x)
                   = (1/lam(x)) sum_{y,z} lam(y) lam(z) f(y) g(z) c^x_{y,z},

left translation, involution and axiom verification.

Two arithmetic modes are supported.  Tables derived from group Cayley
tables carry exact :class:`fractions.Fraction` entries and all checks are
exact; spectral constructions carry floats and every verifier takes an
explicit tolerance (default ``1e-9``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import FileFormatError, TruncationOverflow, ZeroDiagonal

DEFAULT_TOL = 1e-9
DEFAULT_SEED = 7

Value = object  # Fraction or float; complex for function values


def _is_exact(v) -> bool:
    return isinstance(v, (Fraction, int))


def _abs(v):
    return abs(v)


@dataclass(frozen=True)
class NNTail:
    """Tail bounds for graded (N-indexed) truncated families.

    For elements of grade ``n >= start`` (grade = element index), the row of
    the designated generator at ``n`` is supported on grades
    ``{n-1, n, n+1}`` with coefficients bounded by ``alpha_sup``,
    ``diag_sup`` and ``beta_sup``.  ``exact`` marks families whose tail
    coefficients are exactly constant and equal to the bounds.  These bounds
    feed the Schur-test certificates used by the (P2) checker; they describe
    the infinite table beyond the stored ball and are supplied by builders,
    never inferred from the section.
    """

    alpha_sup: float
    diag_sup: float
    beta_sup: float
    start: int = 1
    exact: bool = False


class HFunction:
    """Finitely supported function on hypergroup element indices."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping[int, Value] | Iterable[tuple[int, Value]] = ()):
        vals = dict(values.items() if isinstance(values, Mapping) else values)
        self.values = {i: v for i, v in vals.items() if v != 0}

    @classmethod
    def delta(cls, x: int) -> "HFunction":
        return cls({x: 1})

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.values))

    def __getitem__(self, i: int):
        return self.values.get(i, 0)

    def __iter__(self):
        return iter(sorted(self.values.items()))

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, HFunction):
            return NotImplemented
        return self.values == other.values

    def __repr__(self):
        items = ", ".join(f"{i}: {v}" for i, v in self)
        return f"HFunction({{{items}}})"

    def scaled(self, a) -> "HFunction":
        return HFunction({i: a * v for i, v in self.values.items()})

    def plus(self, other: "HFunction") -> "HFunction":
        out = dict(self.values)
        for i, v in other.values.items():
            out[i] = out.get(i, 0) + v
        return HFunction(out)

    def to_dense(self, n: int) -> list:
        out = [0] * n
        for i, v in self.values.items():
            out[i] = v
        return out

    def max_abs_diff(self, other: "HFunction") -> float:
        keys = set(self.values) | set(other.values)
        if not keys:
            return 0.0
        return max(float(_abs(self[k] - other[k])) for k in keys)


class HypergroupTable:
    """Structure constants of a finite (or truncated) discrete hypergroup.

    Rows are stored sparsely as ``(x, y) -> ((z, c^z_{x,y}), ...)``; for
    commutative tables only ``x <= y`` is stored and the rest is filled by
    commutativity.  Element ordering is fixed at construction with the
    identity first.  Truncated tables record a ball radius; any access to a
    missing row raises :class:`TruncationOverflow` rather than clipping.
    """

    def __init__(
        self,
        name: str,
        size: int,
        involution: Sequence[int],
        rows: Mapping[tuple[int, int], Iterable[tuple[int, Value]]],
        *,
        identity: int = 0,
        haar: Sequence[Value] | None = None,
        commutative: bool = True,
        truncated: bool = False,
        radius: int | None = None,
        tail: NNTail | None = None,
        generator: int | None = None,
        elements: Sequence[str] | None = None,
    ):
        if size <= 0:
            raise ValueError("size must be positive")
        if not 0 <= identity < size:
            raise ValueError("identity index out of range")
        inv = tuple(int(i) for i in involution)
        if sorted(inv) != list(range(size)):
            raise ValueError("involution is not a permutation")
        if any(inv[inv[i]] != i for i in range(size)):
            raise ValueError("involution is not involutive")
        self.name = name
        self.size = size
        self.identity = identity
        self.involution = inv
        self.commutative = commutative
        self.truncated = truncated
        self.radius = radius
        self.tail = tail
        self.generator = generator if generator is not None else (1 if size > 1 else 0)
        self.elements = tuple(elements) if elements is not None else tuple(
            f"x{i}" for i in range(size)
        )
        if len(self.elements) != size:
            raise ValueError("wrong number of element labels")

        store: dict[tuple[int, int], tuple[tuple[int, Value], ...]] = {}
        exact = True
        for (x, y), entries in rows.items():
            if not (0 <= x < size and 0 <= y < size):
                raise ValueError(f"row index ({x},{y}) out of range")
            key = (min(x, y), max(x, y)) if commutative else (x, y)
            cleaned = tuple(sorted((int(z), v) for z, v in entries if v != 0))
            for z, v in cleaned:
                if not 0 <= z < size:
                    raise ValueError(f"support index {z} out of range in row {key}")
                if not _is_exact(v):
                    exact = False
            if key in store and store[key] != cleaned:
                raise ValueError(f"conflicting data for row {key}")
            store[key] = cleaned
        self.rows = store
        self.exact = exact

        if not truncated:
            missing = [
                (x, y)
                for x in range(size)
                for y in range(size)
                if self._key(x, y) not in store
            ]
            if missing:
                raise ValueError(f"finite table is missing rows, e.g. {missing[0]}")

        if haar is not None:
            self._haar = tuple(haar)
            if len(self._haar) != size:
                raise ValueError("wrong number of Haar weights")
        else:
            self._haar = None

    # -- basic access ---------------------------------------------------

    def _key(self, x: int, y: int) -> tuple[int, int]:
        return (min(x, y), max(x, y)) if self.commutative else (x, y)

    def has_row(self, x: int, y: int) -> bool:
        return self._key(x, y) in self.rows

    def row(self, x: int, y: int) -> tuple[tuple[int, Value], ...]:
        """Sparse probability vector of the product ``x . y``."""
        if not (0 <= x < self.size and 0 <= y < self.size):
            raise IndexError(f"element index out of range: ({x},{y})")
        key = self._key(x, y)
        try:
            return self.rows[key]
        except KeyError:
            raise TruncationOverflow(
                f"{self.name}: product {x}.{y} leaves the stored section"
            ) from None

    def coeff(self, x: int, y: int, z: int):
        for w, v in self.row(x, y):
            if w == z:
                return v
        return Fraction(0) if self.exact else 0.0

    def inv(self, x: int) -> int:
        return self.involution[x]

    @property
    def haar(self) -> tuple:
        """Haar weights lam(x) = 1 / c^e_{x,x~}, lam(e) = 1."""
        if self._haar is None:
            self._haar = tuple(self._haar_from_rows())
        return self._haar

    def _haar_from_rows(self):
        out = []
        for x in range(self.size):
            c = self.coeff(x, self.involution[x], self.identity)
            if c == 0:
                raise ZeroDiagonal(
                    f"{self.name}: c^e_{{{x},{self.involution[x]}}} = 0"
                )
            out.append(1 / c if not _is_exact(c) else Fraction(1, 1) / c)
        return out

    def __repr__(self):
        kind = "truncated" if self.truncated else "finite"
        return f"HypergroupTable({self.name!r}, size={self.size}, {kind})"

    def relabeled(self, name: str) -> "HypergroupTable":
        return HypergroupTable(
            name,
            self.size,
            self.involution,
            dict(self.rows),
            identity=self.identity,
            haar=self._haar,
            commutative=self.commutative,
            truncated=self.truncated,
            radius=self.radius,
            tail=self.tail,
            generator=self.generator,
            elements=self.elements,
        )


# -- convolution calculus ----------------------------------------------


def convolve_point(H: HypergroupTable, x: int, y: int) -> HFunction:
    """Probability vector z -> c^z_{x,y} of the point product x . y."""
    return HFunction(H.row(x, y))


def convolve_functions(H: HypergroupTable, f: HFunction, g: HFunction) -> HFunction:
    """Weighted convolution f ._lam g.

    Computed through the adjoint identity lam(y) c^z_{x,y} = lam(z) c^y_{x~,z}
    so that only rows (y, z) with y in supp f, z in supp g are touched:

        (f ._lam g)(x) = (1/lam(x)) sum_{y,z} lam(y) lam(z) f(y) g(z) c^x_{y,z}.
    """
    lam = H.haar
    acc: dict[int, Value] = {}
    for y, fy in f.values.items():
        wy = lam[y] * fy
        for z, gz in g.values.items():
            w = wy * lam[z] * gz
            for (xz, c) in H.row(y, z):
                acc[xz] = acc.get(xz, 0) + w * c
    return HFunction({x: v / lam[x] for x, v in acc.items()})


def translate(H: HypergroupTable, x: int, f: HFunction) -> HFunction:
    """Left translation L_x f(y) = f(x~ . y) = sum_z c^z_{x~,y} f(z)."""
    lam = H.haar
    acc: dict[int, Value] = {}
    for z, fz in f.values.items():
        w = lam[z] * fz
        for (y, c) in H.row(x, z):
            acc[y] = acc.get(y, 0) + w * c / lam[y]
    return HFunction(acc)


def involute(H: HypergroupTable, f: HFunction) -> HFunction:
    """f~(x) = conj(f(x~)); the modular function is 1 (commutative case)."""
    out = {}
    for i, v in f.values.items():
        out[H.involution[i]] = v.conjugate() if isinstance(v, complex) else v
    return HFunction(out)


def l1_norm(H: HypergroupTable, f: HFunction) -> float:
    return float(sum(H.haar[i] * _abs(v) for i, v in f.values.items()))


def l2_norm(H: HypergroupTable, f: HFunction) -> float:
    return math.sqrt(float(sum(H.haar[i] * _abs(v) ** 2 for i, v in f.values.items())))


def inner(H: HypergroupTable, f: HFunction, g: HFunction):
    """lam-weighted inner product <f, g> = sum lam(x) f(x) conj(g(x))."""
    s = 0
    for i, v in f.values.items():
        gv = g[i]
        if gv != 0:
            s += H.haar[i] * v * (gv.conjugate() if isinstance(gv, complex) else gv)
    return s


# -- axiom verification -------------------------------------------------


@dataclass
class AxiomCheck:
    passed: bool
    violation: float


@dataclass
class AxiomReport:
    """Per-axiom pass/fail with the largest violation magnitude found."""

    table: str
    mode: str
    tol: float
    checks: dict[str, AxiomCheck] = field(default_factory=dict)
    triples_checked: int = 0
    triples_skipped: int = 0

    HYPERGROUP_AXIOMS = (
        "probability",
        "associativity",
        "identity",
        "involution",
        "support",
    )

    @property
    def passed(self) -> bool:
        return all(self.checks[a].passed for a in self.HYPERGROUP_AXIOMS)

    @property
    def commutative(self) -> bool:
        return self.checks["commutativity"].passed

    def lines(self) -> list[str]:
        out = [f"axiom report for {self.table} ({self.mode} mode, tol={self.tol:g})"]
        for name, chk in self.checks.items():
            status = "pass" if chk.passed else "FAIL"
            out.append(f"  {name:<14} {status}  max violation {chk.violation:.3g}")
        out.append(
            f"  associativity triples checked={self.triples_checked}"
            f" skipped={self.triples_skipped}"
        )
        out.append(f"  hypergroup axioms: {'pass' if self.passed else 'FAIL'}")
        return out


def _iter_pairs(H: HypergroupTable):
    for (x, y) in H.rows:
        yield x, y
        if H.commutative and x != y:
            yield y, x


def verify_axioms(H: HypergroupTable, tol: float = DEFAULT_TOL) -> AxiomReport:
    """Check the hypergroup axioms on every stored row and triple.

    Failures are report entries, not exceptions.  In rational mode all
    comparisons are exact and violations are reported as exact zeros.
    Commutativity is reported alongside the axioms but does not enter the
    overall pass flag (group tables of nonabelian groups are hypergroups).
    """
    report = AxiomReport(H.name, "rational" if H.exact else "float", tol)
    e = H.identity

    viol = 0
    for x, y in _iter_pairs(H):
        row = H.row(x, y)
        s = sum(v for _, v in row)
        viol = max(viol, _abs(s - 1), max((_abs(min(v, 0)) for _, v in row), default=0))
    report.checks["probability"] = AxiomCheck(float(viol) <= tol, float(viol))

    viol = 0
    if not H.commutative:
        for (x, y) in list(H.rows):
            if H.has_row(y, x):
                a = dict(H.row(x, y))
                b = dict(H.row(y, x))
                for z in set(a) | set(b):
                    viol = max(viol, _abs(a.get(z, 0) - b.get(z, 0)))
    report.checks["commutativity"] = AxiomCheck(float(viol) <= tol, float(viol))

    viol = 0
    for x in range(H.size):
        if H.has_row(e, x):
            d = dict(H.row(e, x))
            viol = max(viol, _abs(d.get(x, 0) - 1))
            viol = max(viol, sum(_abs(v) for z, v in d.items() if z != x))
        if not H.commutative and H.has_row(x, e):
            d = dict(H.row(x, e))
            viol = max(viol, _abs(d.get(x, 0) - 1))
            viol = max(viol, sum(_abs(v) for z, v in d.items() if z != x))
    report.checks["identity"] = AxiomCheck(float(viol) <= tol, float(viol))

    # involution anti-homomorphism: c^z_{x,y} = c^{z~}_{y~,x~}
    viol = 0
    for x, y in _iter_pairs(H):
        xi, yi = H.involution[x], H.involution[y]
        if not H.has_row(yi, xi):
            continue
        mirror = dict(H.row(yi, xi))
        for z, v in H.row(x, y):
            viol = max(viol, _abs(v - mirror.get(H.involution[z], 0)))
    report.checks["involution"] = AxiomCheck(float(viol) <= tol, float(viol))

    # support law: e in supp(x.y) iff y = x~
    viol = 0
    for x, y in _iter_pairs(H):
        ce = dict(H.row(x, y)).get(e, 0)
        if y == H.involution[x]:
            if ce <= 0:
                viol = max(viol, 1.0)
        else:
            viol = max(viol, _abs(ce))
    report.checks["support"] = AxiomCheck(float(viol) <= tol, float(viol))

    # associativity of the measure algebra on all triples inside the section
    viol = 0
    checked = skipped = 0
    for x in range(H.size):
        for y in range(H.size):
            if not H.has_row(x, y):
                skipped += H.size
                continue
            for z in range(H.size):
                try:
                    left: dict[int, Value] = {}
                    for w, c in H.row(x, y):
                        for v, c2 in H.row(w, z):
                            left[v] = left.get(v, 0) + c * c2
                    right: dict[int, Value] = {}
                    for w, c in H.row(y, z):
                        for v, c2 in H.row(x, w):
                            right[v] = right.get(v, 0) + c * c2
                except TruncationOverflow:
                    skipped += 1
                    continue
                checked += 1
                for v in set(left) | set(right):
                    viol = max(viol, _abs(left.get(v, 0) - right.get(v, 0)))
    report.checks["associativity"] = AxiomCheck(float(viol) <= tol, float(viol))
    report.triples_checked = checked
    report.triples_skipped = skipped
    return report


def haar_weights(H: HypergroupTable, tol: float = DEFAULT_TOL) -> tuple:
    """Haar weights, with left invariance checked rather than assumed.

    Verifies lam(e) = 1 and the adjoint identity
    lam(y) c^z_{x,y} = lam(z) c^y_{x~,z} on every stored triple of the
    section (the identity making the regular representation a
    *-representation on l2(lam)).
    """
    lam = H.haar
    if _abs(lam[H.identity] - 1) > tol:
        raise ZeroDiagonal(f"{H.name}: lam(e) = {lam[H.identity]} != 1")
    worst = 0
    for x, y in _iter_pairs(H):
        xi = H.involution[x]
        for z, c in H.row(x, y):
            if not H.has_row(xi, z):
                continue
            mirror = dict(H.row(xi, z)).get(y, 0)
            worst = max(worst, _abs(lam[y] * c - lam[z] * mirror))
    if float(worst) > tol:
        raise ZeroDiagonal(
            f"{H.name}: Haar invariance identity violated by {float(worst):.3g}"
        )
    return lam


# -- hypergroup file format ---------------------------------------------
#
# One document per table::
#
#     hypergroup v1
#     name <token>
#     size <n>
#     identity <index>
#     involution <i0> <i1> ... <i(n-1)>
#     commutative <0|1>
#     truncated <0|1>
#     radius <R>                  (truncated tables only)
#     tail <alpha> <diag> <beta> <start> <exact 0|1>   (optional)
#     generator <index>           (optional)
#     elements <label0> ... <label(n-1)>   (optional)
#     haar <w0> ... <w(n-1)>      (optional)
#     triples
#     <x> <y> <z> <value>
#     ...
#     end
#
# Values are either exact rationals "p/q" (or integers) or Python float
# reprs; round-tripping is bit-exact in rational mode.


def _format_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def _parse_value(tok: str):
    if "/" in tok:
        return Fraction(tok)
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def save_table(H: HypergroupTable, path: str) -> None:
    lines = ["hypergroup v1"]
    lines.append(f"name {H.name}")
    lines.append(f"size {H.size}")
    lines.append(f"identity {H.identity}")
    lines.append("involution " + " ".join(str(i) for i in H.involution))
    lines.append(f"commutative {int(H.commutative)}")
    lines.append(f"truncated {int(H.truncated)}")
    if H.truncated and H.radius is not None:
        lines.append(f"radius {H.radius}")
    if H.tail is not None:
        t = H.tail
        lines.append(
            f"tail {_format_value(t.alpha_sup)} {_format_value(t.diag_sup)} "
            f"{_format_value(t.beta_sup)} {t.start} {int(t.exact)}"
        )
    lines.append(f"generator {H.generator}")
    lines.append("elements " + " ".join(H.elements))
    lines.append("haar " + " ".join(_format_value(v) for v in H.haar))
    lines.append("triples")
    for (x, y) in sorted(H.rows):
        for z, v in H.rows[(x, y)]:
            lines.append(f"{x} {y} {z} {_format_value(v)}")
    lines.append("end")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_table(path: str) -> HypergroupTable:
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw or raw[0].strip() != "hypergroup v1":
        raise FileFormatError("missing 'hypergroup v1' header", line=1)
    header: dict[str, list[str]] = {}
    rows: dict[tuple[int, int], list[tuple[int, Value]]] = {}
    in_triples = False
    for ln, line in enumerate(raw[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line == "triples":
            in_triples = True
            continue
        if line == "end":
            break
        toks = line.split()
        if not in_triples:
            header[toks[0]] = toks[1:]
            continue
        if len(toks) != 4:
            raise FileFormatError("triple line needs 'x y z value'", line=ln)
        try:
            x, y, z = int(toks[0]), int(toks[1]), int(toks[2])
            v = _parse_value(toks[3])
        except ValueError as exc:
            raise FileFormatError(str(exc), line=ln) from None
        rows.setdefault((x, y), []).append((z, v))
    try:
        size = int(header["size"][0])
        involution = [int(t) for t in header["involution"]]
    except KeyError as exc:
        raise FileFormatError(f"missing header line {exc}") from None
    tail = None
    if "tail" in header:
        a, d, b, start, exact = header["tail"]
        tail = NNTail(
            float(_parse_value(a)),
            float(_parse_value(d)),
            float(_parse_value(b)),
            int(start),
            bool(int(exact)),
        )
    return HypergroupTable(
        header.get("name", ["table"])[0],
        size,
        involution,
        rows,
        identity=int(header.get("identity", ["0"])[0]),
        haar=[_parse_value(t) for t in header["haar"]] if "haar" in header else None,
        commutative=bool(int(header.get("commutative", ["1"])[0])),
        truncated=bool(int(header.get("truncated", ["0"])[0])),
        radius=int(header["radius"][0]) if "radius" in header else None,
        tail=tail,
        generator=int(header["generator"][0]) if "generator" in header else None,
        elements=header.get("elements"),
    )
