from fractions import Fraction

import numpy as np
import pytest

from hypharm import builders, characters, groups, verify_axioms
from hypharm.errors import FileFormatError, ReciprocityError
from hypharm.quantum import (
    CentralFunction,
    CentralMeasure,
    central_convolve,
    convolve_central_measures,
    group_fusion_ring,
    hat_map,
    hypergroup_d,
    hypergroup_n,
    inverse_hat_map,
    is_kac,
    load_fusion_ring,
    quantum_character_decomposition,
    save_fusion_ring,
    su2_fusion_ring,
    zl1_norm,
    zm_to_b,
)

GROUPS = ("s3", "z4", "d4", "q8")


def test_group_fusion_ring_s3():
    ring = group_fusion_ring(groups.symmetric(3))
    assert is_kac(ring)
    sigma = next(i for i, l in enumerate(ring.labels) if l.endswith("d2"))
    assert ring.N(sigma, sigma, sigma) == 1
    others = [i for i in range(3) if i != sigma]
    assert all(ring.N(sigma, sigma, g) == 1 for g in others)


def test_hypergroup_n_equals_irr_table(builtin_groups):
    for name, G in builtin_groups.items():
        ring = group_fusion_ring(G)
        Hn = hypergroup_n(ring)
        HI = builders.irr_hypergroup(G)
        assert Hn.rows == HI.rows, name
        assert Hn.haar == HI.haar, name


def test_frobenius_reciprocity_validated():
    ring = group_fusion_ring(groups.quaternion8())
    ring.validate()
    bad_mult = {k: dict(v) for k, v in ring.mult.items()}
    two_dim = next(i for i, l in enumerate(ring.labels) if l.endswith("d2"))
    bad_mult[(two_dim, two_dim)][two_dim] = (
        bad_mult[(two_dim, two_dim)].get(two_dim, 0) + 1
    )
    from hypharm.quantum import FusionRing

    bad = FusionRing(
        "bad", ring.labels, ring.trivial, ring.conjugate, bad_mult,
        ring.ndims, ring.ddims,
    )
    with pytest.raises(ReciprocityError):
        bad.validate()


def test_su2_ring_kac_and_tables():
    ring1 = su2_fusion_ring(10, q=1)
    assert is_kac(ring1)
    assert hypergroup_n(ring1).rows == hypergroup_d(ring1).rows

    ringq = su2_fusion_ring(12, q=Fraction(1, 2))
    assert not is_kac(ringq)
    assert float(ringq.ddims[1]) == 2.5
    Hd = hypergroup_d(ringq)
    row = dict(Hd.row(1, 1))
    assert row[0] == Fraction(4, 25) and row[2] == Fraction(21, 25)
    # the d-table agrees with the family builder (independent closed form)
    assert Hd.rows == builders.su2_fusion(12, q=Fraction(1, 2)).rows
    rep = verify_axioms(Hd, tol=1e-12)
    assert rep.passed


def test_haar_of_d_table_is_inverse_diagonal():
    ring = su2_fusion_ring(12, q=Fraction(1, 2))
    Hd = hypergroup_d(ring)
    for b in range(6):
        assert Hd.haar[b] == 1 / dict(Hd.row(b, b))[0]


def test_quantum_character_decomposition():
    ring = su2_fusion_ring(10, q=Fraction(1, 2))
    assert quantum_character_decomposition(ring, 1, 1) == {0: 1, 2: 1}
    assert quantum_character_decomposition(ring, 0, 4) == {4: 1}
    ring_s3 = group_fusion_ring(groups.symmetric(3))
    sigma = next(i for i, l in enumerate(ring_s3.labels) if l.endswith("d2"))
    dec = quantum_character_decomposition(ring_s3, sigma, sigma)
    assert dec == {g: 1 for g in range(3)}


# -- hat map -------------------------------------------------------------------


def test_hat_map_spot_value_s3():
    G = groups.symmetric(3)
    from hypharm.quantum import _char_data

    data = _char_data(G)
    sigma = next(a for a, d in enumerate(data.dims) if d == 2)
    f = CentralFunction("S3", tuple(data.chars[sigma]))
    fh = hat_map(G, f)
    assert abs(complex(fh[sigma]) - 0.5) < 1e-9
    assert all(abs(complex(fh[a])) < 1e-9 for a in range(3) if a != sigma)
    assert zl1_norm(G, f) == pytest.approx(2 / 3, abs=1e-12)


def test_hat_map_point_mass_and_constant():
    G = groups.symmetric(3)
    k = len(G.conjugacy_classes())
    # f supported on {e} with value |G|: f^(alpha) = chi_alpha(e)/n_alpha = 1
    f = CentralFunction("S3", tuple([G.order] + [0] * (k - 1)))
    fh = hat_map(G, f)
    assert all(abs(complex(fh[a]) - 1) < 1e-9 for a in range(k))
    # f = 1: indicator of the trivial representation
    ones = CentralFunction("S3", tuple([1.0] * k))
    oh = hat_map(G, ones)
    nonzero = [a for a in range(k) if abs(complex(oh[a])) > 1e-9]
    assert nonzero == [0] and abs(complex(oh[0]) - 1) < 1e-9


@pytest.mark.parametrize("gname", GROUPS)
def test_hat_map_isometry_and_multiplicativity(gname):
    G = groups.get_group(gname)
    k = len(G.conjugacy_classes())
    rng = np.random.default_rng(hash(gname) % 2**31)
    table = builders.irr_hypergroup(G)
    from hypharm import norm_A

    ct = characters(table)
    for _ in range(50):
        f = CentralFunction(gname, tuple(rng.standard_normal(k) + 1j * rng.standard_normal(k)))
        g = CentralFunction(gname, tuple(rng.standard_normal(k) + 1j * rng.standard_normal(k)))
        fh = hat_map(G, f, verify=False)
        gh = hat_map(G, g, verify=False)
        # isometry
        a = norm_A(table, ct, np.array([complex(fh[i]) for i in range(k)]),
                   with_witness=False)[0]
        assert abs(zl1_norm(G, f) - a) < 1e-9 * max(1.0, a)
        # convolution -> pointwise product
        ch = hat_map(G, central_convolve(G, f, g), verify=False)
        err = max(
            abs(complex(ch[i]) - complex(fh[i]) * complex(gh[i])) for i in range(k)
        )
        assert err < 1e-9


def test_inverse_hat_map_roundtrip():
    G = groups.dihedral4()
    k = 5
    rng = np.random.default_rng(7)
    f = CentralFunction("D4", tuple(rng.standard_normal(k)))
    back = inverse_hat_map(G, hat_map(G, f, verify=False))
    assert max(abs(a - b) for a, b in zip(back.values, f.values)) < 1e-9


# -- central measures ------------------------------------------------------------


def test_zm_to_b_point_mass():
    G = groups.symmetric(3)
    mu = CentralMeasure("S3", (1, 0, 0))
    out = zm_to_b(G, mu)
    assert all(abs(complex(out[a]) - 1) < 1e-9 for a in range(3))


def test_zm_to_b_haar_gives_trivial_indicator():
    G = groups.symmetric(3)
    mu = CentralMeasure("S3", (Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)))
    out = zm_to_b(G, mu)
    vals = [complex(out[a]) for a in range(3)]
    assert abs(vals[0] - 1) < 1e-9
    assert all(abs(v) < 1e-9 for v in vals[1:])


def test_zm_to_b_class_multiplicativity():
    G = groups.symmetric(3)
    mu = CentralMeasure("S3", (0, 1.0, 0))  # uniform on the transpositions
    nu = CentralMeasure("S3", (0, 0, 1.0))
    conv = convolve_central_measures(G, mu, nu)
    lhs = zm_to_b(G, conv, verify=False)
    a = zm_to_b(G, mu)  # verify=True checks TV equality and squares
    b = zm_to_b(G, nu)
    for i in range(3):
        assert abs(complex(lhs[i]) - complex(a[i]) * complex(b[i])) < 1e-9


# -- files -------------------------------------------------------------------------


def test_fusion_ring_roundtrip(tmp_path):
    ring = su2_fusion_ring(8, q=Fraction(1, 2))
    p = tmp_path / "ring.fus"
    save_fusion_ring(ring, str(p))
    back = load_fusion_ring(str(p))
    assert back.mult == ring.mult
    assert back.ddims == ring.ddims
    assert back.q == ring.q


def test_fusion_ring_group_roundtrip(tmp_path):
    ring = group_fusion_ring(groups.symmetric(3))
    p = tmp_path / "s3.fus"
    save_fusion_ring(ring, str(p))
    back = load_fusion_ring(str(p))
    assert back.mult == ring.mult and back.ndims == ring.ndims


def test_fusion_file_reciprocity_rejected(tmp_path):
    p = tmp_path / "bad.fus"
    p.write_text(
        "fusionring v1\n"
        "name bad\n"
        "labels a b\n"
        "trivial 0\n"
        "conj 0 1\n"
        "ndims 1 1\n"
        "ddims 1 1\n"
        "mult\n"
        "a a a 1\n"
        "a b b 1\n"
        "b a b 1\n"
        "b b a 1\n"
        "b b b 1\n"
        "end\n"
    )
    with pytest.raises(ReciprocityError):
        load_fusion_ring(str(p))


def test_fusion_file_parse_error_has_line(tmp_path):
    p = tmp_path / "bad2.fus"
    p.write_text("fusionring v1\nlabels a\nndims 1\nconj 0\nmult\na a a x\nend\n")
    with pytest.raises(FileFormatError) as exc:
        load_fusion_ring(str(p))
    assert "line 6" in str(exc.value)
