import math

import numpy as np
import pytest

from _oracles import group_order
from orbdiam.gf import field_of_order
from orbdiam.linalg import dot
from orbdiam.repfactory import (
    DescriptorError,
    GenFileError,
    RepError,
    adjoin_scalars,
    build,
    classical_natural,
    export_rep,
    fdpm_coords,
    form_value,
    fully_deleted_rep,
    import_rep,
    parse_descriptor,
    perm_rep,
    quadratic_value,
    ree_stabilizer_rep,
    spin_check_irreducible,
    suzuki_rep,
)


@pytest.mark.parametrize("desc,order", [
    ("sl:n=2,q=3", 24), ("sl:n=2,q=4", 60), ("sl:n=3,q=2", 168), ("sl:n=2,q=5", 120),
    ("sp:n=4,q=2", 720), ("sp:n=4,q=3", 51840),
    ("su:n=3,q=4", 216), ("su:n=4,q=4", 25920), ("su:n=3,q=9", 6048),
    ("fdpm:r=5,q=2", 120), ("fdpm:r=6,q=2", 720), ("fdpm:r=6,q=2,alt=1", 360),
    ("fdpm:r=7,q=3,alt=1", 2520),
])
def test_group_orders(desc, order):
    assert group_order(build(desc)) == order


def test_suzuki_order():
    q = 8
    assert group_order(suzuki_rep(q), limit=100_000) == q**2 * (q**2 + 1) * (q - 1)


def _preserves(rep):
    F, form = rep.field, rep.form
    rng = np.random.default_rng(0)
    for _ in range(20):
        u, v = rng.integers(0, F.q, (2, rep.n))
        b = form_value(F, form, u, v)
        for g in rep.gen_arrays:
            if form_value(F, form, dot(F, u[None], g)[0], dot(F, v[None], g)[0]) != b:
                return False
    return True


@pytest.mark.parametrize("desc", ["sp:n=4,q=3", "sp:n=6,q=2", "su:n=3,q=4", "su:n=4,q=9"])
def test_classical_generators_preserve_their_form(desc):
    assert _preserves(build(desc))


@pytest.mark.parametrize("desc", ["sl:n=2,q=5;functor=sym2", "sl:n=4,q=2;functor=ext2"])
def test_orthogonal_routes_preserve_quadratic_form(desc):
    rep = build(desc)
    rng = np.random.default_rng(3)
    for _ in range(30):
        v = rng.integers(0, rep.field.q, rep.n)
        Q = quadratic_value(rep, v)
        for g in rep.gen_arrays:
            assert quadratic_value(rep, dot(rep.field, v[None], g)[0]) == Q


def test_generators_have_determinant_one():
    from orbdiam.linalg import determinant
    for desc in ["sl:n=3,q=4", "sp:n=4,q=5", "su:n=3,q=16"]:
        assert all(determinant(g) == 1 for g in build(desc).generators)


def test_fdpm_dimensions_and_coords():
    assert fully_deleted_rep(8, q0=2).n == 6
    assert fully_deleted_rep(7, q0=2).n == 6
    assert fully_deleted_rep(6, q0=3).n == 4
    F = field_of_order(3)
    # (1,1,1,1,1,1) lies in T and vanishes in the quotient
    assert not fdpm_coords(F, 6, [1] * 6).any()
    assert fdpm_coords(F, 5, [1, -1, 0, 0, 0]).tolist() == [1, 0, 0, 0]
    with pytest.raises(RepError):
        fdpm_coords(F, 5, [1, 0, 0, 0, 0])


def test_fdpm_action_matches_permutation_action():
    """b_i g in coordinates equals the coordinates of the permuted vector."""
    r, q0 = 6, 3
    rep = fully_deleted_rep(r, False, q0)
    F = rep.field
    perm = perm_rep(r, False, q0)
    rng = np.random.default_rng(5)
    for _ in range(20):
        w = rng.integers(0, 3, r)
        w[-1] = (-w[:-1].sum()) % 3
        c = fdpm_coords(F, r, w)
        for g, P in zip(rep.gen_arrays, perm.gen_arrays):
            assert np.array_equal(dot(F, c[None], g)[0], fdpm_coords(F, r, dot(F, w[None], P)[0]))


def test_irreducibility_spin_check():
    assert spin_check_irreducible(build("fdpm:r=6,q=2"))
    assert not spin_check_irreducible(perm_rep(5, q0=2))
    assert spin_check_irreducible(build("sl:n=5,q=2;functor=ext2"))


def test_scalars():
    rep = adjoin_scalars(build("fdpm:r=5,q=7"), 3)
    assert not rep.contains_scalars and rep.descriptor.endswith("scalars=3")
    # the full group of order q-1 = 4 in GF(5)
    assert adjoin_scalars(build("fdpm:r=5,q=5"), 4).contains_scalars
    assert adjoin_scalars(build("fdpm:r=5,q=5")).contains_scalars
    with pytest.raises(RepError):
        adjoin_scalars(build("fdpm:r=5,q=5"), 3)


def test_ree_stabilizer_generators():
    rep = ree_stabilizer_rep(27)
    assert rep.n == 7 and len(rep.generators) == 4
    assert rep.vectors["e-3"].coords.tolist() == [1, 0, 0, 0, 0, 0, 0]
    # the stabilizer fixes the line <e_-3>
    e = rep.vectors["e-3"].coords
    for g in rep.gen_arrays:
        img = dot(rep.field, e[None], g)[0]
        assert img[1:].sum() == 0 and img[0] != 0


def test_descriptor_parsing():
    d = parse_descriptor("sl:n=5,q=2^1;functor=ext2;scalars")
    assert d.family == "sl" and d.params == {"n": 5, "q": 2} and d.functor == "ext2" and d.scalars == 0
    assert parse_descriptor("fdpm:r=5,q=5;scalars=4").scalars == 4
    for bad in ["sl n=5", "xx:n=1", "sl:n=5", "sl:n=5,q=two", "sl:n=5,q=2;colour=red", "sl:n=5,q=2,z=1"]:
        with pytest.raises(DescriptorError) as e:
            parse_descriptor(bad)
        assert "descriptor grammar" in str(e.value)


def test_build_rejects_bad_parameters():
    with pytest.raises(DescriptorError):
        build("su:n=3,q=8")
    with pytest.raises(DescriptorError):
        build("fdpm:r=4,q=2")
    with pytest.raises(DescriptorError):
        build("suzuki:q=4")


def test_generator_file_roundtrip(tmp_path):
    rep = build("su:n=3,q=4;scalars")
    path = tmp_path / "su.txt"
    export_rep(rep, path)
    back = import_rep(path)
    assert back.field == rep.field and back.n == rep.n
    assert [g for g in back.generators] == [g for g in rep.generators]
    assert back.contains_scalars


@pytest.mark.parametrize("text,line", [
    ("field 3 1\ndim 2\nname X\nscalars no\ngenerator\n1 0\n0 0\n", 5),
    ("field 3 1\ndim 2\nname X\nscalars no\ngenerator\n1 0 0\n0 1\n", 6),
    ("field 3 1\ndim 2\nname X\nscalars maybe\n", 4),
    ("field 3 1\ndimension 2\n", 2),
    ("field 3 1\ndim 2\nname X\nscalars no\ngenerator\n1 5\n0 1\n", 6),
])
def test_generator_file_errors_report_lines(tmp_path, text, line):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(GenFileError) as e:
        import_rep(path)
    assert f"line {line}" in str(e.value)


def test_generator_file_scalars_flag_adds_scalars(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("field 5 1\ndim 2\nname toy\nscalars yes\ngenerator\n1 1\n0 1\ngenerator\n0 1\n4 0\n")
    rep = import_rep(path)
    assert rep.contains_scalars and len(rep.generators) == 3
    assert group_order(rep) == 120 * 2  # SL2(5) with scalars of order 4: |SL2(5)|*4/2
