from __future__ import annotations

import pytest

from ringwaves.burnside import BurnsideElement, multiply_oracle
from ringwaves.degrees import (
    basic_degree,
    isotropy_types,
    linear_iso_degree,
    maximal_kind_types,
    twisted_basic_degree,
    twisted_fixed_dim,
)
from ringwaves.groups import dihedral_lattice, gamma_prime_lattice
from ringwaves.reps import DressedIrrep, GIrrep, character_table
from ringwaves.twisted import fold, quotient_weyl_oracle


class PlainRep:
    """Adapter exposing a bare D_N irrep over the dihedral lattice."""

    def __init__(self, ir):
        self.ir = ir
        self.label = ir.label

    def char(self, g):
        return self.ir.char(g)


def test_basic_degree_sign_rep_d3():
    lat = dihedral_lattice(3)
    sign = {ir.label: ir for ir in character_table(3)}["sign"]
    deg = basic_degree(PlainRep(sign), lat)
    # classes in descending order: (D3), (Z3), (Z2), (1)
    assert deg.as_dict() == {0: 1, 1: -1}
    assert multiply_oracle(deg, deg) == BurnsideElement.one(lat)


def test_basic_degree_trivial_rep_d3():
    lat = dihedral_lattice(3)
    triv = character_table(3)[0]
    deg = basic_degree(PlainRep(triv), lat)
    assert deg.as_dict() == {0: -1}
    assert deg * deg == BurnsideElement.one(lat)


def test_involutivity_all_dressed_irreps():
    for n in (3, 4, 5, 6):
        lat = gamma_prime_lattice(n)
        one = BurnsideElement.one(lat)
        for ir in character_table(n):
            for bit in (0, 1):
                deg = basic_degree(DressedIrrep(ir, bit), lat)
                assert deg * deg == one, (n, ir.label, bit)


def test_linear_iso_degree_cases():
    lat = dihedral_lattice(3)
    sign = PlainRep({ir.label: ir for ir in character_table(3)}["sign"])
    assert linear_iso_degree([], lat) == BurnsideElement.one(lat)
    assert linear_iso_degree([(sign, 1)], lat) == basic_degree(sign, lat)
    assert linear_iso_degree([(sign, 2)], lat) == BurnsideElement.one(lat)


def test_twisted_degree_w1_v01_single_type(ctx3):
    rep = GIrrep(1, DressedIrrep(character_table(3)[0], 1))
    deg = twisted_basic_degree(rep, ctx3)
    mk = maximal_kind_types(rep, ctx3)
    assert len(mk) == 1
    t = mk[0]
    assert deg.coeff(t) == 1
    assert twisted_fixed_dim(ctx3, t.kphi, rep.dressed) == 2
    assert ctx3.weyl_t(t) == 1
    assert quotient_weyl_oracle(ctx3, t) == 1


def test_twisted_degree_rejects_stationary_folding(ctx3):
    rep = GIrrep(0, DressedIrrep(character_table(3)[0], 0))
    with pytest.raises(ValueError):
        twisted_basic_degree(rep, ctx3)


def test_maximal_coefficients_positive(ctx3, ctx7):
    for n_ring, ctx in ((3, ctx3), (7, ctx7)):
        for ir in character_table(n_ring):
            for bit in (0, 1):
                rep = GIrrep(1, DressedIrrep(ir, bit))
                deg = twisted_basic_degree(rep, ctx)
                for t in maximal_kind_types(rep, ctx):
                    assert deg.coeff(t) >= 1


def test_maximal_closed_form(ctx3):
    # at a maximal type nothing larger contributes: coeff = dim/(2 |W/S1|)
    for ir in character_table(3):
        for bit in (0, 1):
            rep = GIrrep(2, DressedIrrep(ir, bit))
            deg = twisted_basic_degree(rep, ctx3)
            for t in maximal_kind_types(rep, ctx3):
                dim = twisted_fixed_dim(ctx3, t.kphi, rep.dressed)
                assert 2 * ctx3.weyl_t(t) * deg.coeff(t) == dim


def test_fold_relates_twisted_degrees(ctx3):
    for ir in character_table(3):
        for bit in (0, 1):
            rep1 = GIrrep(1, DressedIrrep(ir, bit))
            for s in (2, 3, 4):
                reps = GIrrep(s, DressedIrrep(ir, bit))
                assert fold(s, twisted_basic_degree(rep1, ctx3)) == twisted_basic_degree(
                    reps, ctx3
                )


def test_d7_geometric_has_three_maximal_kinds(ctx7):
    rep = GIrrep(1, DressedIrrep(character_table(7)[1], 0))
    mk = maximal_kind_types(rep, ctx7)
    assert len(mk) == 3


def test_maximal_types_are_antichain(ctx3):
    for ir in character_table(3):
        rep = GIrrep(1, DressedIrrep(ir, 0))
        mk = maximal_kind_types(rep, ctx3)
        for a in mk:
            for b in mk:
                if a != b:
                    assert ctx3.n_t(a, b) == 0


def test_isotropy_types_have_positive_dims(ctx3):
    rep = GIrrep(1, DressedIrrep(character_table(3)[1], 0))
    iso = isotropy_types(rep, ctx3)
    assert all(d > 0 for _, d in iso)
    # every maximal kind is an isotropy type
    mk = set(maximal_kind_types(rep, ctx3))
    assert mk <= {t for t, _ in iso}
