"""
Tests for the crystal structure, the clusters and the coupling tables.
"""

import json
import math

import numpy as np
import pytest

from dtcx.lattice.cluster import Orientation
from dtcx.lattice.cluster import build_cluster
from dtcx.lattice.cluster import orientation_equivalents
from dtcx.lattice.coupling import b_rms
from dtcx.lattice.coupling import coupling_constant
from dtcx.lattice.coupling import coupling_table
from dtcx.lattice.coupling import export_coupling_table
from dtcx.lattice.coupling import pair_couplings
from dtcx.lattice.species import H1
from dtcx.lattice.species import N14
from dtcx.lattice.species import P31
from dtcx.lattice.species import species_by_name
from dtcx.lattice.structure import SiteGroup
from dtcx.lattice.structure import UnitCell
from dtcx.lattice.structure import build_supercell
from dtcx.lattice.symmetry import symmetry_report
from dtcx.test.helper import brute_force_counts
from dtcx.test.helper import dipolar_coupling
from dtcx.utils.exceptions import InvalidArgumentError

RADIUS = 20.25


@pytest.mark.parametrize("origin", [0, 1, 2, 3])
def test_partner_counts(origin):
    """
    The ball of radius 20.25 Å holds 325 phosphorus with the center, 322 nitrogen and 1932 protons, whichever
    phosphorus is the center.
    """
    cluster = build_cluster(origin, RADIUS)
    assert cluster.count(SiteGroup.PHOSPHORUS) == 324
    assert cluster.census() == {"phosphorus": 325, "nitrogen": 322, "hydrogen": 1932}
    assert cluster.count(SiteGroup.AMMONIUM_H) == 4 * 322
    assert cluster.count(SiteGroup.ACID_H) == 644


@pytest.mark.parametrize("origin", [0, 1, 2, 3])
def test_acid_protons_bridge(origin):
    """
    Every phosphorus has four acid protons at 2.371 Å and no other acid proton within 3.5 Å.
    """
    cluster = build_cluster(origin, 3.5)
    acid = cluster.positions[[g is SiteGroup.ACID_H for g in cluster.groups]]
    assert len(acid) == 4
    assert np.linalg.norm(acid, axis=1) == pytest.approx([2.3709] * 4, abs=1e-4)


@pytest.mark.parametrize("origin", [0, 2])
def test_counts_match_scan(origin):
    """
    The vectorized cluster agrees with a site by site scan.
    """
    cluster = build_cluster(origin, 12.0)
    expected = brute_force_counts(12.0, origin)
    for group in SiteGroup:
        assert cluster.count(group) == expected[group]


def test_cluster_arguments():
    """
    Invalid origins and radii are rejected.
    """
    with pytest.raises(InvalidArgumentError):
        build_cluster(4, RADIUS)
    with pytest.raises(InvalidArgumentError):
        build_cluster(0, 0.0)


def test_unit_cell():
    """
    The built-in cell has four phosphorus, four nitrogen, sixteen ammonium and eight acid proton sites.
    """
    cell = UnitCell.adp()
    assert [cell.site_count(g) for g in SiteGroup] == [4, 4, 16, 8]
    fractional, _ = cell.fractional()
    assert np.all((fractional >= 0) & (fractional < 1))


def test_supercell():
    """
    A 2x2x2 supercell holds eight copies of every site inside the doubled box.
    """
    sites = build_supercell(2)
    assert len(sites) == 8 * 32
    assert sum(1 for s in sites if s.group is SiteGroup.PHOSPHORUS) == 32
    assert sites[0].species is P31
    positions = np.array([s.position for s in sites])
    assert np.all(positions >= 0)
    assert np.all(positions < 2 * UnitCell.adp().lengths)
    with pytest.raises(InvalidArgumentError):
        build_supercell(0)


def test_cartesian_sites():
    """
    Fractional sites scale by the lattice lengths.
    """
    cell = UnitCell.adp()
    assert cell.to_cartesian(cell.sites[SiteGroup.PHOSPHORUS][2]) == pytest.approx([3.74985, 0.0, 1.88735], abs=1e-12)
    assert len(build_supercell(3)) == 27 * 32


def _sorted_rows(positions):
    return sorted(tuple(row) for row in np.round(positions, 6) + 0.0)


@pytest.mark.parametrize("group", [SiteGroup.PHOSPHORUS, SiteGroup.NITROGEN])
def test_sublattice_inversion(group):
    """
    Seen from the third phosphorus the phosphorus and nitrogen sublattices are the inversion of those seen from the
    first, and both are unchanged by a half turn about c, so their couplings agree at any orientation.
    """
    first = build_cluster(0, 12.0)
    third = build_cluster(2, 12.0)
    near = first.positions[[g is group for g in first.groups]]
    far = third.positions[[g is group for g in third.groups]]
    assert _sorted_rows(far) == _sorted_rows(-near)
    assert _sorted_rows(near * [-1.0, -1.0, 1.0]) == _sorted_rows(near)
    orientation = Orientation(50.0, 33.0)
    for r_vec in near[:10]:
        species = group.species
        assert coupling_constant(-r_vec, species, orientation) == pytest.approx(
            coupling_constant(r_vec, species, orientation), rel=1e-12)


def test_unit_cell_override(tmp_path):
    """
    A unit cell loaded from a file replaces the built-in structure.
    """
    path = tmp_path / "cell.json"
    path.write_text(json.dumps({"a": 5.0, "b": 5.0, "c": 5.0, "sites": {"P": [[0, 0, 0]], "N": [[0, 0, 0.5]]}}))
    cell = UnitCell.from_json(str(path))
    cluster = build_cluster(0, 5.0, cell)
    assert cluster.count(SiteGroup.PHOSPHORUS) == 6
    assert cluster.count(SiteGroup.NITROGEN) == 2
    path.write_text(json.dumps({"a": 5.0}))
    with pytest.raises(InvalidArgumentError):
        UnitCell.from_json(str(path))


@pytest.mark.parametrize(
    "r_vec, species, theta, phi", [
        ((3.0, 1.0, 2.0), P31, 60.0, 0.0),
        ((0.0, 0.0, 4.5), H1, 0.0, 0.0),
        ((-2.0, 5.0, 1.0), N14, 50.0, 33.0),
    ]
)
def test_coupling_constant(r_vec, species, theta, phi):
    """
    The coupling agrees with the formula evaluated term by term.
    """
    expected = dipolar_coupling(r_vec, P31.gamma, species.gamma, theta, phi)
    assert coupling_constant(r_vec, species, Orientation(theta, phi)) == pytest.approx(expected, rel=1e-12)


def test_magic_angle():
    """
    A vector at the magic angle to the field is not coupled.
    """
    angle = math.acos(1.0 / math.sqrt(3.0))
    r_vec = (3.0 * math.sin(angle), 0.0, 3.0 * math.cos(angle))
    assert abs(coupling_constant(r_vec, P31, Orientation(0.0, 0.0))) < 1e-9


def test_parallel_pair():
    """
    Two phosphorus spins 1 nm apart along the field are coupled by about -124 rad/s.
    """
    b = coupling_constant((0.0, 0.0, 10.0), P31, Orientation(0.0, 0.0))
    assert b == pytest.approx(-123.7, rel=1e-3)


def test_coupling_table():
    """
    The table has one row per partner and finds its strongest rows in order of decreasing magnitude.
    """
    orientation = Orientation(60.0, 0.0)
    cluster = build_cluster(0, 10.0)
    table = coupling_table(cluster, orientation)
    assert len(table) == len(cluster)
    rows = table.strongest(5, SiteGroup.PHOSPHORUS)
    magnitudes = [abs(table.couplings[r]) for r in rows]
    assert magnitudes == sorted(magnitudes, reverse=True)
    assert all(table.groups[r] is SiteGroup.PHOSPHORUS for r in rows)
    assert magnitudes[0] == pytest.approx(np.max(np.abs(table.values(SiteGroup.PHOSPHORUS))))


def test_pair_couplings():
    """
    The pair matrix is symmetric with a zero diagonal and its first row matches the coupling table formula.
    """
    positions = np.array([[0.0, 0.0, 0.0], [3.0, 1.0, 2.0], [-1.0, 4.0, 0.5]])
    orientation = Orientation(60.0, 0.0)
    matrix = pair_couplings(positions, [P31, P31, H1], orientation)
    assert np.array_equal(matrix, matrix.T)
    assert np.all(np.diag(matrix) == 0)
    assert matrix[0, 2] == pytest.approx(coupling_constant(positions[2], H1, orientation), rel=1e-12)
    shared = np.array([[0.0, 0.0, 0.0], [3.0, 1.0, 2.0], [3.0, 1.0, 2.0]])
    with pytest.raises(InvalidArgumentError):
        pair_couplings(shared, [P31, H1, H1], orientation)
    selected = np.array([[False, True, True], [True, False, False], [True, False, False]])
    matrix = pair_couplings(shared, [P31, H1, H1], orientation, selected)
    assert matrix[1, 2] == 0
    assert matrix[0, 1] == matrix[0, 2] != 0


def test_b_rms():
    """
    The local field is the root sum of squares.
    """
    assert b_rms([3.0, -4.0]) == pytest.approx(5.0)
    assert b_rms([]) == 0.0


def test_export(tmp_path):
    """
    The exported CSV has a header and one line per partner.
    """
    table = coupling_table(build_cluster(0, 8.0), Orientation(60.0, 0.0))
    csv_path, json_path = export_coupling_table(table, str(tmp_path))
    with open(csv_path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    assert lines[0] == "partner_index,species,x_A,y_A,z_A,b_rad_per_s"
    assert len(lines) == len(table) + 1
    with open(json_path, encoding="utf-8") as handle:
        assert json.load(handle)["rows"] == len(table)


def test_symmetry_in_plane():
    """
    With the field in the crystal x-z plane every sublattice, the acid protons included, looks the same from all four
    phosphorus sites.
    """
    report = symmetry_report(RADIUS, Orientation(60.0, 0.0))
    assert report.sublattices_invariant
    assert report.acid_invariant
    for orientation in orientation_equivalents():
        assert symmetry_report(12.0, orientation).acid_invariant


def test_symmetry_general():
    """
    Off the symmetry planes the acid protons split the four sites into two pairs.
    """
    report = symmetry_report(RADIUS, Orientation(50.0, 33.0))
    assert report.sublattices_invariant
    assert not report.acid_invariant
    assert sorted(report.agreeing_pairs(SiteGroup.ACID_H)) == [(0, 1), (2, 3)]
    assert report.to_json()["acid_invariant"] is False


def test_orientations():
    """
    Orientations parse from text, reject out of range angles and come in families of eight.
    """
    assert Orientation.parse("60,0") == Orientation(60.0, 0.0)
    with pytest.raises(InvalidArgumentError):
        Orientation.parse("60")
    with pytest.raises(InvalidArgumentError):
        Orientation(200.0, 0.0)
    equivalents = orientation_equivalents()
    assert len(equivalents) == 8
    assert Orientation(120.0, 270.0) in equivalents


def test_species():
    """
    Species are looked up by name and carry their spin.
    """
    assert species_by_name("N14").multiplicity == 3
    assert P31.larmor_frequency() == pytest.approx(68.940e6)
    with pytest.raises(InvalidArgumentError):
        species_by_name("C13")
