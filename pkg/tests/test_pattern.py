import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bifol.pattern import (
    PLUS, MINUS, FinitePattern, Leaf, Mode, Point,
    PreconditionError, Singularity, UnknownIdError,
)
from bifol.periodic import generate, ladder_chords, _chord_pattern
from bifol.randgen import random_pattern

from oracles import (
    geometric_intersects, geometric_separates_leaves, geometric_separates_point,
    oracle_pseudo_interval_set, all_monotone_paths,
)


# -- validation ------------------------------------------------------------------

def test_grid3_valid(grid3):
    assert grid3.validate().ok


def test_same_sign_crossing_rejected():
    p = FinitePattern(["a", "b", "c", "d"],
                      [Leaf("p1", PLUS, ("a", "c")), Leaf("p2", PLUS, ("b", "d"))])
    rep = p.validate()
    assert not rep.ok
    assert any(v.rule == "same-sign crossing" for v in rep.violations)


def test_nonsep_with_common_transversal_rejected():
    # add one chord to the shipped two-block ladder crossing both pair members
    ch, nonsep = ladder_chords(2)
    ch.append(("bad", MINUS, [("bot", 30), ("top", 90)]))  # straddles u1 and w1
    p = _chord_pattern(ch, nonseparated=nonsep)
    rep = p.validate()
    assert not rep.ok
    assert any(v.rule == "nonseparated pair has common transversal"
               for v in rep.violations)


def test_nonsep_with_separator_rejected():
    ch, nonsep = ladder_chords(2)
    ch.append(("sep", PLUS, [("bot", 50), ("top", 50)]))  # between u1 and w1
    p = _chord_pattern(ch, nonseparated=nonsep)
    rep = p.validate()
    assert any(v.rule == "nonseparated pair separated by same-sign leaf"
               for v in rep.violations)


def test_double_crossing_rejected(prong3):
    # a chord spanning two non-adjacent sectors of the singular leaf
    leaves = [Leaf(l.id, l.sign, l.endpoints) for l in prong3.leaves.values()]
    leaves.append(Leaf("bad", MINUS, ("c2", "c18")))
    p = FinitePattern(prong3.boundary, leaves, prong3.singularities)
    rep = p.validate()
    assert not rep.ok


def test_degenerate_two_prong_rejected():
    p = FinitePattern(["a", "b", "c", "d"],
                      [Leaf("p", PLUS, ("a", "c")), Leaf("m", MINUS, ("b", "d"))],
                      [Singularity("p", "m")])
    rep = p.validate()
    assert any("< 3" in v.rule for v in rep.violations)


def test_shared_endpoint_same_sign_rejected():
    p = FinitePattern(["a", "b", "c"],
                      [Leaf("p1", PLUS, ("a", "b")), Leaf("p2", PLUS, ("a", "c"))])
    assert not p.validate().ok


# -- relations --------------------------------------------------------------------

def test_grid3_relations(grid3):
    for i in range(3):
        for j in range(3):
            assert grid3.intersects(f"v{i}", f"h{j}")
    assert grid3.perfect_fits() == []


def test_loz1_relations(loz1):
    crossings = [(a, b) for a, b in itertools.combinations(sorted(loz1.leaves), 2)
                 if loz1.intersects(a, b)]
    assert len(crossings) == 2
    assert len(loz1.perfect_fits()) == 2


def test_prong3_singular_crossing(prong3):
    assert prong3.intersects("sp", "sm")


def test_unknown_leaf_errors(grid3):
    with pytest.raises(UnknownIdError):
        grid3.intersects("v0", "nope")


def test_intersects_matches_geometry_on_regular_patterns():
    for seed in range(25):
        p = random_pattern(seed, max_leaves=14)
        for a, b in itertools.combinations(sorted(p.leaves), 2):
            if p.leaves[a].sign == p.leaves[b].sign:
                assert not p.intersects(a, b)
            else:
                assert p.intersects(a, b) == geometric_intersects(p, a, b), \
                    (seed, a, b)


@given(st.integers(min_value=0, max_value=500))
@settings(max_examples=40, deadline=None)
def test_linking_symmetry(seed):
    p = random_pattern(seed, max_leaves=12)
    for a, b in itertools.combinations(sorted(p.leaves), 2):
        assert p.intersects(a, b) == p.intersects(b, a)


# -- separation ----------------------------------------------------------------------

def test_grid3_separates_leaves(grid3):
    assert grid3.separates_leaves("v1", "v0", "v2")
    assert not grid3.separates_leaves("v0", "v1", "v2")


def test_separates_leaves_mixed_sign_error(grid3):
    with pytest.raises(PreconditionError):
        grid3.separates_leaves("h0", "v0", "v1")


def test_ladder3_pairs_never_separated(ladder3):
    for pair in ladder3.nonseparated:
        l1, l2 = sorted(pair)
        for m in ladder3.leaf_ids(PLUS):
            if m in (l1, l2):
                continue
            assert not ladder3.separates_leaves(m, l1, l2)


def test_separates_leaves_matches_geometry():
    for seed in range(20):
        p = random_pattern(seed, max_leaves=12)
        for sign in (PLUS, MINUS):
            ids = p.leaf_ids(sign)
            for m, l1, l2 in itertools.permutations(ids, 3):
                assert p.separates_leaves(m, l1, l2) == \
                    geometric_separates_leaves(p, m, l1, l2), (seed, m, l1, l2)


# -- point separation ------------------------------------------------------------------

def test_point_on_leaf_convention(grid3):
    # x lies on the leaf, y off it: separated
    assert grid3.separates_point("v0", "x00", "x22")
    # same point: never separated
    assert not grid3.separates_point("v0", "x00", "x00")
    # both crossings on the same horizontal side of h1
    assert not grid3.separates_point("h1", "x00", "x20")


def test_point_separation_matches_geometry():
    for seed in range(20):
        p = random_pattern(seed, max_leaves=12)
        pts = [p.points[q] for q in sorted(p.points)]
        for a, b in itertools.combinations(pts, 2):
            for leaf in sorted(p.leaves):
                assert p.separates_point(leaf, a, b) == \
                    geometric_separates_point(p, leaf, a, b), (seed, leaf, a.id, b.id)


def test_region_point_faces(grid3):
    q = Point.region("q", grid3.boundary[0])
    # the gap after the first boundary label sits outside every chord
    for leaf in grid3.leaves:
        assert grid3._face_of_point(q, leaf) is not None


# -- pseudo-intervals ---------------------------------------------------------------------

def test_grid3_interval(grid3):
    pi = grid3.pseudo_interval("v0", "v2")
    assert pi.separators == ("v1",)
    assert pi.n_blocks == 1


def test_ladder_blocks(ladder2, ladder3):
    assert ladder2.pseudo_interval("x", "y").n_blocks == 2
    assert ladder3.pseudo_interval("x", "y").n_blocks == 3


def test_nonseparated_pair_two_degenerate_blocks(ladder2):
    pi = ladder2.pseudo_interval("u1", "w1")
    assert pi.blocks == (("u1",), ("w1",))


def test_pseudo_interval_same_leaf(grid3):
    pi = grid3.pseudo_interval("v0", "v0")
    assert pi.blocks == (("v0",),)


def test_mixed_sign_error(grid3):
    with pytest.raises(PreconditionError):
        grid3.pseudo_interval("v0", "h0")


def _check_oracle(p, x, y):
    pi = p.pseudo_interval(x, y)
    assert set(pi.chain) == oracle_pseudo_interval_set(p, x, y)
    # minimality: every block inside every monotone path
    paths = all_monotone_paths(p, x, y)
    for block in pi.blocks:
        for path in paths:
            assert set(block) <= set(path)
    # disjointness
    for b1, b2 in itertools.combinations(pi.blocks, 2):
        assert not (set(b1) & set(b2))


def test_interval_oracle_fixtures(grid3, ladder2, ladder3):
    _check_oracle(grid3, "v0", "v2")
    _check_oracle(ladder2, "x", "y")
    _check_oracle(ladder3, "x", "y")
    _check_oracle(ladder3, "u1", "w2")


def test_interval_oracle_random():
    for seed in range(30):
        p = random_pattern(seed, max_leaves=12)
        for sign in (PLUS, MINUS):
            ids = sorted(p.leaf_ids(sign))
            for x, y in itertools.combinations(ids, 2):
                _check_oracle(p, x, y)


def test_separator_order_total():
    # betweenness depths are pairwise distinct on every fixture pair
    for seed in range(20):
        p = random_pattern(seed, max_leaves=12)
        for sign in (PLUS, MINUS):
            ids = sorted(p.leaf_ids(sign))
            for x, y in itertools.combinations(ids, 2):
                seps = p.separator_chain(x, y)
                for m1, m2 in itertools.combinations(seps, 2):
                    assert p._separates(m1, x, m2) != p._separates(m2, x, m1)


# -- quadrants and prongs -----------------------------------------------------------------

def test_prong3_quadrants(prong3):
    quads, inc = prong3.faces_and_quadrants(prong3.singularities[0])
    assert len(quads) == 6
    # each minus satellite crosses one ray: meets its two flanking quadrants
    assert len(inc["m0"]) == 2


def test_regular_crossing_four_quadrants(grid3):
    quads, _ = grid3.quadrants_of_crossing("v1", "h1")
    assert len(quads) == 4


def test_satellite_in_single_quadrant():
    p = generate("prong", 3)
    leaves = [Leaf(l.id, l.sign, l.endpoints) for l in p.leaves.values()]
    leaves.append(Leaf("sat", PLUS, ("c1", "c2")))
    q = FinitePattern(p.boundary, leaves, p.singularities)
    assert q.validate().ok
    inc = q.quadrant_incidence("sp", "sm", "sat")
    assert len(inc) == 1


def test_dividing_prong_examples():
    pd, pn = generate("prongdiv"), generate("prongnondiv")
    assert pd.is_dividing_prong(pd.singularities[0], "x", "y") is True
    assert pn.is_dividing_prong(pn.singularities[0], "x", "y") is False


def test_dividing_prong_adjacent_quadrant_false():
    # y in the quadrant right across the prong ray from x's: rejected by the
    # five-quadrant buffer rule
    pn = generate("prongnondiv")
    leaves = [Leaf(l.id, l.sign, l.endpoints) for l in pn.leaves.values()
              if l.id not in ("y", "ty")]
    leaves.append(Leaf("y", PLUS, ("c42", "c46")))
    q = FinitePattern(pn.boundary, leaves, pn.singularities)
    assert q.validate().ok
    assert q.is_dividing_prong(q.singularities[0], "x", "y") is False


def test_dividing_prong_precondition():
    pd = generate("prongdiv")
    with pytest.raises(PreconditionError):
        pd.is_dividing_prong(pd.singularities[0], "x", "x")


# -- partial linking -------------------------------------------------------------------------

def test_partial_link_fixture():
    p = generate("partlink")
    assert p.partially_linked("a", "b") is True


def test_grid3_fully_linked(grid3):
    assert grid3.partially_linked("x00", "x22") is False


def test_loz1_corners_not_partially_linked(loz1):
    assert loz1.partially_linked("ca", "cb") is False


def test_partial_link_rejects_region_points(grid3):
    q = Point.region("q", grid3.boundary[0])
    with pytest.raises(PreconditionError):
        grid3.partially_linked(q, "x00")


# -- lozenges ----------------------------------------------------------------------------------

def test_grid3_no_lozenges(grid3):
    rep = grid3.detect_lozenges()
    assert rep.lozenges == ()
    assert rep.corners == frozenset()


def test_loz1_detection(loz1):
    rep = loz1.detect_lozenges()
    assert len(rep.lozenges) == 1
    assert len(rep.chains) == 1
    assert len(rep.corners) == 2


def test_chain3_detection(chain3):
    rep = chain3.detect_lozenges()
    assert len(rep.lozenges) == 3
    assert len(rep.chains) == 1


def test_chain_quadrant_flag_clear_on_fixtures(chain3, loz1, prong3):
    for p in (chain3, loz1, prong3):
        rep = p.detect_lozenges()
        assert not any(rep.chain_quadrant_flags)


def test_prong_mode_blocks_share_prongs():
    pc = generate("prongchain")
    pi = pc.pseudo_interval("x", "y", Mode.PRONG)
    assert pi.blocks == (("x", "pa"), ("pa", "pb"), ("pb", "y"))
    # consecutive blocks overlap exactly in the dividing prong
    for b1, b2 in zip(pi.blocks, pi.blocks[1:]):
        assert set(b1) & set(b2) == {b1[-1]}


def test_claim_flag_clear_on_all_shipped_fixtures():
    from bifol.fixtures import MANIFEST, regenerate
    from bifol.periodic import PeriodicPattern

    for name in sorted(MANIFEST):
        p = regenerate(name)
        if isinstance(p, PeriodicPattern):
            p = p.materialize_window(0, 3)
        rep = p.detect_lozenges()
        assert not any(rep.chain_quadrant_flags), name


def test_star_crossing_symmetry():
    # crossing is symmetric also in the presence of singular leaves; query
    # both orders on fresh patterns so the cache cannot mask asymmetry
    for kind in ("prong", "prongdiv", "prongchain"):
        p1 = generate(kind) if kind != "prong" else generate(kind, 3)
        p2 = generate(kind) if kind != "prong" else generate(kind, 3)
        ids = sorted(p1.leaves)
        for a, b in itertools.combinations(ids, 2):
            assert p1.intersects(a, b) == p2.intersects(b, a), (kind, a, b)


def _prong_chain_leaves(valid):
    # corner chain hugging a three-prong: minus leaves cross one prong ray,
    # plus leaves cross one ray of the partner, quadrant reach q0..q2.  The
    # invalid variant adds a leaf jumping non-adjacent rays, which stretches
    # the chain past three quadrants; no honest plane realizes that.
    leaves = [("sp", PLUS, [0, 16, 32]), ("sm", MINUS, [8, 24, 40]),
              ("m0", MINUS, [13, 18]), ("m1", MINUS, [11, 22]),
              ("p0", PLUS, [17, 22]), ("p1", PLUS, [7, 13])]
    if not valid:
        leaves += [("mc", MINUS, [17, 42]), ("pc", PLUS, [18, 44])]
    from bifol.periodic import _circle_pattern

    return _circle_pattern(48, leaves,
                           singularities=[Singularity("sp", "sm")])


def test_chain_near_prong_within_three_quadrants():
    p = _prong_chain_leaves(valid=True)
    assert p.validate().ok, str(p.validate())
    rep = p.detect_lozenges()
    assert len(rep.lozenges) == 1 and len(rep.chains) == 1
    assert rep.chain_quadrant_flags == (False,)


def test_unrealizable_chain_spread_is_flagged_and_rejected():
    p = _prong_chain_leaves(valid=False)
    rep = p.validate()
    assert not rep.ok  # no honest plane realizes the stretched chain
    loz = p.detect_lozenges()
    assert any(loz.chain_quadrant_flags)


def test_quadrant_jumping_leaves_rejected():
    # a leaf whose endpoints sit in non-adjacent sectors of a prong would
    # have to cross the same-family singular leaf, which validation forbids
    pd = generate("prongdiv")
    leaves = [Leaf(l.id, l.sign, l.endpoints) for l in pd.leaves.values()]
    leaves.append(Leaf("bad", PLUS, ("c11", "c34")))
    q = FinitePattern(pd.boundary, leaves, pd.singularities)
    rep = q.validate()
    assert any(v.rule == "same-sign crossing" and "bad" in v.subjects
               for v in rep.violations)
