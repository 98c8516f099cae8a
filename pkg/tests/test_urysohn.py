import random
from fractions import Fraction as F
from itertools import combinations

import pytest

import umr


MENU2 = umr.menu_of(1, F(1, 2))
MENU3 = umr.menu_of(1, F(1, 2), F(1, 4))


def test_menu_validation():
    with pytest.raises(ValueError):
        umr.menu_of()
    with pytest.raises(ValueError):
        umr.menu_of(1, 2)
    with pytest.raises(ValueError):
        umr.menu_of(1, 0)


def test_distance_examples():
    zero = umr.ZERO_POINT
    assert umr.qs_distance(zero, zero, MENU2) == 0
    y = umr.qs_point({F(1, 2): 3})
    assert umr.qs_distance(zero, y, MENU2) == F(1, 2)
    x = umr.qs_point({F(1): 2})
    y = umr.qs_point({F(1): 2, F(1, 2): 5})
    assert umr.qs_distance(x, y, MENU2) == F(1, 2)


def test_lex_examples():
    zero = umr.ZERO_POINT
    assert umr.qs_lex_compare(zero, zero, MENU2) == umr.EQUAL
    assert umr.qs_lex_compare(zero, umr.qs_point({F(1, 2): 3}), MENU2) == umr.LESS
    x = umr.qs_point({F(1): 2})
    y = umr.qs_point({F(1): 1, F(1, 2): 100})
    assert umr.qs_lex_compare(x, y, MENU2) == umr.GREATER


def test_support_outside_menu_is_rejected():
    stray = umr.qs_point({F(1, 3): 1})
    with pytest.raises(ValueError):
        umr.qs_distance(stray, umr.ZERO_POINT, MENU2)


def test_distance_is_an_ultrametric_on_samples():
    rng = random.Random(11)
    points = [umr.random_point(MENU3, rng) for _ in range(40)]
    for x, y, z in combinations(points, 3):
        dxz = umr.qs_distance(x, z)
        assert dxz <= max(umr.qs_distance(x, y), umr.qs_distance(y, z))
    for x, y in combinations(points, 2):
        assert (umr.qs_distance(x, y) == 0) == (x == y)
        assert umr.qs_distance(x, y) == umr.qs_distance(y, x)


def test_lex_is_a_total_order_with_convex_balls():
    rng = random.Random(12)
    points = []
    while len(points) < 30:
        p = umr.random_point(MENU3, rng)
        if p not in points:
            points.append(p)
    points.sort(key=lambda p: tuple(p.value_at(s) for s in MENU3))
    for i, j in combinations(range(len(points)), 2):
        assert umr.qs_lex_compare(points[i], points[j]) == umr.LESS
    # every ball is an interval of the sorted sample
    for center in points:
        for r in MENU3:
            hits = [
                i for i, p in enumerate(points) if umr.qs_distance(p, center) <= r
            ]
            assert hits == list(range(hits[0], hits[-1] + 1))


def test_piecewise_map_basics():
    phi = umr.stretch_above(F(1, 2), F(1), F(2))
    assert phi(F(0)) == 0
    assert phi(F(1, 2)) == F(1, 2)
    assert phi(F(1)) == 2
    assert phi(F(2)) == 3  # slope-1 tail
    inv = phi.inverse()
    rng = random.Random(13)
    for _ in range(100):
        q = F(rng.randint(-60, 60), rng.randint(1, 12))
        assert inv(phi(q)) == q
        assert phi(inv(q)) == q


def test_piecewise_map_validation():
    with pytest.raises(ValueError):
        umr.PiecewiseLinearMap((F(1), F(0)), (F(1), F(1)))
    with pytest.raises(ValueError):
        umr.PiecewiseLinearMap((F(0),), (F(-1),))
    with pytest.raises(ValueError):
        umr.stretch_above(F(2), F(1), F(3))


def test_translate_inverse():
    t = umr.Translate(umr.qs_point({F(1): F(3, 2)}))
    p = umr.qs_point({F(1): -1, F(1, 2): 4})
    assert t.invert().apply(t.apply(p)) == p


def test_coordmap_fixes_points_outside_its_ball():
    move = umr.CoordMap(
        scale=F(1, 2),
        center=umr.qs_point({F(1): 1}),
        threshold=F(0),
        value_map=umr.stretch_above(F(0), F(1), F(2)),
        shifts=((F(1, 4), F(5)),),
    )
    outside = umr.qs_point({F(1): 2, F(1, 2): 9})
    assert move.apply(outside) == outside
    below = umr.qs_point({F(1): 1, F(1, 2): -3})
    assert move.apply(below) == below
    inside = umr.qs_point({F(1): 1, F(1, 2): 1})
    image = move.apply(inside)
    assert image.value_at(F(1, 2)) == 2
    assert image.value_at(F(1, 4)) == 5


def test_coordmap_validation():
    with pytest.raises(ValueError):
        umr.CoordMap(
            scale=F(1),
            center=umr.qs_point({F(1, 2): 1}),  # center at/below the scale
            threshold=F(0),
            value_map=umr.PiecewiseLinearMap(),
        )
    with pytest.raises(ValueError):
        umr.CoordMap(
            scale=F(1, 2),
            center=umr.ZERO_POINT,
            threshold=F(0),
            value_map=umr.PiecewiseLinearMap(),
            shifts=((F(1), F(1)),),  # shift at/above the scale
        )


def test_random_moves_preserve_structure():
    rng = random.Random(14)
    for _ in range(30):
        auto = umr.random_automorphism(MENU3, rng)
        pts = [umr.random_point(MENU3, rng) for _ in range(12)]
        images = [auto(p) for p in pts]
        for (p, ip), (q, iq) in combinations(zip(pts, images), 2):
            assert umr.qs_distance(p, q) == umr.qs_distance(ip, iq)
            assert umr.qs_lex_compare(p, q) == umr.qs_lex_compare(ip, iq)


def test_extend_single_pair_is_a_translation():
    x = umr.qs_point({F(1): 1})
    y = umr.qs_point({F(1, 2): -2})
    auto = umr.extend_isometry([(x, y)], MENU2)
    assert auto(x) == y
    assert len(auto.moves) == 1
    assert isinstance(auto.moves[0], umr.Translate)


def test_extend_identity_pairs_gives_identity():
    rng = random.Random(15)
    pts = []
    while len(pts) < 4:
        p = umr.random_point(MENU2, rng)
        if p not in pts:
            pts.append(p)
    auto = umr.extend_isometry([(p, p) for p in pts], MENU2)
    for _ in range(50):
        q = umr.random_point(MENU2, rng)
        assert auto(q) == q


def test_extend_two_pair_example():
    x1, x2 = umr.ZERO_POINT, umr.qs_point({F(1, 2): 1})
    y1, y2 = umr.ZERO_POINT, umr.qs_point({F(1, 2): 2})
    auto = umr.extend_isometry([(x1, y1), (x2, y2)], MENU2)
    assert auto(x1) == y1 and auto(x2) == y2
    rng = random.Random(16)
    pts = [umr.random_point(MENU2, rng) for _ in range(100)]
    images = [auto(p) for p in pts]
    for (p, ip), (q, iq) in combinations(zip(pts, images), 2):
        assert umr.qs_distance(p, q) == umr.qs_distance(ip, iq)
        assert umr.qs_lex_compare(p, q) == umr.qs_lex_compare(ip, iq)


def test_extend_accepts_unsorted_input():
    rng = random.Random(17)
    pts = []
    while len(pts) < 3:
        p = umr.random_point(MENU3, rng)
        if p not in pts:
            pts.append(p)
    auto = umr.random_automorphism(MENU3, rng)
    pairs = [(p, auto(p)) for p in pts]
    pairs.reverse()
    ext = umr.extend_isometry(pairs, MENU3)
    for p, q in pairs:
        assert ext(p) == q


def test_extend_rejects_duplicates():
    x = umr.qs_point({F(1): 1})
    with pytest.raises(umr.DuplicatePoint):
        umr.extend_isometry([(x, x), (x, umr.ZERO_POINT)], MENU2)


def test_extend_rejects_distance_mismatch():
    x1, x2 = umr.ZERO_POINT, umr.qs_point({F(1, 2): 1})
    y1, y2 = umr.ZERO_POINT, umr.qs_point({F(1): 1})
    with pytest.raises(umr.NotPartialIsometry) as err:
        umr.extend_isometry([(x1, y1), (x2, y2)], MENU2)
    assert err.value.pair == (0, 1)


def test_extend_rejects_order_reversal():
    x1, x2 = umr.ZERO_POINT, umr.qs_point({F(1, 2): 1})
    y1, y2 = umr.qs_point({F(1, 2): 2}), umr.ZERO_POINT
    with pytest.raises(umr.NotOrderPreserving):
        umr.extend_isometry([(x1, y1), (x2, y2)], MENU2)


def test_inverse_round_trips():
    rng = random.Random(18)
    auto = umr.random_automorphism(MENU3, rng, max_moves=4)
    inv = umr.invert_automorphism(auto)
    double = umr.invert_automorphism(inv)
    for _ in range(100):
        p = umr.random_point(MENU3, rng)
        assert inv(auto(p)) == p
        assert auto(inv(p)) == p
        assert double(p) == auto(p)


def test_apply_is_left_to_right():
    t1 = umr.Translate(umr.qs_point({F(1): 1}))
    moved = umr.CoordMap(
        scale=F(1, 2),
        center=umr.qs_point({F(1): 1}),
        threshold=F(0),
        value_map=umr.stretch_above(F(0), F(1), F(3)),
    )
    auto = umr.QsAutomorphism((t1, moved))
    p = umr.qs_point({F(1, 2): 1})
    # translate first puts the point inside the coordmap ball
    assert auto(p) == umr.qs_point({F(1): 1, F(1, 2): 3})


def test_homogeneity_small_run_passes():
    report = umr.check_homogeneity(MENU2, 2, 30, seed=5, samples=25)
    assert report.all_passed


def test_homogeneity_detects_perturbed_targets():
    rng = random.Random(19)
    rejected = 0
    trials = 30
    for _ in range(trials):
        pts = []
        while len(pts) < 3:
            p = umr.random_point(MENU3, rng)
            if p not in pts:
                pts.append(p)
        auto = umr.random_automorphism(MENU3, rng)
        images = [auto(p) for p in pts]
        # force a distance break: align the largest differing coordinate
        s = umr.qs_distance(images[0], images[1])
        delta = images[0].value_at(s) - images[1].value_at(s)
        images[1] = images[1] + umr.qs_point({s: delta})
        try:
            umr.extend_isometry(list(zip(pts, images)), MENU3)
        except (umr.NotPartialIsometry, umr.DuplicatePoint):
            rejected += 1
    assert rejected == trials


def test_sampled_subsets_are_ultrametric_spaces_with_menu_distances():
    rng = random.Random(20)
    for _ in range(20):
        pts = []
        while len(pts) < 5:
            p = umr.random_point(MENU3, rng)
            if p not in pts:
                pts.append(p)
        labels = [f"q{i}" for i in range(5)]
        matrix = [[umr.qs_distance(a, b) for b in pts] for a in pts]
        space = umr.validate_space(matrix, labels)
        assert set(umr.distance_set(space)) <= set(MENU3)


def test_coherence_on_constructed_quadruples():
    rng = random.Random(21)
    for _ in range(100):
        x = umr.random_point(MENU3, rng)
        s = MENU3[rng.randrange(len(MENU3) - 1)]  # leave room below s
        bump = F(rng.randint(1, 6), 3)
        y = x + umr.qs_point({s: bump})
        assert umr.qs_distance(x, y) == s

        def nudge(p):
            below = [t for t in MENU3 if t < s]
            t = below[rng.randrange(len(below))]
            return p + umr.qs_point({t: F(rng.randint(-6, 6), 3)})

        x2, y2 = nudge(x), nudge(y)
        assert umr.qs_distance(x, x2) < s and umr.qs_distance(y, y2) < s
        assert umr.qs_lex_compare(x, y) == umr.qs_lex_compare(x2, y2)


def test_menu_and_qpoint_round_trips():
    text = umr.format_menu(MENU3)
    assert umr.parse_menu(text) == MENU3
    assert text == "menu v1\n1\n1/2\n1/4\n"
    p = umr.qs_point({F(1): 2, F(1, 4): F(-3, 4)})
    ptext = umr.format_qpoint(p)
    assert ptext == "qpoint v1\n1 2\n1/4 -3/4\n"
    assert umr.parse_qpoint(ptext, MENU3) == p
    assert umr.parse_qpoint("qpoint v1\n", MENU3) == umr.ZERO_POINT


def test_qpoint_parse_errors():
    with pytest.raises(umr.FormatError):
        umr.parse_qpoint("qpoint v1\n1/3 2\n", MENU3)
    with pytest.raises(umr.FormatError):
        umr.parse_qpoint("qpoint v1\n1 2\n1 3\n", MENU3)
    with pytest.raises(umr.FormatError):
        umr.parse_menu("menu v1\n")


def test_automorphism_serialization_round_trip():
    rng = random.Random(22)
    for _ in range(10):
        auto = umr.random_automorphism(MENU3, rng)
        text = umr.format_automorphism(auto)
        back = umr.parse_automorphism(text, MENU3)
        for _ in range(20):
            p = umr.random_point(MENU3, rng)
            assert back(p) == auto(p)


def test_extension_serialization_matches():
    x1, x2 = umr.ZERO_POINT, umr.qs_point({F(1, 2): 1})
    y1, y2 = umr.ZERO_POINT, umr.qs_point({F(1, 2): 2})
    auto = umr.extend_isometry([(x1, y1), (x2, y2)], MENU2)
    text = umr.format_automorphism(auto)
    assert text == "coordmap s=1/2 center=0 alpha=1/2 phi=1/2:3,1:1 shifts=-\n"
    assert umr.parse_automorphism(text, MENU2)(x2) == y2
