import random
from fractions import Fraction

import pytest

from idcodes import grid
from idcodes.grid import GridError, PeriodicGridCode


@pytest.mark.parametrize("kind", grid.KINDS)
def test_distance_formula_matches_unrestricted_bfs(kind):
    rng = random.Random(kind)
    for _ in range(300):
        p = (rng.randint(-6, 6), rng.randint(-6, 6))
        q = (p[0] + rng.randint(-6, 6), p[1] + rng.randint(-6, 6))
        assert grid.grid_distance(kind, p, q) == grid.bfs_distance(kind, p, q)


@pytest.mark.parametrize("kind", grid.KINDS)
def test_distance_is_symmetric(kind):
    rng = random.Random(1)
    for _ in range(200):
        p = (rng.randint(-9, 9), rng.randint(-9, 9))
        q = (rng.randint(-9, 9), rng.randint(-9, 9))
        assert grid.grid_distance(kind, p, q) == grid.grid_distance(kind, q, p)


@pytest.mark.parametrize("kind,r,size", [
    ("square", 1, 5), ("square", 2, 13),
    ("king", 1, 9), ("king", 2, 25),
    ("triangular", 1, 7), ("triangular", 2, 19),
    ("hexagonal", 1, 4), ("hexagonal", 2, 10),
])
def test_ball_sizes(kind, r, size):
    assert len(grid.ball(kind, (0, 0), r)) == size
    assert len(grid.ball(kind, (1, 0), r)) == size


def test_ball_agrees_with_distance():
    for kind in grid.KINDS:
        p = (3, -2)
        inside = set(grid.ball(kind, p, 3))
        box = [(x, y) for x in range(-5, 11) for y in range(-10, 6)]
        assert inside == {q for q in box if grid.grid_distance(kind, p, q) <= 3}


def _divisor_sum(n):
    return sum(a for a in range(1, n + 1) if n % a == 0)


@pytest.mark.parametrize("det", [1, 2, 6, 9, 12, 20])
def test_sublattice_count_is_divisor_sum(det):
    assert len(list(grid.sublattices(det))) == _divisor_sum(det)


def test_hex_sublattices_preserve_parity():
    for a, c, d in grid.sublattices(12, "hexagonal"):
        assert a % 2 == 0 and (c + d) % 2 == 0
    assert list(grid.sublattices(19, "hexagonal")) == []


def test_hermite_normal_form():
    assert grid.hermite_normal_form(((2, 0), (1, 3))) == (2, 1, 3)
    a, c, d = grid.hermite_normal_form(((1, 2), (3, 1)))
    assert a * d == 5 and 0 <= c < a
    with pytest.raises(GridError):
        grid.hermite_normal_form(((1, 2), (2, 4)))


def test_density_extremes():
    assert PeriodicGridCode("square", ((2, 0), (0, 2)), []).density() == 0
    full = PeriodicGridCode("square", ((2, 0), (0, 1)), [(0, 0), (1, 0)])
    assert grid.density(full) == 1


def test_empty_code_is_undominated():
    pc = PeriodicGridCode("square", ((3, 0), (0, 3)), [])
    bad = grid.verify_periodic(pc, 1)
    assert bad.kind == "undominated" and bad.describe() == "undominated: (0,0)"


@pytest.mark.parametrize("r", [2, 3, 4])
def test_king_construction(r):
    pc = grid.king_construction(r)
    assert pc.density() == Fraction(1, 4 * r)
    assert grid.is_periodic_idc(pc, r)
    assert grid.window_oracle(pc, r)


def test_periodic_check_agrees_with_window_oracle():
    rng = random.Random(7)
    for kind in grid.KINDS:
        lats = list(grid.sublattices(8, kind))
        for _ in range(15):
            lat = grid.Lattice(*rng.choice(lats))
            pc = PeriodicGridCode.from_classes(kind, lat, rng.randrange(1, 256))
            for r in (1, 2):
                assert grid.is_periodic_idc(pc, r) == grid.window_oracle(pc, r)


def test_translation_invariance():
    pc = grid.search_tiles("triangular", 1, 4, 1)
    assert pc is not None
    for v in [(1, 0), (0, 1), (3, -2)]:
        assert grid.is_periodic_idc(pc.translated(v), 1)


def test_hex_translation_by_even_vector():
    pc = grid.search_tiles("hexagonal", 1, 14, 6, mode="exact")
    assert pc is not None
    assert grid.is_periodic_idc(pc.translated((1, 1)), 1)


def test_tile_round_trip():
    pc = grid.king_construction(2)
    assert grid.parse_tile(grid.format_tile(pc)) == pc
    with pytest.raises(GridError):
        grid.parse_tile("grid square\nbasis 1 0 0 1\npoint x 0\n")


def test_rejects_bad_tiles():
    with pytest.raises(GridError):
        PeriodicGridCode("hexagonal", ((1, 0), (0, 2)), [(0, 0)])
    with pytest.raises(GridError):
        PeriodicGridCode("square", ((2, 0), (0, 2)), [(0, 0), (2, 0)])
    with pytest.raises(GridError):
        PeriodicGridCode("hex", ((2, 0), (0, 2)), [])


def test_square_density_sweep():
    found = [grid.min_density("square", 1, k) for k in range(1, 21)]
    assert min(d for d in found if d is not None) == Fraction(7, 20)


def test_triangular_density_sweep():
    found = [grid.min_density("triangular", 1, k) for k in range(1, 13)]
    assert min(d for d in found if d is not None) == Fraction(1, 4)


def test_anneal_is_seeded():
    a = grid.search_tiles("triangular", 1, 4, 1, mode="anneal", seed=3)
    b = grid.search_tiles("triangular", 1, 4, 1, mode="anneal", seed=3)
    assert a is not None and a == b and grid.is_periodic_idc(a, 1)


def test_search_arguments_checked():
    with pytest.raises(GridError):
        grid.search_tiles("square", 1, 4, 5)
    with pytest.raises(GridError):
        grid.search_tiles("square", 1, 4, 1, mode="guess")
