import random
from collections import Counter
from fractions import Fraction

import pytest

from quivercoh import bott, cohomology, quiver, rootsys, stability
from quivercoh.bott import chamber_key, chamber_vertices
from quivercoh.cohomology import (
    CohomologyTable,
    build_complex,
    graded_cohomology,
    graded_table,
    truncated_complex,
)
from quivercoh.errors import DomainError

from conftest import (
    GR13,
    P2,
    P3,
    adv_rep,
    dual_euler_rep,
    euler_rep,
    ex511_rep,
    interval_basis,
    random_rep,
    random_segment_rep,
)


def table_dict(table: CohomologyTable):
    return {(r.degree, r.nu): r.multiplicity for r in table.rows}


class TestGraded:
    def test_euler_rep_pieces(self):
        pieces = graded_cohomology(euler_rep(P3))
        keyed = {(p.nu, p.degree) for p in pieces}
        assert keyed == {((0, 0, 0), 0), ((1, 0, 1), 0)}

    def test_singular_vertex_dropped(self):
        rep = quiver.make_rep(P2, [((-1, 0), 1)], [])
        assert graded_cohomology(rep) == []

    def test_zero_maps_table_equals_graded(self):
        rep = quiver.make_rep(
            P2, [((1, 0), 1), ((-1, 1), 2), ((-3, 2), 1)], []
        )
        assert table_dict(cohomology.cohomology(rep)) == table_dict(graded_table(rep))

    def test_requires_valid_rep(self):
        bad = quiver.make_rep(
            P2,
            [((1, 0), 1), ((-1, 1), 1), ((-2, 0), 1)],
            [((1, 0), (1, 1), [[1]]), ((-1, 1), (1, 2), [[1]])],
        )
        with pytest.raises(DomainError):
            cohomology.cohomology(bad)


class TestBuildComplex:
    def test_dual_euler_single_differential(self):
        cx = build_complex(dual_euler_rep(P2, arrow=7))
        assert len(cx.classes) == 1
        cls = cx.classes[0]
        assert cls.nu == (0, 0)
        assert cls.degrees == (0, 1)
        assert cls.maps[0] in (
            quiver.mat([[7]]),
            quiver.mat([[-7]]),
        )

    def test_two_step_segment_through_singular_vertex(self):
        rep = quiver.make_rep(
            P2,
            [((1, 0), 1), ((-1, 1), 1), ((-3, 2), 1)],
            [((1, 0), (1, 1), [[1]]), ((-1, 1), (1, 1), [[1]])],
        )
        cx = build_complex(rep)
        cls = [c for c in cx.classes if c.nu == (1, 0)][0]
        assert cls.maps[0] in (quiver.mat([[1]]), quiver.mat([[-1]]))

    def test_pn_signs_all_positive(self):
        table = cohomology._sign_table(P3)
        assert all(v == 1 for v in table.values())

    def test_missing_intermediate_vertex_zeroes_composite(self):
        rep = quiver.make_rep(
            P2,
            [((1, 0), 1), ((-3, 2), 1)],
            [],
        )
        cx = build_complex(rep)
        cls = [c for c in cx.classes if c.nu == (1, 0)][0]
        assert all(x == 0 for row in cls.maps[0] for x in row)


class TestTables:
    def test_dual_euler_cancellation(self):
        for space in [P2, P3]:
            assert cohomology.cohomology(dual_euler_rep(space)).is_empty()

    def test_dual_euler_split(self):
        for space in [P2, P3]:
            table = cohomology.cohomology(dual_euler_rep(space, arrow=0))
            zero = (0,) * space.rank
            assert table_dict(table) == {(0, zero): 1, (1, zero): 1}

    def test_wedge_square_trivial_bundle(self):
        table = cohomology.cohomology(ex511_rep())
        assert table_dict(table) == {(0, (0, 1, 0)): 1}
        assert table.rows[0].dim == 6

    def test_adjoint_trivial_bundle(self):
        table = cohomology.cohomology(adv_rep())
        assert table_dict(table) == {(0, (1, 1)): 1}
        assert table.rows[0].dim == 8

    def test_euler_rep_two_modules(self):
        table = cohomology.cohomology(euler_rep(P2))
        assert table_dict(table) == {(0, (0, 0)): 1, (0, (1, 1)): 1}


class TestTruncated:
    def test_full_when_steps_cover_diameter(self, rng):
        for _ in range(4):
            rep = random_rep(P2, rng)
            result = truncated_complex(rep, 20)
            assert result.is_full
            assert table_dict(result.table) == table_dict(cohomology.cohomology(rep))

    def test_single_vertex_all_truncations_zero(self):
        rep = quiver.make_rep(GR13, [((1, 0, 2), 3)], [])
        result = truncated_complex(rep, 1)
        assert result.is_full
        assert table_dict(result.table) == {(0, (1, 0, 2)): 3}

    def test_distance_two_chain_truncates_away(self):
        rep = quiver.make_rep(
            P2,
            [((1, 0), 1), ((-1, 1), 1), ((-3, 2), 1)],
            [((1, 0), (1, 1), [[1]]), ((-1, 1), (1, 1), [[1]])],
        )
        assert cohomology.cohomology(rep).is_empty()
        result = truncated_complex(rep, 1)
        assert not result.is_full
        assert result.is_complex
        assert table_dict(result.table) == {(0, (1, 0)): 1, (1, (1, 0)): 1}

    def test_rejects_zero_steps(self):
        with pytest.raises(DomainError):
            truncated_complex(dual_euler_rep(P2), 0)


class TestRandomSuite:
    """Complex property, gauge independence, Euler characteristic."""

    @pytest.mark.parametrize("space_name,seed", [("P2", 101), ("GR13", 202)])
    def test_fifty_reps_each(self, space_name, seed):
        space = {"P2": P2, "GR13": GR13}[space_name]
        rng = random.Random(seed)
        twist = frozenset({chamber_key(space, chamber_vertices(space)[1][0])})
        for _ in range(50):
            rep = random_rep(space, rng)
            assert quiver.check_relations(rep) == []
            build_complex(rep)           # raises unless every square is zero
            result = truncated_complex(rep, 1)
            assert result.is_complex     # one-step truncation is a complex
            table = cohomology.cohomology(rep)
            assert table.euler_characteristic() == graded_table(rep).euler_characteristic()
            retwisted = cohomology.cohomology(rep, gauge_twist=twist)
            assert table.rows == retwisted.rows

    def test_additivity_over_direct_sums(self, rng):
        done = 0
        while done < 6:
            r1 = random_rep(P2, rng)
            r2 = random_rep(P2, rng)
            c1 = rootsys.component_class(P2, r1.vertices[0].weight)
            c2 = rootsys.component_class(P2, r2.vertices[0].weight)
            if c1 != c2:
                continue
            done += 1
            total = cohomology.cohomology(quiver.direct_sum(r1, r2))
            merged = Counter(table_dict(cohomology.cohomology(r1)))
            merged.update(table_dict(cohomology.cohomology(r2)))
            assert table_dict(total) == {k: v for k, v in merged.items() if v}

    def test_submodule_euler_additivity(self, rng):
        for _ in range(5):
            rep = random_rep(GR13, rng)
            spans = [[] for _ in rep.vertices]
            spans[0] = [[1] + [0] * (rep.vertices[0].dim - 1)]
            sub = quiver.submodule_generated(rep, spans)
            quot = quiver.quotient_by(rep, spans)
            chi = cohomology.cohomology(rep).euler_characteristic()
            chi_sub = cohomology.cohomology(sub).euler_characteristic() if sub.vertices else 0
            chi_quot = cohomology.cohomology(quot).euler_characteristic() if quot.vertices else 0
            assert chi == chi_sub + chi_quot
            # sanity bound: nothing exceeds its graded multiplicity
            graded_sub = table_dict(graded_table(sub)) if sub.vertices else {}
            for key, mult in table_dict(cohomology.cohomology(sub)).items():
                assert mult <= graded_sub[key]


class TestPathOracle:
    """Segment representations match the interval-splitting prediction."""

    @pytest.mark.parametrize("space_name,seed", [("P2", 11), ("P3", 22), ("GR13", 33)])
    def test_interval_prediction(self, space_name, seed):
        space = {"P2": P2, "P3": P3, "GR13": GR13}[space_name]
        rng = random.Random(seed)
        for _ in range(10):
            rep = random_segment_rep(space, rng)
            chain, threads = interval_basis(rep)
            mults = Counter((b, d) for b, d, _ in threads)
            assert dict(mults) == stability.interval_multiplicities(rep)
            weights = [rep.vertices[i].weight for i in chain]
            values = [bott.bott(space, w) for w in weights]
            predicted: Counter = Counter()
            for (b, d), m in mults.items():
                for j in range(b, d + 1):
                    if values[j] is None:
                        continue
                    partners = [
                        j2
                        for j2 in range(b, d + 1)
                        if j2 != j
                        and values[j2] is not None
                        and values[j2].nu == values[j].nu
                    ]
                    assert len(partners) <= 1
                    if partners:
                        continue
                    predicted[(values[j].degree, values[j].nu)] += m
            assert dict(predicted) == table_dict(cohomology.cohomology(rep))
