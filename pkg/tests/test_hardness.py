import time

import pytest

from forbconf import xcompute
from forbconf.config import FactorKind, canonical_key, from_columns, generator, restrict, rowset
from forbconf.errors import ConfigurationError, FormatError, GraphError, IsolatedVertexError
from forbconf.hardness import (Graph, chromatic_number, check_reduction, incidence_matrix,
                               parse_dimacs, reduction_matrix, reduction_report)
from forbconf.products import member_of_family
from forbconf.xcompute import x_of

K2_TEXT = "p edge 2 1\ne 1 2\n"
K3_TEXT = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
K2 = parse_dimacs(K2_TEXT)
K3 = parse_dimacs(K3_TEXT)
P3 = Graph.from_edges(3, [(1, 2), (2, 3)])
C5 = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])


class TestDimacs:
    def test_triangle(self):
        assert K3 == Graph(3, ((1, 2), (1, 3), (2, 3)))

    def test_edge(self):
        assert K2.n == 2 and K2.edges == ((1, 2),)

    def test_isolated(self):
        with pytest.raises(IsolatedVertexError, match="3"):
            parse_dimacs("p edge 3 1\ne 1 2\n")

    @pytest.mark.parametrize("text", [
        "e 1 2\n",
        "p edge 2\n",
        "p edge 2 1\ne 1 x\n",
        "p edge 2 1\nq 1 2\n",
        "",
    ])
    def test_format_errors(self, text):
        with pytest.raises(FormatError):
            parse_dimacs(text)

    @pytest.mark.parametrize("text", ["p edge 2 1\ne 1 3\n", "p edge 2 2\ne 1 2\ne 2 2\n"])
    def test_graph_errors(self, text):
        with pytest.raises(GraphError):
            parse_dimacs(text)

    def test_duplicates_collapse(self, caplog):
        G = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n")
        assert G.edges == ((1, 2),)
        assert "duplicate" in caplog.text


class TestIncidence:
    def test_k2(self):
        assert incidence_matrix(K2) == from_columns(2, [3])

    def test_k3(self):
        S = incidence_matrix(K3)
        assert S.ncols == 3
        assert all(bin(a).count("1") == 2 for a in S.columns())
        assert all(restrict(S, rowset(3, [i])).mult[1] == 2 for i in range(3))

    def test_path(self):
        assert sorted(incidence_matrix(P3).columns()) == [0b011, 0b110]


class TestReductionMatrix:
    def test_k2_shape(self):
        F = reduction_matrix(K2, 4)
        assert (F.rows, F.ncols) == (10, 6) and F.is_simple()

    def test_k3_shape(self):
        F = reduction_matrix(K3, 5)
        assert (F.rows, F.ncols) == (13, 9) and F.is_simple()

    def test_small_m(self):
        with pytest.raises(ConfigurationError):
            reduction_matrix(K3, 4)

    def test_default_m(self):
        assert reduction_matrix(K3) == reduction_matrix(K3, 5)

    def test_blocks(self):
        M = 4
        F = reduction_matrix(K2, M)
        top = restrict(F, rowset(F.rows, range(M)))
        mid = restrict(F, rowset(F.rows, range(M, 2 * M)))
        bot = restrict(F, rowset(F.rows, range(2 * M, 2 * M + 2)))
        full = (1 << M) - 1
        ic = generator(FactorKind.IDENTITY_COMPLEMENT, M)
        assert sorted(top.columns()) == sorted([0, full] + ic.columns())
        assert sorted(mid.columns()) == sorted([full] + generator(FactorKind.TOWER, M).columns())
        assert list(bot.mult) == [5, 0, 0, 1]

    def test_simple_and_sized(self):
        # n = 5 gives 19 rows, the last size under the 20-row cap
        for n in range(2, 6):
            G = Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])
            F = reduction_matrix(G)
            M = n + 2
            assert F.is_simple() and (F.rows, F.ncols) == (2 * M + n, n - 1 + M + 1)

    def test_deterministic_pipeline(self):
        a = canonical_key(reduction_matrix(parse_dimacs(K2_TEXT), 4))
        b = canonical_key(reduction_matrix(parse_dimacs(K2_TEXT), 4))
        assert a == b


class TestChromatic:
    @pytest.mark.parametrize("G, chi", [(K2, 2), (K3, 3), (C5, 3), (P3, 2)])
    def test_values(self, G, chi):
        assert chromatic_number(G) == chi

    def test_guard(self):
        from forbconf.errors import GuardExceeded
        G = Graph.from_edges(13, [(i, i + 1) for i in range(1, 13)])
        with pytest.raises(GuardExceeded):
            chromatic_number(G)


class TestReductionK2:
    def test_equation(self):
        t0 = time.perf_counter()
        rep = reduction_report(K2, 4)
        assert rep.x_value == 9 == 2 * 4 + 2 - 1
        assert rep.avoiding_shape == (9, 0, 0)
        assert rep.ok and check_reduction(K2, 4)
        assert time.perf_counter() - t0 < 30 * 60

    def test_bounded_by_rows(self):
        assert x_of(reduction_matrix(K2, 4)).x_value <= 10

    def test_identity_product_avoids(self):
        assert member_of_family(reduction_matrix(K2, 4), (9, 0, 0)) is None


@pytest.fixture
def lift_guard(monkeypatch):
    monkeypatch.setattr(xcompute, "X_MAX_ROWS", 14)


@pytest.mark.expensive
def test_reduction_k3(lift_guard):
    rep = reduction_report(K3)
    assert rep.x_value == 12 and rep.ok


@pytest.mark.expensive
def test_reduction_path_breaks_equation(lift_guard):
    # the all-zero column in the lower rows keeps every S row in its own
    # complement factor, so X exceeds 2M + chi - 1 once S has a zero column
    rep = reduction_report(P3)
    assert rep.chi == 2
    assert rep.x_value == 12 and not rep.ok
