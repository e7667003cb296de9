import pytest

from isgkit import verify
from isgkit.budget import SubsetBudget
from isgkit.constructors import (
    BUILTINS,
    FamilySpec,
    SemilatticeError,
    adjoin_zero,
    brandt,
    builtin,
    chain,
    cyclic_group,
    semilattice_from_meet_table,
    symmetric_inverse_monoid,
)
from isgkit.core import AxiomError, PartialBijection, from_cayley_table
from isgkit.order import NaturalOrder

N5_TABLE = [  # 0, a, b, c, 1 with 0 < a < c < 1, 0 < b < 1
    [0, 0, 0, 0, 0],
    [0, 1, 0, 1, 1],
    [0, 0, 2, 0, 2],
    [0, 1, 0, 3, 3],
    [0, 1, 2, 3, 4],
]


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_pass_validation(name):
    S = builtin(name)
    T = from_cayley_table(S.size, S.product)
    assert T.inverse == S.inverse
    assert S.metadata["name"] == name


class TestSymmetricInverse:
    def test_sizes(self):
        assert [symmetric_inverse_monoid(n).size for n in range(4)] == [1, 2, 7, 34]

    def test_zero_degree(self):
        S = symmetric_inverse_monoid(0)
        assert S.elements == (PartialBijection(()),)

    def test_guard(self):
        with pytest.raises(ValueError):
            symmetric_inverse_monoid(6)
        with pytest.raises(ValueError):
            symmetric_inverse_monoid(-1)

    def test_distributive(self):
        for n in range(4):
            S = symmetric_inverse_monoid(n)
            assert verify.is_infinitely_distributive(S).passed


class TestSemilattice:
    def test_chain(self):
        S = chain(2)
        order = NaturalOrder(S)
        assert order.leq(0, 1) and not order.leq(1, 0)

    def test_n5_table(self):
        assert [list(r) for r in builtin("n5").product] == N5_TABLE

    def test_n5_fails(self):
        S = semilattice_from_meet_table(5, N5_TABLE, ["0", "a", "b", "c", "1"])
        assert verify.is_infinitely_distributive(S).verdict is verify.Verdict.FAILS

    def test_m3(self):
        S = builtin("m3")
        a, b, c = (S.index(x) for x in "abc")
        assert S.mul(a, b) == S.mul(a, c) == S.mul(b, c) == S.index("0")
        w = verify.is_infinitely_distributive(S).witness
        assert w["s"]["label"] == "c" and [x["label"] for x in w["X"]] == ["a", "b"]

    def test_order_matches_table(self):
        for name in ("n5", "m3", "square", "chain3"):
            S = builtin(name)
            order = NaturalOrder(S)
            for x in range(S.size):
                for y in range(S.size):
                    assert order.leq(x, y) == (S.mul(x, y) == x)

    def test_rejects_non_idempotent(self):
        with pytest.raises(SemilatticeError, match="idempotent"):
            semilattice_from_meet_table(2, [[0, 0], [0, 0]])

    def test_rejects_non_commutative(self):
        with pytest.raises(SemilatticeError, match="commutative"):
            semilattice_from_meet_table(2, [[0, 0], [1, 1]])

    def test_rejects_non_associative(self):
        # commutative idempotent but not associative: 3-element "rock paper scissors"
        table = [[0, 0, 2], [0, 1, 1], [2, 1, 2]]
        with pytest.raises(AxiomError):
            semilattice_from_meet_table(3, table)


class TestCyclicGroup:
    def test_trivial(self):
        assert cyclic_group(1).size == 1

    def test_antichain(self):
        assert NaturalOrder(cyclic_group(3)).comparable_pairs() == 3

    def test_idempotents(self):
        assert cyclic_group(4).idempotents() == {0}

    def test_inverse(self):
        assert cyclic_group(5).inverse == (0, 4, 3, 2, 1)


class TestBrandt:
    def test_b2(self):
        S = brandt(2)
        assert S.size == 5
        assert {S.labels[e] for e in S.idempotents()} == {"(1,1)", "(2,2)", "0"}

    def test_product_rule(self):
        S = brandt(2)
        assert S.mul(S.index("(1,2)"), S.index("(2,1)")) == S.index("(1,1)")
        assert S.mul(S.index("(1,2)"), S.index("(1,2)")) == S.index("0")

    def test_meet(self):
        S = brandt(2)
        assert NaturalOrder(S).meet(S.index("(1,2)"), S.index("(2,1)")).witness == S.index("0")

    def test_guard(self):
        with pytest.raises(ValueError):
            brandt(1)


class TestAdjoinZero:
    def test_c2(self):
        S = adjoin_zero(cyclic_group(2))
        assert S.size == 3
        z = S.index("z")
        assert NaturalOrder(S).meet(0, 1).witness == z

    def test_minimum(self):
        S = adjoin_zero(cyclic_group(3))
        assert NaturalOrder(S).minimum().witness == S.index("z")

    def test_idempotents_grow_by_one(self):
        inner = brandt(2)
        S = adjoin_zero(inner)
        assert S.idempotents() == inner.idempotents() | {S.size - 1}

    def test_label_clash(self):
        S = adjoin_zero(adjoin_zero(cyclic_group(1)))
        assert S.labels[-1] == "z'"


class TestFamilySpec:
    @pytest.mark.parametrize("spec,size", [
        (FamilySpec("symmetric-inverse", n=2), 7),
        (FamilySpec("cyclic-group", n=1), 1),
        (FamilySpec("brandt", n=2), 5),
        (FamilySpec("semilattice", table=[[0, 0], [0, 1]]), 2),
        (FamilySpec("adjoin-zero", inner=cyclic_group(2)), 3),
        (FamilySpec("builtin", name="n5"), 5),
    ])
    def test_build(self, spec, size):
        assert spec.build().size == size

    @pytest.mark.parametrize("spec", [
        FamilySpec("symmetric-inverse"),
        FamilySpec("symmetric-inverse", n=9),
        FamilySpec("cyclic-group", n=0),
        FamilySpec("brandt", n=1),
        FamilySpec("semilattice"),
        FamilySpec("adjoin-zero"),
        FamilySpec("builtin", name="nope"),
        FamilySpec("free"),
    ])
    def test_invalid(self, spec):
        with pytest.raises(ValueError):
            spec.build()


def test_unknown_builtin():
    with pytest.raises(ValueError, match="unknown builtin"):
        builtin("z7")
