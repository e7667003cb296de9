from math import comb, factorial

import pytest

from isgkit.constructors import builtin, symmetric_inverse_monoid
from isgkit.core import (
    AmbiguousInverseError,
    ClosureCapExceeded,
    IdempotentsDoNotCommuteError,
    MalformedTableError,
    NotAssociativeError,
    NotRegularError,
    PartialBijection,
    close_under_ops,
    compose,
    from_cayley_table,
    idempotents,
    invert,
)

from oracles import all_partial_bijections

PB = PartialBijection
ID2 = PB((0, 1))
SWAP = PB((1, 0))
E0 = PB((0, None))


class TestPartialBijection:
    def test_rejects_non_injective(self):
        with pytest.raises(ValueError, match="injective"):
            PB((0, 0))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            PB((0, 2))

    def test_equality_is_canonical(self):
        assert PB([1, None]) == PB((1, None))
        assert PB.from_pairs(2, {0: 1}) == PB((1, None))
        assert PB.identity(3, [0, 2]) == PB((0, None, 2))
        assert PB(()) != PB((None,))

    def test_str(self):
        assert str(PB((1, None))) == "[1 -]"
        assert str(PB(())) == "[]"


class TestCompose:
    def test_identity(self):
        assert compose(ID2, ID2) == ID2

    def test_involution_squared(self):
        assert compose(SWAP, SWAP) == ID2

    def test_restricted_identity_after_swap(self):
        # apply swap, then id|{0}: only 1 -> 0 -> 0 survives
        assert compose(E0, SWAP) == PB((None, 0))

    def test_convention_is_right_to_left(self):
        p = PB((1, 2, 0))
        q = PB((0, 2, 1))
        assert compose(p, q).images == tuple(p(q(i)) for i in range(3))

    def test_degree_mismatch(self):
        with pytest.raises(ValueError, match="degree"):
            compose(ID2, PB((0,)))


class TestInvert:
    def test_identity(self):
        assert invert(ID2) == ID2

    def test_converse(self):
        assert invert(PB((1, None))) == PB((None, 0))

    def test_empty(self):
        assert invert(PB((None,) * 3)) == PB((None,) * 3)

    @pytest.mark.parametrize("images", all_partial_bijections(3))
    def test_p_pinv_is_identity_on_image(self, images):
        p = PB(images)
        assert compose(p, invert(p)) == PB.identity(3, p.image)
        assert invert(invert(p)) == p


class TestCloseUnderOps:
    def test_single_identity(self):
        assert close_under_ops([ID2]).size == 1

    def test_swap_generates_c2(self):
        S = close_under_ops([SWAP])
        assert set(S.elements) == {SWAP, ID2}
        assert S.elements[0] == SWAP

    def test_generates_i2(self):
        S = close_under_ops([SWAP, E0])
        assert set(S.elements) == {PB(t) for t in all_partial_bijections(2)}
        assert S.elements[:2] == (SWAP, E0)

    def test_tables_match_model(self):
        S = close_under_ops([PB((1, 2, 0)), PB((0, 1, None))])
        els = S.elements
        for a in range(S.size):
            assert els[S.inverse[a]] == invert(els[a])
            for b in range(S.size):
                assert els[S.product[a][b]] == compose(els[a], els[b])

    def test_deterministic_order(self):
        gens = [PB((1, 2, 0)), PB((0, None, 2))]
        assert close_under_ops(gens).elements == close_under_ops(gens).elements

    def test_cap(self):
        with pytest.raises(ClosureCapExceeded, match="cap of 5"):
            close_under_ops([SWAP, E0], cap=5)

    def test_empty_and_mixed_degrees(self):
        with pytest.raises(ValueError):
            close_under_ops([])
        with pytest.raises(ValueError):
            close_under_ops([ID2, PB((0,))])


class TestFromCayleyTable:
    def test_trivial(self):
        S = from_cayley_table(1, [[0]])
        assert S.size == 1 and S.inverse == (0,)

    def test_left_zero_rejected(self):
        with pytest.raises(IdempotentsDoNotCommuteError, match=r"idempotents do not commute: \(0,1\)"):
            from_cayley_table(2, [[0, 0], [1, 1]])

    def test_cyclic_group_inverse_derived(self):
        S = from_cayley_table(3, [[(a + b) % 3 for b in range(3)] for a in range(3)])
        assert S.inverse == (0, 2, 1)

    def test_out_of_range(self):
        with pytest.raises(MalformedTableError, match=r"index out of range at \(1,1\)") as info:
            from_cayley_table(2, [[0, 1], [1, 2]])
        assert (info.value.row, info.value.col) == (1, 1)

    def test_wrong_shape(self):
        with pytest.raises(MalformedTableError):
            from_cayley_table(2, [[0, 1]])
        with pytest.raises(MalformedTableError):
            from_cayley_table(0, [])

    def test_not_associative(self):
        # x*y = (x+1) mod 2 regardless of y: (0*0)*0 = 0, 0*(0*0) = 1
        with pytest.raises(NotAssociativeError) as info:
            from_cayley_table(2, [[1, 1], [0, 0]])
        assert info.value.triple == (0, 0, 0)

    def test_not_regular(self):
        # 2-element null semigroup with a zero 0: 1*1 = 0, nothing inverts 1
        with pytest.raises(NotRegularError):
            from_cayley_table(2, [[0, 0], [0, 0]])

    def test_ambiguity_masked_by_commutation_check(self):
        # unique inverses follow from commuting idempotents, so a table with
        # two inverses for one element always fails the earlier check
        with pytest.raises(IdempotentsDoNotCommuteError):
            from_cayley_table(3, [[0, 1, 0], [0, 1, 1], [0, 1, 2]])

    def test_bad_inverse_table(self):
        with pytest.raises(NotRegularError):
            from_cayley_table(3, [[(a + b) % 3 for b in range(3)] for a in range(3)], [0, 1, 2])

    def test_reproduces_constructor_output(self, corpus):
        for S in corpus.values():
            T = from_cayley_table(S.size, S.product, S.inverse, S.labels)
            assert T == S
            U = from_cayley_table(S.size, S.product)
            assert U.inverse == S.inverse


def test_ambiguous_inverse_error_message():
    err = AmbiguousInverseError(3, [1, 2])
    assert "element 3 has 2 inverses" in str(err)


class TestIdempotents:
    def test_group(self, corpus):
        assert idempotents(corpus["c3"]) == {0}

    def test_i2_partial_identities(self, i2):
        E = {i2.elements[e] for e in idempotents(i2)}
        assert E == {PB.identity(2, d) for d in ([], [0], [1], [0, 1])}

    def test_semilattice(self, corpus):
        S = corpus["n5"]
        assert idempotents(S) == set(range(S.size))

    def test_closed_and_commutative(self, corpus):
        for S in corpus.values():
            E = idempotents(S)
            for e in E:
                for f in E:
                    assert S.mul(e, f) in E
                    assert S.mul(e, f) == S.mul(f, e)


def test_inverse_laws(corpus):
    for S in corpus.values():
        for a in range(S.size):
            assert S.inv(S.inv(a)) == a
            for b in range(S.size):
                assert S.inv(S.mul(a, b)) == S.mul(S.inv(b), S.inv(a))


@pytest.mark.parametrize("n", range(5))
def test_symmetric_inverse_size(n):
    expected = sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))
    assert symmetric_inverse_monoid(n).size == expected == len(all_partial_bijections(n))


def test_zero(corpus):
    i2 = corpus["i2"]
    assert i2.label(i2.zero()) == "[- -]"
    assert corpus["c3"].zero() is None
