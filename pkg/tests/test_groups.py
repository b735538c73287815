import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    naive_centralizer,
    naive_class,
    naive_closure,
    naive_commutator_subgroup,
    naive_order,
    sympy_group,
)
from profinite_workbench.errors import (
    BadPerm,
    CapExceeded,
    NotHomomorphism,
    NotMember,
    NotNormal,
    NotPrime,
    NotSubgroup,
)
from profinite_workbench.groups import (
    FiniteGroup,
    GroupHom,
    alternating_group,
    centralizer,
    closure,
    commutator_subgroup,
    conjugacy_class,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    element_order,
    elementary_abelian,
    named_group,
    power_subgroup,
    quaternion_element,
    quotient,
    symmetric_group,
    trivial_group,
)
from profinite_workbench.perm import Perm

T01 = Perm.from_cycles(3, (0, 1))
C012 = Perm.from_cycles(3, (0, 1, 2))
FIVE = Perm.from_cycles(5, (0, 1, 2, 3, 4))


def images(G):
    return {p.images for p in G}


class TestClosure:
    def test_sym3(self):
        G = closure([C012, T01], 3)
        assert G.order == 6
        assert images(G) == naive_closure([C012.images, T01.images], 3)

    def test_empty_generators(self):
        G = closure([], 3)
        assert G.order == 1
        assert G.identity == Perm.identity(3)

    def test_klein_four(self):
        a = Perm.from_cycles(4, (0, 1), (2, 3))
        b = Perm.from_cycles(4, (0, 2), (1, 3))
        G = closure([a, b], 4)
        assert G.order == 4
        assert images(G) == naive_closure([a.images, b.images], 4)

    def test_canonical_order(self):
        G = closure([T01, C012], 3)
        assert list(G.elements) == sorted(G.elements)
        assert G.elements == closure([C012, T01], 3).elements

    def test_cap(self):
        with pytest.raises(CapExceeded):
            closure([C012, T01], 3, cap=5)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("WORKBENCH_CAP", "10")
        with pytest.raises(CapExceeded):
            symmetric_group(4)

    def test_bad_perm(self):
        with pytest.raises(BadPerm):
            closure([[0, 0, 1]], 3)
        with pytest.raises(BadPerm):
            closure([Perm([1, 0])], 3)

    def test_idempotent(self, A5):
        again = closure(list(A5.elements), 5)
        assert again.same_elements(A5)

    def test_generators_are_elements(self, A5):
        assert all(g in A5 for g in A5.generators)

    @pytest.mark.parametrize("n,order", [(3, 6), (4, 24), (5, 120)])
    def test_symmetric_orders_match_sympy(self, n, order):
        G = symmetric_group(n)
        assert G.order == order == sympy_group(G).order()


class TestClasses:
    def test_transposition_class(self, S3):
        cls = conjugacy_class(S3, T01)
        assert len(cls) == 3
        assert {p.images for p in cls} == naive_class(images(S3), T01.images)

    def test_identity_class(self, A5):
        assert conjugacy_class(A5, A5.identity) == [A5.identity]

    def test_five_cycle_class(self, A5):
        cls = conjugacy_class(A5, FIVE)
        assert len(cls) == 12
        assert {p.images for p in cls} == naive_class(images(A5), FIVE.images)

    def test_not_member(self, S3):
        with pytest.raises(NotMember):
            conjugacy_class(S3, Perm([1, 0, 2, 3]))

    def test_sorted(self, A5):
        cls = conjugacy_class(A5, FIVE)
        assert cls == sorted(cls)

    def test_partition(self, A5):
        classes = conjugacy_classes(A5)
        assert sorted(len(c) for c in classes) == [1, 12, 12, 15, 20]
        assert sum(len(c) for c in classes) == A5.order
        seen = set()
        for c in classes:
            assert not seen & set(c)
            seen |= set(c)


class TestCentralizer:
    def test_transposition(self, S3):
        C = centralizer(S3, T01)
        assert C.order == 2
        assert images(C) == naive_centralizer(images(S3), T01.images)

    def test_identity(self, A5):
        assert centralizer(A5, A5.identity).same_elements(A5)

    def test_five_cycle(self, A5):
        C = centralizer(A5, FIVE)
        assert C.order == 5
        assert C.order == sympy_group(A5).centralizer(sympy_group(closure([FIVE], 5))).order()

    @pytest.mark.parametrize("name", ["S3", "S4", "A5", "D4", "Q8"])
    def test_orbit_stabilizer(self, name):
        G = named_group(name)
        for g in G:
            assert len(conjugacy_class(G, g)) * centralizer(G, g).order == G.order


class TestQuotient:
    def test_sym3_mod_alt3(self, S3):
        Q, proj = quotient(S3, alternating_group(3))
        assert Q.order == 2
        assert proj.violations() == []

    def test_g_mod_g(self, S3):
        Q, proj = quotient(S3, S3)
        assert Q.order == 1
        assert set(proj.table) == {0}

    def test_q8_mod_center(self, Q8):
        center = Q8.subgroup([quaternion_element(Q8, (-1, "1"))])
        Q, proj = quotient(Q8, center)
        assert Q.order == 4
        assert all((x * x).is_identity() for x in Q)
        assert proj.kernel().same_elements(center)

    def test_not_normal(self, S3):
        with pytest.raises(NotNormal):
            quotient(S3, S3.subgroup([T01]))

    def test_not_subgroup(self, S3):
        with pytest.raises(NotSubgroup):
            quotient(S3, symmetric_group(4))

    @pytest.mark.parametrize("name", ["S4", "D4", "Q8"])
    def test_sizes_and_hom(self, name):
        G = named_group(name)
        N = commutator_subgroup(G)
        Q, proj = quotient(G, N)
        assert Q.order * N.order == G.order
        assert proj.violations() == []
        assert proj.is_surjective()


class TestCommutatorAndPowers:
    def test_sym3(self, S3):
        D = commutator_subgroup(S3)
        assert D.order == 3
        assert D.same_elements(alternating_group(3))

    def test_abelian(self):
        assert commutator_subgroup(elementary_abelian(2, 3)).order == 1

    def test_q8(self, Q8):
        D = commutator_subgroup(Q8)
        assert D.order == 2
        assert quaternion_element(Q8, (-1, "1")) in D

    @pytest.mark.parametrize("name", ["S3", "S4", "A4", "D4", "Q8", "D5"])
    def test_against_all_pairs(self, name):
        G = named_group(name)
        assert images(commutator_subgroup(G)) == naive_commutator_subgroup(images(G), G.domain_size)

    def test_cyclic_nine_cubes(self, C9):
        P = power_subgroup(C9, 3)
        assert P.order == 3
        assert {p.images for p in P} == {tuple((x + a) % 9 for x in range(9)) for a in (0, 3, 6)}

    def test_exponent_p(self):
        assert power_subgroup(elementary_abelian(3, 2), 3).order == 1

    def test_d4_squares(self, D4):
        P = power_subgroup(D4, 2)
        rot2 = Perm([(x + 2) % 4 for x in range(4)])
        assert P.order == 2 and rot2 in P

    def test_not_prime(self, D4):
        with pytest.raises(NotPrime):
            power_subgroup(D4, 4)


class TestOrders:
    def test_identity(self, S3):
        assert element_order(S3, S3.identity) == 1

    def test_transposition(self, S3):
        assert element_order(S3, T01) == 2

    def test_five_cycle(self, A5):
        assert element_order(A5, FIVE) == 5 == naive_order(FIVE.images)

    @given(st.permutations(range(7)))
    def test_matches_cycle_lcm(self, imgs):
        p = Perm(imgs)
        G = closure([p], 7)
        assert element_order(G, p) == p.order() == naive_order(tuple(imgs)) == G.order


class TestDirectProduct:
    def test_trivial_factor(self, S3):
        P = direct_product(trivial_group(1), S3)
        assert P.order == 6
        assert [p.images[1:] for p in P] == [tuple(x + 1 for x in q.images) for q in S3]

    def test_sym3_squared(self, S3):
        assert direct_product(S3, S3).order == 36

    def test_alt5_squared(self, A5):
        P = direct_product(A5, A5)
        assert P.order == 3600
        assert sympy_group(P).order() == 3600

    def test_cap(self, A5):
        with pytest.raises(CapExceeded):
            direct_product(A5, A5, cap=1000)


class TestHom:
    def test_bad_table_rejected(self, S3):
        C2 = cyclic_group(2)
        with pytest.raises(NotHomomorphism):
            GroupHom(S3, C2, [0, 1, 0, 1, 0, 1])

    def test_sign_map(self, S3):
        C2 = cyclic_group(2)
        sign = [0 if p in alternating_group(3) else 1 for p in S3]
        hom = GroupHom(S3, C2, sign)
        assert hom.kernel().order == 3

    def test_from_elements_rejects_non_group(self):
        with pytest.raises(NotSubgroup):
            FiniteGroup.from_elements(3, [Perm.identity(3), T01, C012])


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_random_two_generator_groups(a, b):
    G = closure([Perm(a), Perm(b)], 5)
    assert images(G) == naive_closure([tuple(a), tuple(b)], 5)
    for g in G.generators:
        assert len(conjugacy_class(G, g)) * centralizer(G, g).order == G.order


def test_deterministic(A5):
    one = [conjugacy_class(A5, g) for g in A5.generators]
    two = [conjugacy_class(alternating_group(5), g) for g in A5.generators]
    assert one == two


def test_derived_groups_have_valid_generators(S3, D4):
    from profinite_workbench.groups import intersection
    inter = intersection(S3, alternating_group(3))
    kern = GroupHom(S3, cyclic_group(2), [0 if p in alternating_group(3) else 1 for p in S3]).kernel()
    cent = centralizer(D4, D4.elements[1])
    for H in (inter, kern, cent):
        assert all(isinstance(g, Perm) and g in H for g in H.generators)
        assert closure(H.generators, H.domain_size).same_elements(H)
