import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chssrigid.characters import (CharacterError, FormalCharacter, IrrSum, decompose, ext_power,
                                  irr_character, sym_power, tensor_decompose, weyl_dimension)
from chssrigid.weights import (ReductiveRank, SimpleFactor, Weight, WeightError, build_root_data,
                               format_weight, parse_weight)


def rank_of(*types, torus=0):
    return ReductiveRank(tuple(SimpleFactor(t[0], int(t[1:])) for t in types), torus)


A1, A2, A3, A4, D4, D5 = (rank_of(t) for t in ("A1", "A2", "A3", "A4", "D4", "D5"))
A1A2 = rank_of("A1", "A2", torus=1)
SMALL_RANKS = [A1, A2, A3, D4, A1A2]


def w(rank, *coords, charges=None):
    if charges is None:
        charges = (0,) * rank.torus_dim
    return Weight(tuple(coords), tuple(Fraction(c) for c in charges), rank)


@pytest.mark.parametrize("rank,coords,dim", [
    (A1, (4,), 5), (A2, (1, 1), 8), (A2, (2, 0), 6), (A3, (1, 0, 1), 15),
    (A4, (0, 1, 0, 0), 10), (D4, (0, 1, 0, 0), 28), (D5, (1, 0, 0, 0, 0), 10),
    (D5, (0, 0, 0, 0, 1), 16), (D5, (0, 1, 0, 0, 0), 45), (D5, (0, 0, 0, 1, 1), 210),
])
def test_weyl_dimension_known_values(rank, coords, dim):
    assert weyl_dimension(build_root_data(rank), w(rank, *coords)) == dim


def test_zero_weight_multiplicities_of_adjoints():
    chi = irr_character(build_root_data(A2), w(A2, 1, 1))
    assert chi[w(A2, 0, 0)] == 2
    chi = irr_character(build_root_data(D4), w(D4, 0, 1, 0, 0))
    assert chi[w(D4, 0, 0, 0, 0)] == 4


def test_non_dominant_weight_rejected():
    with pytest.raises(WeightError):
        weyl_dimension(build_root_data(A2), w(A2, -1, 2))


def test_unsupported_series():
    with pytest.raises(WeightError):
        SimpleFactor("E", 6)
    with pytest.raises(WeightError):
        SimpleFactor("D", 2)


def test_format_parse_roundtrip():
    x = w(A1A2, 2, 1, 0, charges=(Fraction(-3, 2),))
    assert parse_weight(format_weight(x)) == x


def small_dominant(rank, bound=2):
    return st.tuples(*[st.integers(0, bound)] * rank.semisimple_rank).map(
        lambda c: w(rank, *c, charges=(1,) * rank.torus_dim))


@given(st.sampled_from(SMALL_RANKS).flatmap(small_dominant))
def test_freudenthal_mass_is_weyl_dimension(lam):
    rd = build_root_data(lam.rank)
    chi = irr_character(rd, lam)
    assert chi.mass() == weyl_dimension(rd, lam)
    assert chi.is_weyl_invariant(rd)
    assert decompose(chi, rd) == IrrSum.of(lam.rank, [lam])


# --- an independent peeling oracle: the constituent highest weights are the
# dominant weights of the remainder maximizing |mu + rho|^2


def _norm_rho(rd, coords):
    total, k = Fraction(0), 0
    for fr in rd.factors:
        v = [c + 1 for c in coords[k:k + fr.rank]]
        total += fr.inner(v, v)
        k += fr.rank
    return total


def oracle_decompose(rd, chi: FormalCharacter) -> dict:
    rem = {k: v for k, v in chi.data.items() if v}
    out = {}
    while rem:
        dom = [k for k in rem if all(c >= 0 for c in k[0])]
        top = max(dom, key=lambda k: (_norm_rho(rd, k[0]), k))
        m = rem[top]
        assert m > 0
        out[top] = m
        for k2, v in irr_character(rd, Weight(top[0], top[1], rd.rank)).data.items():
            rem[k2] = rem.get(k2, 0) - m * v
            if not rem[k2]:
                del rem[k2]
    return out


def random_pairs(count, max_product_dim=400, seed=7):
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        rank = rng.choice(SMALL_RANKS + [A4])
        rd = build_root_data(rank)
        a = w(rank, *[rng.randint(0, 2) for _ in range(rank.semisimple_rank)], charges=(1,) * rank.torus_dim)
        b = w(rank, *[rng.randint(0, 2) for _ in range(rank.semisimple_rank)], charges=(-2,) * rank.torus_dim)
        if weyl_dimension(rd, a) * weyl_dimension(rd, b) <= max_product_dim:
            pairs.append((rd, a, b))
    return pairs


def klimyk_agrees(rd, a, b) -> bool:
    got = tensor_decompose(rd, a, b)
    chi = irr_character(rd, a) * irr_character(rd, b)
    return got.data == oracle_decompose(rd, chi) and got.dimension(rd) == chi.mass()


def test_klimyk_against_character_product_oracle():
    pairs = random_pairs(200)
    bad = [(format_weight(a), format_weight(b)) for rd, a, b in pairs if not klimyk_agrees(rd, a, b)]
    assert not bad


@given(st.sampled_from([A1, A2, A1A2]).flatmap(lambda r: st.tuples(small_dominant(r), small_dominant(r))))
def test_klimyk_property(pair):
    a, b = pair
    assert klimyk_agrees(build_root_data(a.rank), a, b)


def test_tensor_product_is_commutative():
    rd = build_root_data(A3)
    a, b = w(A3, 1, 0, 1), w(A3, 0, 2, 0)
    assert tensor_decompose(rd, a, b) == tensor_decompose(rd, b, a)


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_sym_and_ext_power_masses(k):
    from math import comb
    rd = build_root_data(A3)
    chi = irr_character(rd, w(A3, 1, 0, 0))
    assert sym_power(chi, k).mass() == comb(4 + k - 1, k)
    assert ext_power(chi, k).mass() == comb(4, k)


def test_exterior_square_of_vector():
    rd = build_root_data(A4)
    chi = irr_character(rd, w(A4, 1, 0, 0, 0))
    assert decompose(ext_power(chi, 2), rd) == IrrSum.of(A4, [w(A4, 0, 1, 0, 0)])
    assert decompose(sym_power(chi, 2), rd) == IrrSum.of(A4, [w(A4, 2, 0, 0, 0)])


def test_virtual_character_rejected():
    rd = build_root_data(A1)
    chi = irr_character(rd, w(A1, 1)) - irr_character(rd, w(A1, 2))
    with pytest.raises(CharacterError):
        decompose(chi, rd)


def test_irrsum_minus_never_negative():
    s = IrrSum.of(A1, [w(A1, 1)])
    with pytest.raises(CharacterError):
        s.minus(IrrSum.of(A1, [w(A1, 1), w(A1, 1)]))
    assert s.intersect(IrrSum.of(A1, [w(A1, 1), w(A1, 3)])) == s
    assert s.minus(s).count() == 0


def test_semisimple_forgets_charges():
    s = IrrSum.of(A1A2, [w(A1A2, 1, 0, 0, charges=(2,)), w(A1A2, 1, 0, 0, charges=(-1,))])
    assert s.semisimple().count() == 2 and len(s.semisimple()) == 1
