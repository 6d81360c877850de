import pytest

from finring.classify import SQUARE_ZERO_PAIR
from finring.errors import (
    GuardExceeded,
    NonLocalRingError,
    PreconditionError,
    RingMismatchError,
)
from finring.guards import Guards
from finring.ideals import ideal_generated, idempotent_decomposition
from finring.modules import (
    Module,
    ModuleHom,
    Presentation,
    cokernel,
    compose,
    decompose_over_product,
    direct_sum,
    free_module,
    free_summand_split,
    hom_set,
    ideal_as_module,
    identity_hom,
    image,
    is_isomorphic,
    is_projective,
    kernel,
    minimal_generators,
    quotient_by_ideal,
    regular_module,
    submodule,
    zero_hom,
)
from finring.parsing import parse_presentation, parse_ring_spec
from finring.rings import Zmod, build_ring


def _ring(text):
    return build_ring(parse_ring_spec(text))


def _mod(ring, rel_text):
    return Module(parse_presentation(ring, rel_text))


def test_presented_module_sizes():
    z4 = _ring("Z/4")
    assert _mod(z4, "2").cardinality == 2
    z8 = _ring("Z/8")
    assert _mod(z8, "2,0;0,4").cardinality == 8
    assert _mod(z8, "").cardinality == 1  # zero module


def test_cardinality_times_span_is_full_space():
    z8 = _ring("Z/8")
    for rel in ["", "2", "4", "2,0;0,4", "0;0"]:
        m = _mod(z8, rel)
        assert m.cardinality * len(m.span) == z8.order**m.k


def test_free_modules():
    z4 = _ring("Z/4")
    assert free_module(z4, 1).cardinality == 4
    assert free_module(_ring("Z/8"), 2).cardinality == 64
    assert free_module(z4, 0).cardinality == 1


def test_direct_sum():
    z8 = _ring("Z/8")
    two = _mod(z8, "4")  # R/(4), 4 elements
    four = _mod(z8, "2")  # R/(2), 2 elements
    assert direct_sum(two, four).cardinality == 8
    m = _mod(z8, "2")
    padded = direct_sum(m, _mod(z8, ""))
    assert is_isomorphic(padded, m)[0]
    # distinct ring objects must be rejected
    with pytest.raises(RingMismatchError):
        direct_sum(two, _mod(_ring("Z/8"), "2"))
    z4 = _ring("Z/4")
    assert direct_sum(free_module(z4, 1), free_module(z4, 1)).cardinality == 16


def test_hom_set_counts():
    z4 = _ring("Z/4")
    small = _mod(z4, "2")
    homs = hom_set(small, regular_module(z4))
    assert [h.images for h in homs] == [((0,),), ((2,),)]
    # Hom(R, M) always has |M| elements
    z8 = _ring("Z/8")
    for rel in ["2", "4", "2,0;0,4"]:
        m = _mod(z8, rel)
        assert len(hom_set(regular_module(z8), m)) == m.cardinality
    # maps from R/(2) into the submodule 2R of R over Z/8
    two_r, _ = ideal_as_module(z8, ideal_generated(z8, [2]))
    assert len(hom_set(_mod(z8, "2"), two_r)) == 2


def test_homs_are_linear_exhaustively():
    z9 = _ring("Z/9")
    m1 = _mod(z9, "3")
    m2 = regular_module(z9)
    for h in hom_set(m1, m2):
        for a in m1.elements:
            for b in m1.elements:
                assert h.apply(m1.add(a, b)) == m2.add(h.apply(a), h.apply(b))
            for r in range(z9.order):
                assert h.apply(m1.scal(r, a)) == m2.scal(r, h.apply(a))


def test_kernel_image_cokernel():
    z4 = _ring("Z/4")
    reduction = ModuleHom(regular_module(z4), _mod(z4, "2"), ((1,),))
    ker, emb = kernel(reduction)
    assert ker.cardinality == 2
    assert {emb.apply(el) for el in ker.elements} == {(0,), (2,)}
    ident = identity_hom(_mod(z4, "2"))
    assert kernel(ident)[0].cardinality == 1
    assert cokernel(ident)[0].cardinality == 1
    zero = zero_hom(_mod(z4, "2"), regular_module(z4))
    assert kernel(zero)[0].cardinality == 2
    assert image(zero)[0].cardinality == 1


def test_counting_laws_over_all_homs():
    z8 = _ring("Z/8")
    m1 = _mod(z8, "4")
    m2 = _mod(z8, "2,0;0,4")
    for h in hom_set(m1, m2):
        ker, _ = kernel(h)
        img, _ = image(h)
        cok, _ = cokernel(h)
        assert ker.cardinality * img.cardinality == m1.cardinality
        assert cok.cardinality * img.cardinality == m2.cardinality


def test_isomorphism_examples():
    z4 = _ring("Z/4")
    two_ideal, _ = ideal_as_module(z4, ideal_generated(z4, [2]))
    ok, witness = is_isomorphic(two_ideal, _mod(z4, "2"))
    assert ok and witness.is_bijective()
    z8 = _ring("Z/8")
    assert not is_isomorphic(_mod(z8, "2"), _mod(z8, "4"))[0]
    two_r, _ = ideal_as_module(z8, ideal_generated(z8, [2]))
    assert is_isomorphic(two_r, _mod(z8, "4"))[0]


def test_isomorphism_is_equivalence_on_a_catalog():
    z8 = _ring("Z/8")
    mods = [
        _mod(z8, "2"),
        _mod(z8, "4"),
        regular_module(z8),
        _mod(z8, "2,0;0,4"),
        ideal_as_module(z8, ideal_generated(z8, [4]))[0],
    ]
    n = len(mods)
    rel = [[is_isomorphic(a, b)[0] for b in mods] for a in mods]
    for i in range(n):
        assert rel[i][i]
        for j in range(n):
            assert rel[i][j] == rel[j][i]
            for k in range(n):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]


def test_minimal_generators():
    z8 = _ring("Z/8")
    m = _mod(z8, "2,0;0,4")
    # oracle: |M/mM| = 4 = 2^2 over the residue field GF(2)
    mm = set()
    for r in [0, 2, 4, 6]:
        for x in m.elements:
            mm.add(m.scal(z8.index[r], x))
    closure = {m.zero}
    for p in mm:
        closure |= {m.add(a, p) for a in closure}
    while True:
        bigger = {m.add(a, b) for a in closure for b in closure}
        if bigger == closure:
            break
        closure = bigger
    assert m.cardinality // len(closure) == 4
    count, gens = minimal_generators(m)
    assert count == 2
    assert len(gens) == 2
    assert minimal_generators(free_module(z8, 3))[0] == 3
    assert minimal_generators(_mod(z8, ""))[0] == 0
    with pytest.raises(NonLocalRingError):
        minimal_generators(regular_module(_ring("Z/12")))


def test_is_projective():
    z4 = _ring("Z/4")
    assert is_projective(regular_module(z4))
    assert not is_projective(_mod(z4, "2"))
    prod = _ring("Z/4 x Z/3")
    assert is_projective(regular_module(prod))
    assert not is_projective(_mod(prod, "(2,1)"))


def test_decompose_over_product():
    z12 = _ring("Z/12")
    dec = idempotent_decomposition(z12)
    m = _mod(z12, "6")  # six-element cyclic module
    comps = decompose_over_product(m, dec)
    assert [c.cardinality for c in comps] == [3, 2]
    free = regular_module(z12)
    for comp, factor in zip(decompose_over_product(free, dec), dec.factor_rings):
        assert comp.cardinality == factor.order
    zero = _mod(z12, "")
    assert [c.cardinality for c in decompose_over_product(zero, dec)] == [1, 1]


def test_free_summand_split():
    z4 = _ring("Z/4")
    mixed = direct_sum(free_module(z4, 1), _mod(z4, "2"))
    rank, rest = free_summand_split(mixed)
    assert rank == 1 and rest.cardinality == 2
    rank, rest = free_summand_split(_mod(z4, "2"))
    assert rank == 0 and rest.cardinality == 2
    z8 = _ring("Z/8")
    rank, rest = free_summand_split(free_module(z8, 2))
    assert rank == 2 and rest.cardinality == 1
    with pytest.raises(NonLocalRingError):
        free_summand_split(regular_module(_ring("Z/12")))
    with pytest.raises(PreconditionError):
        free_summand_split(regular_module(_ring(SQUARE_ZERO_PAIR)))


def test_split_complement_has_torsion_only():
    z4 = _ring("Z/4")
    mixed = direct_sum(direct_sum(free_module(z4, 1), _mod(z4, "2")), _mod(z4, "2"))
    rank, rest = free_summand_split(mixed)
    assert rank == 1
    for el in rest.elements:
        if el != rest.zero:
            assert not rest.element_annihilator_is_zero(el)
    resum = direct_sum(free_module(z4, rank), rest)
    assert is_isomorphic(resum, mixed)[0]


def test_submodule_round_trip():
    z8 = _ring("Z/8")
    free = regular_module(z8)
    subset = [(0,), (2,), (4,), (6,)]
    mod, emb = submodule(free, subset)
    assert mod.cardinality == 4
    assert {emb.apply(el) for el in mod.elements} == set(subset)


def test_module_guard():
    guards = Guards(max_module_raw=10)
    ring = build_ring(Zmod(8), guards)
    with pytest.raises(GuardExceeded):
        free_module(ring, 2)


def test_compose_and_identity():
    z4 = _ring("Z/4")
    m = _mod(z4, "2")
    ident = identity_hom(m)
    assert compose(ident, ident).images == ident.images
