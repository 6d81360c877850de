"""Free resolutions, Ext groups, and strongly-Gorenstein-projective decisions.

A module M over a local ring is strongly Gorenstein projective when it sits
in a short exact sequence 0 -> M -> R^n -> M -> 0 and Ext^1(M, Q) vanishes
for every projective Q.  Both halves are decided here with explicit data: a
witness embedding plus projection, or a named obstruction.  Splicing a
witness with itself yields the doubly infinite periodic complex
... -> R^n -f-> R^n -f-> R^n -> ... with image(f) = kernel(f), which
``check_complete_resolution`` verifies together with exactness of the
Hom(-, R) dual.

Testing Ext against Q = R alone suffices: over a finite ring Ext^1 out of a
finitely presented module commutes with finite direct sums in the second
argument, and every projective is a direct summand of a free module of
finite rank here.

Over a product ring every decision is taken componentwise along the
idempotent decomposition; a witness inside a free module of a single rank
need not exist there (component ranks can differ), so product verdicts carry
per-factor verdicts instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from math import prod

from .errors import (
    ConsistencyError,
    GuardExceeded,
    NonLocalRingError,
    RingMismatchError,
    ValidationError,
)
from .ideals import idempotent_decomposition, is_local, wrap_ideal
from .modules import (
    Module,
    ModuleHom,
    compose,
    cokernel,
    decompose_over_product,
    free_module,
    image,
    is_isomorphic,
    iter_homs,
    kernel,
    minimal_generators,
    regular_module,
)


# ---------------------------------------------------------------------------
# covers and resolutions


def free_cover(m: Module) -> ModuleHom:
    """Minimal surjection R^g -> M on the canonical minimal generator list."""
    g, gens = minimal_generators(m)
    return ModuleHom(free_module(m.ring, g), m, tuple(gens))


@dataclass(frozen=True)
class FreeResolution:
    """length free terms F_0..F_{length-1} resolving a module.

    ``covers[i]`` is the minimal cover F_i -> syzygies[i] (syzygies[0] is the
    module itself); ``differentials[i]`` is F_{i+1} -> F_i.  Exactness
    (image = kernel, elementwise) is verified at construction.
    """

    module: Module
    covers: tuple
    differentials: tuple
    syzygies: tuple
    ranks: tuple

    @property
    def length(self) -> int:
        return len(self.covers)


def free_resolution(m: Module, length: int) -> FreeResolution:
    if length < 1:
        raise ValidationError("resolution length must be >= 1")
    covers = []
    diffs = []
    syzygies = [m]
    target = m
    prev_embed = None
    for step in range(length):
        cover = free_cover(target)
        covers.append(cover)
        if prev_embed is not None:
            diffs.append(compose(prev_embed, cover))
        if step < length - 1:  # the syzygy after the last term is never used
            target, prev_embed = kernel(cover)
            syzygies.append(target)
    _verify_resolution_exactness(covers, diffs)
    return FreeResolution(
        m,
        tuple(covers),
        tuple(diffs),
        tuple(syzygies),
        tuple(c.source.k for c in covers),
    )


def _verify_resolution_exactness(covers, diffs) -> None:
    # d_i . d_{i+1} = 0 and image(d_{i+1}) = kernel(d_i) at every stage
    for i in range(len(diffs)):
        upstream = diffs[i]
        downstream = covers[i] if i == 0 else diffs[i - 1]
        if i > 0 and not compose(downstream, upstream).is_zero():
            raise ConsistencyError("consecutive differentials do not compose to zero")
        im_set = {upstream.apply(el) for el in upstream.source.elements}
        ker_set = {
            el
            for el in downstream.source.elements
            if downstream.apply(el) == downstream.target.zero
        }
        if im_set != ker_set:
            raise ConsistencyError(f"resolution is not exact at stage {i}")


# ---------------------------------------------------------------------------
# Ext^1


@dataclass(frozen=True)
class ExtGroup:
    """Ext^1(M, Q) as a finite group: its order and its annihilator ideal."""

    order: int
    annihilator: object
    kernel_order: int
    image_order: int

    @property
    def is_zero(self) -> bool:
        return self.order == 1


def ext1(m: Module, q: Module) -> ExtGroup:
    """Ext^1(m, q) = ker Hom(d2, q) / im Hom(d1, q), computed by enumeration.

    Over a product ring both modules are decomposed and the component Ext
    groups are combined (Ext is additive over finite ring products).
    """
    if m.ring is not q.ring:
        raise RingMismatchError("ext needs modules over the same ring")
    ring = m.ring
    dec = idempotent_decomposition(ring)
    if not dec.is_trivial:
        mcomps = decompose_over_product(m, dec)
        qcomps = decompose_over_product(q, dec)
        parts = [ext1(mc, qc) for mc, qc in zip(mcomps, qcomps)]
        ann_values = set()
        for combo in itertools.product(
            *(p.annihilator.sorted_elements() for p in parts)
        ):
            acc = ring.zero
            for v in combo:
                acc = ring.add(acc, v)
            ann_values.add(acc)
        ann = wrap_ideal(ring, {ring.index[v] for v in ann_values})
        return ExtGroup(
            prod(p.order for p in parts),
            ann,
            prod(p.kernel_order for p in parts),
            prod(p.image_order for p in parts),
        )
    res = free_resolution(m, 3)
    d1, d2 = res.differentials
    g0, g1, _ = res.ranks
    guards = ring.guards
    if q.cardinality**g0 > guards.max_hom_candidates or (
        q.cardinality**g1 > guards.max_hom_candidates
    ):
        raise GuardExceeded("ext enumeration exceeds the hom guard")
    zero_idx = ring.index[ring.zero]

    def transpose_apply(columns, w):
        out = []
        for col in columns:
            acc = q.zero
            for coeff, wi in zip(col, w):
                if coeff != zero_idx:
                    acc = q.add(acc, q.scal(coeff, wi))
            out.append(acc)
        return tuple(out)

    cols1 = d1.images  # g1 columns over F0
    cols2 = d2.images  # g2 columns over F1
    image_set = {
        transpose_apply(cols1, w)
        for w in itertools.product(q.elements, repeat=g0)
    }
    zero_vec = (q.zero,) * len(cols2)
    kernel_list = [
        v
        for v in itertools.product(q.elements, repeat=g1)
        if transpose_apply(cols2, v) == zero_vec
    ]
    kernel_set = set(kernel_list)
    if not image_set <= kernel_set:
        raise ConsistencyError("Hom-dual image is not inside the Hom-dual kernel")
    if len(kernel_list) % len(image_set):
        raise ConsistencyError("Ext quotient size is not integral")
    ann_indices = [
        r
        for r in range(ring.order)
        if all(tuple(q.scal(r, vc) for vc in v) in image_set for v in kernel_list)
    ]
    return ExtGroup(
        len(kernel_list) // len(image_set),
        wrap_ideal(ring, ann_indices),
        len(kernel_list),
        len(image_set),
    )


# ---------------------------------------------------------------------------
# strongly Gorenstein projective decisions


@dataclass(frozen=True)
class SgpWitness:
    """A verified short exact sequence 0 -> M -> R^rank -> M -> 0."""

    module: Module
    rank: int
    embedding: ModuleHom
    projection: ModuleHom
    ext_vanishes: bool | None


@dataclass(frozen=True)
class SgpObstruction:
    #: one of "cardinality", "no_embedding_with_self_cokernel", "ext_nonzero"
    kind: str
    detail: str
    factor: int | None = None


@dataclass(frozen=True)
class SgpVerdict:
    decision: bool
    module: Module
    witness: SgpWitness | None = None
    obstruction: SgpObstruction | None = None
    ext: ExtGroup | None = None
    components: tuple | None = None


def _validate_witness(w: SgpWitness) -> None:
    ring = w.module.ring
    if ring.order**w.rank != w.module.cardinality**2:
        raise ConsistencyError("witness rank violates |R|^n = |M|^2")
    if not w.embedding.is_injective():
        raise ConsistencyError("witness embedding is not injective")
    if not w.projection.is_surjective():
        raise ConsistencyError("witness projection is not surjective")
    free = w.embedding.target
    im = {w.embedding.apply(el) for el in w.module.elements}
    ker = {el for el in free.elements if w.projection.apply(el) == w.module.zero}
    if im != ker:
        raise ConsistencyError("witness sequence is not exact in the middle")


def find_sgp_witness(m: Module):
    """First (lexicographic) embedding M -> R^n with cokernel isomorphic to M.

    Returns an :class:`SgpWitness` or an :class:`SgpObstruction` naming why
    the search cannot succeed (no integer n with |R|^n = |M|^2) or that it
    was exhausted.
    """
    ring = m.ring
    if not is_local(ring):
        raise NonLocalRingError(
            "witness search runs over local rings; decompose over a product first"
        )
    square = m.cardinality**2
    rank = 0
    power = 1
    while power < square:
        power *= ring.order
        rank += 1
    if power != square:
        return SgpObstruction(
            "cardinality",
            f"|M|^2 = {square} is not a power of |R| = {ring.order}",
        )
    target = free_module(ring, rank)
    for h in iter_homs(m, target):
        if not h.is_injective():
            continue
        coker, proj = cokernel(h)
        found, iso = is_isomorphic(coker, m)
        if found:
            witness = SgpWitness(m, rank, h, compose(iso, proj), None)
            _validate_witness(witness)
            return witness
    return SgpObstruction(
        "no_embedding_with_self_cokernel",
        f"no injective map into R^{rank} has cokernel isomorphic to the module",
    )


def is_strongly_gorenstein_projective(m: Module) -> SgpVerdict:
    """Witness search plus Ext^1(M, R) = 0; componentwise over products."""
    ring = m.ring
    dec = idempotent_decomposition(ring)
    if not dec.is_trivial:
        comps = decompose_over_product(m, dec)
        sub = tuple(is_strongly_gorenstein_projective(c) for c in comps)
        for fi, verdict in enumerate(sub):
            if not verdict.decision:
                obs = replace(verdict.obstruction, factor=fi)
                return SgpVerdict(False, m, obstruction=obs, components=sub)
        return SgpVerdict(True, m, components=sub)
    outcome = find_sgp_witness(m)
    if isinstance(outcome, SgpObstruction):
        return SgpVerdict(False, m, obstruction=outcome)
    ext = ext1(m, regular_module(ring))
    if ext.is_zero:
        return SgpVerdict(
            True, m, witness=replace(outcome, ext_vanishes=True), ext=ext
        )
    return SgpVerdict(
        False,
        m,
        obstruction=SgpObstruction(
            "ext_nonzero", f"Ext^1(M, R) has order {ext.order}"
        ),
        ext=ext,
    )


# ---------------------------------------------------------------------------
# periodic complexes


@dataclass(frozen=True)
class StronglyCompleteResolution:
    """The periodic complex ... -> R^n -f-> R^n -f-> ... with M = image(f)."""

    ring: object
    rank: int
    map: ModuleHom
    window: int = 1


def strongly_complete_resolution(w: SgpWitness) -> StronglyCompleteResolution:
    """Splice a witness into its periodic map f = embedding . projection."""
    f = compose(w.embedding, w.projection)
    free = w.embedding.target
    im = {f.apply(el) for el in free.elements}
    ker = {el for el in free.elements if f.apply(el) == free.zero}
    if im != ker:
        raise ConsistencyError("periodic map is not exact")
    image_module, _ = image(f)
    found, _ = is_isomorphic(image_module, w.module)
    if not found:
        raise ConsistencyError("periodic map image is not the witnessed module")
    return StronglyCompleteResolution(w.module.ring, w.rank, f, 1)


@dataclass(frozen=True)
class CompleteResolutionReport:
    forward_exact: bool
    dual_exact: bool
    image_order: int
    kernel_order: int
    dual_image_order: int
    dual_kernel_order: int

    @property
    def passed(self) -> bool:
        return self.forward_exact and self.dual_exact


def dual_hom(h: ModuleHom) -> ModuleHom:
    """Transpose action on Hom(R^n, R) identified with R^n."""
    free = h.source
    if free is not h.target or free.relation_columns:
        raise ValidationError("dualization expects an endomorphism of a free module")
    n = free.k
    images = tuple(
        free.rep_of[tuple(h.images[j][i] for j in range(n))] for i in range(n)
    )
    return ModuleHom(free, free, images)


def check_complete_resolution(res) -> CompleteResolutionReport:
    """Verify image = kernel for the periodic map and for its Hom(-, R) dual.

    Accepts a resolution or a bare free endomorphism; failures are reported,
    not raised, so degenerate maps can be inspected.
    """
    hom = res.map if isinstance(res, StronglyCompleteResolution) else res
    free = hom.source
    if free is not hom.target:
        raise ValidationError("periodic check expects an endomorphism")
    im = {hom.apply(el) for el in free.elements}
    ker = {el for el in free.elements if hom.apply(el) == free.zero}
    dual = dual_hom(hom)
    dual_im = {dual.apply(el) for el in free.elements}
    dual_ker = {el for el in free.elements if dual.apply(el) == free.zero}
    return CompleteResolutionReport(
        forward_exact=im == ker,
        dual_exact=dual_im == dual_ker,
        image_order=len(im),
        kernel_order=len(ker),
        dual_image_order=len(dual_im),
        dual_kernel_order=len(dual_ker),
    )
