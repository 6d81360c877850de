"""Finitely presented modules over a finite ring.

A module is R^k modulo the span of the columns of a relation matrix.  Its
elements are enumerated as cosets, each carried by its lexicographically
least representative.  Representatives are tuples of *element indices* into
``ring.elements`` (so the canonical order on module elements is plain tuple
order); ``Presentation`` holds element values, the public-facing form.

Everything here is immutable after construction and deterministic: greedy
generator searches pick the least candidate in canonical order, hom sets are
enumerated lexicographically by generator-image tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    ConsistencyError,
    GuardExceeded,
    NonLocalRingError,
    PreconditionError,
    RingMismatchError,
    ValidationError,
)
from .ideals import (
    Ideal,
    IdempotentDecomposition,
    idempotent_decomposition,
    is_local,
    quasi_frobenius_certificate,
    unique_maximal_ideal,
)
from .rings import Ring


@dataclass(frozen=True)
class Presentation:
    """k generators and a relation matrix, stored as columns of element values."""

    ring: Ring
    generators: int
    relations: tuple

    def __post_init__(self):
        if self.generators < 0:
            raise ValidationError("generator count must be >= 0")
        for col in self.relations:
            if len(col) != self.generators:
                raise ValidationError("relation column length must equal generator count")
            for v in col:
                if v not in self.ring.index:
                    raise ValidationError(f"{v!r} is not an element of the ring")


class Module:
    """Enumerated cosets of R^k modulo the relation-column span."""

    def __init__(self, presentation: Presentation):
        ring = presentation.ring
        k = presentation.generators
        n = ring.order
        if n**k > ring.guards.max_module_raw:
            raise GuardExceeded(
                f"module over {ring.describe()} with {k} generators needs "
                f"{n ** k} raw tuples (guard {ring.guards.max_module_raw})"
            )
        addl, mull, negl = ring.tables_list()
        self.ring = ring
        self.presentation = presentation
        self.k = k
        self._addl, self._mull, self._negl = addl, mull, negl
        zero_idx = ring.index[ring.zero]
        self.relation_columns = [
            tuple(ring.index[v] for v in col) for col in presentation.relations
        ]
        zero_tuple = (zero_idx,) * k
        span = {zero_tuple}
        for col in self.relation_columns:
            multiples = {tuple(mull[r][c] for c in col) for r in range(n)}
            span = {
                tuple(addl[a][b] for a, b in zip(s, m))
                for s in span
                for m in multiples
            }
        self.span = frozenset(span)
        rep_of: dict = {}
        elements = []
        for raw in itertools.product(range(n), repeat=k):
            if raw in rep_of:
                continue
            elements.append(raw)
            for s in span:
                rep_of[tuple(addl[a][b] for a, b in zip(raw, s))] = raw
        self.rep_of = rep_of
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        self.zero = zero_tuple if k else ()
        self._cache: dict = {}
        if len(elements) * len(span) != n**k:
            raise ConsistencyError("coset count times span size misses |R|^k")

    # -- structure -----------------------------------------------------------

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return (
            f"<module over {self.ring.describe()} on {self.k} generators, "
            f"{self.cardinality} elements>"
        )

    def add(self, a, b):
        return self.rep_of[tuple(self._addl[x][y] for x, y in zip(a, b))]

    def neg(self, a):
        return self.rep_of[tuple(self._negl[x] for x in a)]

    def scal(self, r_idx: int, a):
        return self.rep_of[tuple(self._mull[r_idx][x] for x in a)]

    def scal_value(self, r_value, a):
        return self.scal(self.ring.index[r_value], a)

    def generator_images(self) -> list:
        """Classes of the standard basis vectors of R^k."""
        zero_idx = self.ring.index[self.ring.zero]
        one_idx = self.ring.index[self.ring.one]
        out = []
        for j in range(self.k):
            raw = tuple(one_idx if t == j else zero_idx for t in range(self.k))
            out.append(self.rep_of[raw])
        return out

    def element_values(self, el) -> tuple:
        return tuple(self.ring.elements[i] for i in el)

    def annihilator_index_set(self) -> frozenset:
        """Ring elements (as indices) killing the whole module."""
        if "ann" not in self._cache:
            self._cache["ann"] = frozenset(
                r
                for r in range(self.ring.order)
                if all(self.scal(r, x) == self.zero for x in self.elements)
            )
        return self._cache["ann"]

    def element_annihilator_is_zero(self, el) -> bool:
        """True iff no nonzero ring element kills ``el``."""
        zero_idx = self.ring.index[self.ring.zero]
        return all(
            self.scal(r, el) != self.zero
            for r in range(self.ring.order)
            if r != zero_idx
        )


def module_from_presentation(presentation: Presentation) -> Module:
    return Module(presentation)


def free_module(ring: Ring, rank: int) -> Module:
    return Module(Presentation(ring, rank, ()))


def regular_module(ring: Ring) -> Module:
    """R as a module over itself (free of rank 1); cached on the ring."""
    if "regular_module" not in ring._cache:
        ring._cache["regular_module"] = free_module(ring, 1)
    return ring._cache["regular_module"]


def quotient_by_ideal(ring: Ring, ideal: Ideal) -> Module:
    """R/I, presented on one generator with I's generators as relations."""
    cols = tuple((g,) for g in ideal.generators)
    return Module(Presentation(ring, 1, cols))


def ideal_as_module(ring: Ring, ideal: Ideal):
    """The ideal as a submodule of R; returns (module, embedding)."""
    free1 = regular_module(ring)
    subset = [(i,) for i in ideal.indices]
    return submodule(free1, subset)


def direct_sum(m1: Module, m2: Module) -> Module:
    if m1.ring is not m2.ring:
        raise RingMismatchError("direct sum needs modules over the same ring")
    ring = m1.ring
    z = ring.zero
    cols = [tuple(col) + (z,) * m2.k for col in m1.presentation.relations]
    cols += [(z,) * m1.k + tuple(col) for col in m2.presentation.relations]
    return Module(Presentation(ring, m1.k + m2.k, tuple(cols)))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class ModuleHom:
    """A hom determined by generator images; well-definedness checked on build."""

    source: Module
    target: Module
    images: tuple

    def __post_init__(self):
        if self.source.ring is not self.target.ring:
            raise RingMismatchError("hom endpoints live over different rings")
        if len(self.images) != self.source.k:
            raise ValidationError("one image per source generator required")
        for im in self.images:
            if im not in self.target.index:
                raise ValidationError("hom image is not a target element")
        t = self.target
        for col in self.source.relation_columns:
            acc = t.zero
            for coeff, im in zip(col, self.images):
                acc = t.add(acc, t.scal(coeff, im))
            if acc != t.zero:
                raise ValidationError("images do not satisfy the source relations")

    def apply(self, el):
        t = self.target
        zero_idx = self.source.ring.index[self.source.ring.zero]
        acc = t.zero
        for coeff, im in zip(el, self.images):
            if coeff != zero_idx:
                acc = t.add(acc, t.scal(coeff, im))
        return acc

    def image_elements(self) -> list:
        seen = set()
        out = []
        for el in self.source.elements:
            y = self.apply(el)
            if y not in seen:
                seen.add(y)
                out.append(y)
        out.sort(key=self.target.index.__getitem__)
        return out

    def is_injective(self) -> bool:
        seen = set()
        for el in self.source.elements:
            y = self.apply(el)
            if y in seen:
                return False
            seen.add(y)
        return True

    def is_surjective(self) -> bool:
        return len(self.image_elements()) == self.target.cardinality

    def is_bijective(self) -> bool:
        return (
            self.source.cardinality == self.target.cardinality and self.is_injective()
        )

    def is_zero(self) -> bool:
        return all(im == self.target.zero for im in self.images)


def compose(outer: ModuleHom, inner: ModuleHom) -> ModuleHom:
    if inner.target is not outer.source:
        raise RingMismatchError("homs do not compose: target/source mismatch")
    return ModuleHom(inner.source, outer.target, tuple(outer.apply(im) for im in inner.images))


def identity_hom(m: Module) -> ModuleHom:
    return ModuleHom(m, m, tuple(m.generator_images()))


def zero_hom(m1: Module, m2: Module) -> ModuleHom:
    return ModuleHom(m1, m2, (m2.zero,) * m1.k)


def iter_homs(m1: Module, m2: Module):
    """All homs m1 -> m2 in lexicographic generator-image order."""
    if m1.ring is not m2.ring:
        raise RingMismatchError("hom set needs modules over the same ring")
    guards = m1.ring.guards
    count = m2.cardinality ** m1.k
    if count > guards.max_hom_candidates:
        raise GuardExceeded(
            f"hom enumeration would scan {count} candidates "
            f"(guard {guards.max_hom_candidates})"
        )
    rels = m1.relation_columns
    zero_idx = m1.ring.index[m1.ring.zero]
    for images in itertools.product(m2.elements, repeat=m1.k):
        ok = True
        for col in rels:
            acc = m2.zero
            for coeff, im in zip(col, images):
                if coeff != zero_idx:
                    acc = m2.add(acc, m2.scal(coeff, im))
            if acc != m2.zero:
                ok = False
                break
        if ok:
            yield ModuleHom(m1, m2, images)


def hom_set(m1: Module, m2: Module) -> list:
    return list(iter_homs(m1, m2))


# ---------------------------------------------------------------------------
# submodules, kernels, images, cokernels


def _greedy_submodule_generators(ambient: Module, subset) -> list:
    """Least-element-first generators of a submodule given as an element list."""
    ring = ambient.ring
    target = set(subset)
    span = {ambient.zero}
    gens = []
    for el in subset:
        if len(span) == len(target):
            break
        if el in span:
            continue
        gens.append(el)
        multiples = {ambient.scal(r, el) for r in range(ring.order)}
        span = {ambient.add(a, b) for a in span for b in multiples}
    if span != target:
        raise ConsistencyError("subset is not a submodule")
    return gens


def submodule(ambient: Module, subset, gens=None):
    """Present a submodule (given by its element list) and return (module, embedding).

    Generators default to the greedy canonical choice; relations are found by
    exhaustively evaluating R^k onto the generators.
    """
    ring = ambient.ring
    subset = sorted(set(subset), key=ambient.index.__getitem__)
    if gens is None:
        gens = _greedy_submodule_generators(ambient, subset)
    k = len(gens)
    n = ring.order
    if n**k > ring.guards.max_module_raw:
        raise GuardExceeded(
            f"relation search over {n ** k} tuples exceeds the module guard"
        )
    rel_subset = []
    for a in itertools.product(range(n), repeat=k):
        acc = ambient.zero
        for coeff, g in zip(a, gens):
            acc = ambient.add(acc, ambient.scal(coeff, g))
        if acc == ambient.zero:
            rel_subset.append(a)
    rel_gens = _greedy_free_generators(ring, k, rel_subset)
    cols = tuple(tuple(ring.elements[i] for i in col) for col in rel_gens)
    mod = Module(Presentation(ring, k, cols))
    if mod.cardinality != len(subset):
        raise ConsistencyError("recovered presentation has the wrong cardinality")
    embedding = ModuleHom(mod, ambient, tuple(gens))
    return mod, embedding


def _greedy_free_generators(ring: Ring, k: int, subset) -> list:
    """Greedy generators of a submodule of R^k given as raw index tuples."""
    addl, mull, _ = ring.tables_list()
    zero_idx = ring.index[ring.zero]
    zero = (zero_idx,) * k
    target = set(subset)
    span = {zero}
    gens = []
    for a in sorted(subset):
        if len(span) == len(target):
            break
        if a in span:
            continue
        gens.append(a)
        multiples = {tuple(mull[r][c] for c in a) for r in range(ring.order)}
        span = {
            tuple(addl[s][t] for s, t in zip(u, m)) for u in span for m in multiples
        }
    if span != target:
        raise ConsistencyError("relation subset is not a submodule of R^k")
    return gens


def kernel(h: ModuleHom):
    """Kernel as a presented module plus its embedding into the source."""
    subset = [el for el in h.source.elements if h.apply(el) == h.target.zero]
    return submodule(h.source, subset)


def image(h: ModuleHom):
    """Image as a presented module plus its embedding into the target."""
    return submodule(h.target, h.image_elements())


def cokernel(h: ModuleHom):
    """Cokernel as a presented module plus the projection from the target."""
    t = h.target
    ring = t.ring
    img = h.image_elements()
    img_gens = _greedy_submodule_generators(t, img)
    extra = tuple(tuple(ring.elements[i] for i in g) for g in img_gens)
    pres = Presentation(ring, t.k, tuple(t.presentation.relations) + extra)
    coker = Module(pres)
    images = []
    zero_idx = ring.index[ring.zero]
    one_idx = ring.index[ring.one]
    for j in range(t.k):
        raw = tuple(one_idx if i == j else zero_idx for i in range(t.k))
        images.append(coker.rep_of[raw])
    proj = ModuleHom(t, coker, tuple(images))
    return coker, proj


# ---------------------------------------------------------------------------
# structural decisions


def is_isomorphic(m1: Module, m2: Module):
    """(found, witness): brute-force search with invariant pre-filters.

    Filters: cardinality, module annihilator, and (over local rings) minimal
    generator count.  The witness is the first bijective hom in canonical
    order.
    """
    if m1.ring is not m2.ring:
        raise RingMismatchError("isomorphism test needs modules over the same ring")
    if m1.cardinality != m2.cardinality:
        return False, None
    if m1.annihilator_index_set() != m2.annihilator_index_set():
        return False, None
    if is_local(m1.ring):
        if minimal_generators(m1)[0] != minimal_generators(m2)[0]:
            return False, None
    for h in iter_homs(m1, m2):
        if h.is_bijective():
            return True, h
    return False, None


def minimal_generators(m: Module):
    """(count, generator list) over a local ring.

    The count is the dimension of M/mM over the residue field; the list is
    the greedy canonical choice realizing it (least element outside the span
    of the picks so far plus mM).
    """
    if "minimal" in m._cache:
        return m._cache["minimal"]
    ring = m.ring
    if not is_local(ring):
        raise NonLocalRingError(
            "minimal generators are only well-behaved over local rings; decompose first"
        )
    max_ideal = unique_maximal_ideal(ring)
    products = {m.scal(r, x) for r in max_ideal.indices for x in m.elements}
    mm = _additive_closure(m, products)
    span_plus = set(mm)
    gens = []
    while len(span_plus) < m.cardinality:
        x = next(el for el in m.elements if el not in span_plus)
        gens.append(x)
        multiples = {m.scal(r, x) for r in range(ring.order)}
        span_plus = {m.add(a, b) for a in span_plus for b in multiples}
    q = ring.order // max_ideal.order
    if len(mm) * q ** len(gens) != m.cardinality:
        raise ConsistencyError("generator count disagrees with dim M/mM")
    m._cache["minimal"] = (len(gens), gens)
    return m._cache["minimal"]


def _additive_closure(m: Module, seed) -> set:
    closure = {m.zero}
    for p in sorted(seed):
        if p in closure:
            continue
        cyc = [p]
        cur = m.add(p, p)
        while cur != p:
            cyc.append(cur)
            cur = m.add(cur, p)
        closure = {m.add(a, b) for a in closure for b in cyc}
    return closure


def is_projective(m: Module) -> bool:
    """Projective = free over a finite local ring; componentwise over products."""
    dec = idempotent_decomposition(m.ring)
    if not dec.is_trivial:
        return all(is_projective(c) for c in decompose_over_product(m, dec))
    g, gens = minimal_generators(m)
    if m.cardinality != m.ring.order**g:
        return False
    cover = ModuleHom(free_module(m.ring, g), m, tuple(gens))
    return cover.is_bijective()


def decompose_over_product(m: Module, dec: IdempotentDecomposition) -> list:
    """Components e_i M as modules over the local factors; re-sum is verified."""
    ring = m.ring
    if dec.ring is not ring:
        raise PreconditionError("decomposition belongs to a different ring")
    comps = []
    for e_val, fring in zip(dec.idempotents, dec.factor_rings):
        cols = tuple(
            tuple(ring.mul(e_val, v) for v in col) for col in m.presentation.relations
        )
        comps.append(Module(Presentation(fring, m.k, cols)))
    _verify_decomposition(m, dec, comps)
    return comps


def _verify_decomposition(m: Module, dec: IdempotentDecomposition, comps) -> None:
    """Check that x -> (e_i x) is an isomorphism onto the sum of components.

    Bijectivity is verified on every element.  The additive and scalar laws
    are verified exhaustively for modules of at most 64 elements and on a
    fixed-seed sample of pairs above that, mirroring the ring axiom checks.
    """
    import random

    ring = m.ring
    mull = ring.tables_list()[1]
    projections = []
    for e_val, fring in zip(dec.idempotents, dec.factor_rings):
        row = mull[ring.index[e_val]]
        projections.append([fring.index[ring.elements[j]] for j in row])

    def phi(x):
        return tuple(
            comp.rep_of[tuple(proj[c] for c in x)]
            for comp, proj in zip(comps, projections)
        )

    size = 1
    for comp in comps:
        size *= comp.cardinality
    phi_of = {x: phi(x) for x in m.elements}
    if len(set(phi_of.values())) != m.cardinality or size != m.cardinality:
        raise ConsistencyError("module does not re-sum to its product decomposition")

    def additive(x, y):
        want = tuple(
            c.add(a, b) for c, a, b in zip(comps, phi_of[x], phi_of[y])
        )
        return phi_of[m.add(x, y)] == want

    def equivariant(r_idx, x):
        want = tuple(
            c.scal(p[r_idx], a) for c, p, a in zip(comps, projections, phi_of[x])
        )
        return phi_of[m.scal(r_idx, x)] == want

    if m.cardinality <= 64:
        ok = all(additive(x, y) for x in m.elements for y in m.elements) and all(
            equivariant(r, x) for r in range(ring.order) for x in m.elements
        )
    else:
        rnd = random.Random(ring.guards.axiom_seed)
        ok = all(
            additive(
                m.elements[rnd.randrange(m.cardinality)],
                m.elements[rnd.randrange(m.cardinality)],
            )
            and equivariant(
                rnd.randrange(ring.order), m.elements[rnd.randrange(m.cardinality)]
            )
            for _ in range(ring.guards.axiom_sample_count)
        )
    if not ok:
        raise ConsistencyError("componentwise map does not preserve the module laws")


def free_summand_split(m: Module):
    """Maximal split M = R^rank + N with every element of N annihilated by
    something nonzero.  Requires a local quasi-Frobenius ring.

    An element with zero annihilator spans a free cyclic submodule, which is
    injective over a quasi-Frobenius ring and therefore splits off; the
    splitting hom is found by explicit search over Hom(M, R).
    """
    ring = m.ring
    if not is_local(ring):
        raise NonLocalRingError("free-summand splitting requires a local ring")
    if quasi_frobenius_certificate(ring) is not None:
        raise PreconditionError(
            "free-summand splitting requires a quasi-Frobenius ring"
        )
    one_idx = ring.index[ring.one]
    rank = 0
    current = m
    while True:
        pivot = None
        for el in current.elements:
            if el != current.zero and current.element_annihilator_is_zero(el):
                pivot = el
                break
        if pivot is None:
            break
        r1 = regular_module(ring)
        splitting = None
        for cand in iter_homs(current, r1):
            if cand.apply(pivot) == (one_idx,):
                splitting = cand
                break
        if splitting is None:
            raise ConsistencyError(
                "free cyclic submodule failed to split over a quasi-Frobenius ring"
            )
        complement, _ = kernel(splitting)
        if complement.cardinality * ring.order != current.cardinality:
            raise ConsistencyError("split does not multiply out to the module size")
        current = complement
        rank += 1
    return rank, current
