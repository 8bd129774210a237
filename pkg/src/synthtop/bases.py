"""Presubbases, prebases, Lacombe bases, the representation they induce,
and the closure machinery connecting representations with bases.

A presubbase is an index space Y together with a continuous family
B: Y -> O(X) whose transpose x |-> {y : x in B_y} is injective.  The
induced representation names a point by its transpose set as a value of
O(Y); the space of such points is `presubbase_space`.  Everything a
presubbase-represented point can do flows through two facts:

* membership in an intersection of family members over a compact index
  set is one forall-query against the point's payload;
* the neighborhood map of the induced space has a lazy inverse, obtained
  by pulling a filter back along the family -- this is what makes the
  induced space a computable Kolmogorov space, and what the completion
  operator exploits.

Multivalued maps (prebase resolvers, union inverses, translators) are
realized as single-valued selectors returning some correct value per
query; tests check the defining equation of whatever comes back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .sierpinski import DEFAULT_FUEL, SValue, and_finite, bot, or_countable, top
from .spaces import (MissingWitnessError, Point, Space, SpaceMismatch,
                     fun_point, meet, meet_left, meet_point, meet_right,
                     opens, pair_point, product, coproduct, proj1, proj2,
                     seq_at, seq_point, sequence)
from .hyper import (CompactSat, OpenSet, OvertClosed, as_compact, as_open,
                    as_overt, compact_image, compact_intersection,
                    compact_union, neighborhood_filter, overt_union,
                    point_to_closed, point_to_compact, product_closed,
                    product_open, section, section_right,
                    attach_product_witnesses, coproduct_overt)
from .kernel import Dovetail


@dataclass(eq=False)
class Presubbase:
    """index: the space Y; family: the map B as a transformer from
    Y-points to opens over ``carrier``; transpose_inverse: partial inverse
    of the transpose (the computable-embedding witness), taking an O(Y)
    value in the range of the transpose plus a fuel budget."""

    index: Space
    carrier: Space
    family: Callable[[Point], OpenSet]
    transpose_inverse: Optional[Callable[[OpenSet, Optional[int]], Point]] = None


@dataclass(eq=False)
class Prebase:
    """A presubbase whose compact-indexed intersections resolve to overt
    unions of family members: the resolver returns, for each compact index
    set, one overt index set with the same union."""

    base: Presubbase
    resolver: Callable[[CompactSat, Optional[int]], OvertClosed]


@dataclass(eq=False)
class LacombeBase:
    """A family whose overt-indexed unions exhaust O(X), with a selected
    inverse."""

    index: Space
    carrier: Space
    union_map: Callable[[OvertClosed], OpenSet]
    union_inverse: Callable[[OpenSet], OvertClosed]

    def family(self, y: Point) -> OpenSet:
        return self.union_map(point_to_closed(y))


BaseLike = Union[Presubbase, Prebase]


def _split(b: BaseLike) -> tuple[Presubbase, Optional[Callable]]:
    if isinstance(b, Prebase):
        return b.base, b.resolver
    return b, None


def _rejoin(base: Presubbase, resolver: Optional[Callable]) -> BaseLike:
    return base if resolver is None else Prebase(base, resolver)


# ---------------------------------------------------------------------------
# The transpose and the induced space


def transpose(b: Presubbase, x: Point) -> OpenSet:
    """The open index set {y : x in B_y}."""
    return OpenSet(b.index, lambda y: b.family(y).chi(x))


def presubbase_space(b: Presubbase) -> Space:
    """The space of presubbase-represented points: payloads are O(Y)
    values in the range of the transpose.  Carries the neighborhood-map
    inverse, so the result is a computable Kolmogorov space."""
    sp = getattr(b, "_space", None)
    if sp is not None:
        return sp
    sp = Space("presubbase", (b,), label=f"Sub^B({b.index!r})")

    def filter_inverse(flt: OpenSet, fuel: Optional[int] = None) -> Point:
        # pull the filter back along the family: {y : B_y in the filter}
        payload = OpenSet(b.index,
                          lambda y: flt.chi(subbase_open(sp, y).as_point()))
        return Point(sp, payload)

    sp.filter_inverse = filter_inverse
    b._space = sp
    return sp


def dsub_point(bspace: Space, transpose_open: OpenSet) -> Point:
    """Wrap an O(Y) value (the transpose set of some carrier point) as a
    point of the induced space."""
    b: Presubbase = bspace.parts[0]
    if transpose_open.space is not b.index:
        from .spaces import same_shape
        if not same_shape(transpose_open.space, b.index):
            raise SpaceMismatch(
                f"payload over {transpose_open.space!r}, index is {b.index!r}")
    return Point(bspace, transpose_open)


def embed_point(b: Presubbase, x: Point) -> Point:
    """The canonical name of a carrier point in the induced space."""
    return dsub_point(presubbase_space(b), transpose(b, x))


def point_transpose(p: Point) -> OpenSet:
    if p.space.tag != "presubbase":
        raise SpaceMismatch(f"not a presubbase-space point: {p.space!r}")
    return p.payload


def subbase_open(bspace: Space, y: Point) -> OpenSet:
    """The family member at index y as an open of the induced space."""
    return OpenSet(bspace, lambda p: point_transpose(p).chi(y))


def tau_k_open(bspace: Space, k: CompactSat) -> OpenSet:
    """A base open of the induced topology: the intersection of the family
    over a compact index set, semidecided by one forall-query."""
    b: Presubbase = bspace.parts[0]
    if not isinstance(k, CompactSat):
        k = as_compact(k)
    return OpenSet(bspace, lambda p: k.forall_(point_transpose(p)))


def decode_point(b: Presubbase, p: Point, fuel: Optional[int] = None) -> Point:
    """Recover the carrier point behind an induced-space point, through the
    presubbase's embedding witness."""
    if b.transpose_inverse is None:
        raise MissingWitnessError("presubbase carries no transpose inverse")
    return b.transpose_inverse(point_transpose(p), fuel)


# ---------------------------------------------------------------------------
# Prebases


def prebase_from_presubbase(b: BaseLike) -> Prebase:
    """Close a presubbase under compact intersections: the new family maps
    a compact index set K to the intersection of the original members over
    K, with the empty K denoting the whole carrier."""
    base, _ = _split(b)
    index = base.index

    def family(kpt: Point) -> OpenSet:
        k = as_compact(kpt, index)
        return OpenSet(base.carrier, lambda x: k.forall_(transpose(base, x)))

    def transpose_inverse(w: OpenSet, fuel: Optional[int] = None) -> Point:
        if base.transpose_inverse is None:
            raise MissingWitnessError("underlying presubbase has no inverse")
        # the original transpose is recovered through singleton saturations
        orig = OpenSet(index,
                       lambda y: w.chi(point_to_compact(y).as_point()))
        return base.transpose_inverse(orig, fuel)

    inter = Presubbase(index=_compacts(index), carrier=base.carrier,
                       family=family, transpose_inverse=transpose_inverse)

    def resolver(kk: CompactSat, fuel: Optional[int] = None) -> OvertClosed:
        z = compact_union(kk)
        return point_to_closed(z.as_point())

    return Prebase(inter, resolver)


def _compacts(sp: Space) -> Space:
    from .spaces import compacts
    return compacts(sp)


def prebase_from_point_closure(b: BaseLike,
                               r: Callable[[CompactSat], Point]) -> Prebase:
    """A presubbase closed under compact intersections pointwise: ``r``
    selects, for each compact index set, a single index whose member is
    the intersection.  The resolver is then the closure of that point."""
    base, _ = _split(b)

    def resolver(k: CompactSat, fuel: Optional[int] = None) -> OvertClosed:
        return point_to_closed(r(k))

    return Prebase(base, resolver)


def lacombe_to_prebase(l: LacombeBase) -> Prebase:
    """Every Lacombe base is a base: intersect the compact image of the
    family inside O(X), then select an overt index set via the union
    inverse.  Needs the carrier's neighborhood-map inverse to recover
    points from their transposes."""
    if l.carrier.filter_inverse is None:
        raise MissingWitnessError(f"{l.carrier!r} is not computably Kolmogorov")
    bfun = fun_point(l.index, opens(l.carrier),
                     lambda y: l.family(y).as_point())

    def transpose_inverse(w: OpenSet, fuel: Optional[int] = None) -> Point:
        # x's neighborhood filter, read off the transpose: x lies in U iff
        # the selected index set of U meets {y : x in B_y}
        flt = OpenSet(opens(l.carrier),
                      lambda upt: l.union_inverse(as_open(upt)).exists_(w))
        return l.carrier.filter_inverse(flt, fuel)

    base = Presubbase(index=l.index, carrier=l.carrier,
                      family=lambda y: l.family(y),
                      transpose_inverse=transpose_inverse)

    def resolver(k: CompactSat, fuel: Optional[int] = None) -> OvertClosed:
        kk = compact_image(bfun, k)
        return l.union_inverse(compact_intersection(kk))

    return Prebase(base, resolver)


def identity_base(x: Space) -> LacombeBase:
    """The identity on O(X) as a Lacombe base, available exactly for
    computable Kolmogorov spaces: unions of overt families of opens are
    computable, and the closure of a single open selects itself."""
    if x.filter_inverse is None:
        raise MissingWitnessError(f"{x!r} carries no neighborhood-map inverse")
    return LacombeBase(
        index=opens(x), carrier=x,
        union_map=lambda a: overt_union(as_overt(a)),
        union_inverse=lambda u: point_to_closed(u.as_point()))


def identity_presubbase(x: Space) -> Presubbase:
    """The identity family U |-> U over index O(X); its transpose is the
    neighborhood map."""
    return Presubbase(index=opens(x), carrier=x,
                      family=lambda upt: as_open(upt),
                      transpose_inverse=x.filter_inverse)


# ---------------------------------------------------------------------------
# Constructions of presubbases and prebases


def _need_overt(sp: Space, who: str) -> OvertClosed:
    if sp.overt is None:
        raise MissingWitnessError(f"{who} needs an overt index, {sp!r} has no witness")
    return sp.overt


def product_prebase(bx: BaseLike, by: BaseLike) -> BaseLike:
    """Pairwise products of members, indexed by the product of the index
    spaces (both overt).  Compact intersections resolve componentwise."""
    basex, resx = _split(bx)
    basey, resy = _split(by)
    _need_overt(basex.index, "product_prebase")
    _need_overt(basey.index, "product_prebase")
    index = attach_product_witnesses(product(basex.index, basey.index))
    carrier = product(basex.carrier, basey.carrier)

    def family(rs: Point) -> OpenSet:
        r, s = proj1(rs), proj2(rs)
        return product_open(basex.family(r), basey.family(s))

    def transpose_inverse(w: OpenSet, fuel: Optional[int] = None) -> Point:
        if basex.transpose_inverse is None or basey.transpose_inverse is None:
            raise MissingWitnessError("factor presubbase has no inverse")
        wr = OpenSet(basex.index,
                     lambda r: basey.index.overt.exists_(section(r, w)))
        ws = OpenSet(basey.index,
                     lambda s: basex.index.overt.exists_(section_right(s, w)))
        return pair_point(basex.transpose_inverse(wr, fuel),
                          basey.transpose_inverse(ws, fuel))

    base = Presubbase(index, carrier, family, transpose_inverse)
    if resx is None or resy is None:
        return base

    pr1 = fun_point(index, basex.index, proj1)
    pr2 = fun_point(index, basey.index, proj2)

    def resolver(k: CompactSat, fuel: Optional[int] = None) -> OvertClosed:
        a1 = resx(compact_image(pr1, k), fuel)
        a2 = resy(compact_image(pr2, k), fuel)
        return product_closed(a1, a2)

    return Prebase(base, resolver)


def subspace_prebase(bx: BaseLike, zspace: Space) -> BaseLike:
    """Members restricted to a subspace; no index overtness needed and the
    resolver carries over unchanged."""
    basex, resx = _split(bx)
    if zspace.tag != "subspace":
        raise SpaceMismatch(f"subspace_prebase needs a subspace, got {zspace!r}")

    def as_base(z: Point) -> Point:
        return Point(basex.carrier, z.payload)

    def family(r: Point) -> OpenSet:
        u = basex.family(r)
        return OpenSet(zspace, lambda z: u.chi(as_base(z)))

    def transpose_inverse(w: OpenSet, fuel: Optional[int] = None) -> Point:
        if basex.transpose_inverse is None:
            raise MissingWitnessError("factor presubbase has no inverse")
        xp = basex.transpose_inverse(w, fuel)
        return Point(zspace, xp.payload)

    base = Presubbase(basex.index, zspace, family, transpose_inverse)
    return _rejoin(base, resx)


def coproduct_prebase(bx: BaseLike, by: BaseLike,
                      search_fuel: int = DEFAULT_FUEL) -> BaseLike:
    """Tagged union of two families over the coproduct of their (overt)
    indices."""
    basex, resx = _split(bx)
    basey, resy = _split(by)
    wx = _need_overt(basex.index, "coproduct_prebase")
    wy = _need_overt(basey.index, "coproduct_prebase")
    index = coproduct(basex.index, basey.index)
    index.overt = coproduct_overt(index)
    carrier = coproduct(basex.carrier, basey.carrier)
    from .spaces import inj0, inj1

    def family(t: Point) -> OpenSet:
        tag, inner = t.payload

        def chi(z: Point) -> SValue:
            ztag, zin = z.payload
            if ztag != tag:
                return bot()
            fam = basex.family if tag == 0 else basey.family
            return fam(inner).chi(zin)

        return OpenSet(carrier, chi)

    def transpose_inverse(w: OpenSet, fuel: Optional[int] = None) -> Point:
        if basex.transpose_inverse is None or basey.transpose_inverse is None:
            raise MissingWitnessError("factor presubbase has no inverse")
        w0 = OpenSet(basex.index, lambda r: w.chi(inj0(r, basey.index)))
        w1 = OpenSet(basey.index, lambda s: w.chi(inj1(basex.index, s)))
        # exactly one section is nonempty on the image; race the two
        races = [wx.exists_(w0), wy.exists_(w1)]
        engine = Dovetail(lambda i: races[i].fresh(), 2)
        budget = fuel if fuel is not None else search_fuel
        if engine.run(budget) is None:
            raise ValueError("transpose inverse search exhausted its fuel")
        if engine.winner == 0:
            return inj0(basex.transpose_inverse(w0, fuel), basey.carrier)
        return inj1(basex.carrier, basey.transpose_inverse(w1, fuel))

    base = Presubbase(index, carrier, family, transpose_inverse)
    if resx is None or resy is None:
        return base

    def resolver(k: CompactSat, fuel: Optional[int] = None) -> OvertClosed:
        k0 = CompactSat(basex.index, lambda u: k.forall_(
            OpenSet(index, lambda t: u.chi(t.payload[1]) if t.payload[0] == 0 else top())))
        k1 = CompactSat(basey.index, lambda u: k.forall_(
            OpenSet(index, lambda t: u.chi(t.payload[1]) if t.payload[0] == 1 else top())))
        a0 = resx(k0, fuel)
        a1 = resy(k1, fuel)

        def ex(w: OpenSet) -> SValue:
            w0 = OpenSet(basex.index, lambda r: w.chi(inj0(r, basey.index)))
            w1 = OpenSet(basey.index, lambda s: w.chi(inj1(basex.index, s)))
            return or_countable([a0.exists_(w0), a1.exists_(w1)])

        return OvertClosed(index, ex)

    return Prebase(base, resolver)


def meet_prebase(bx: BaseLike, by: BaseLike) -> BaseLike:
    """Pairwise intersections of members of two presubbases of the same
    carrier set, as a presubbase of the meet space."""
    basex, resx = _split(bx)
    basey, resy = _split(by)
    _need_overt(basex.index, "meet_prebase")
    _need_overt(basey.index, "meet_prebase")
    index = attach_product_witnesses(product(basex.index, basey.index))
    carrier = meet(basex.carrier, basey.carrier)

    def family(rs: Point) -> OpenSet:
        r, s = proj1(rs), proj2(rs)
        ux, uy = basex.family(r), basey.family(s)
        return OpenSet(carrier, lambda z: and_finite(
            [ux.chi(meet_left(z)), uy.chi(meet_right(z))]))

    def transpose_inverse(w: OpenSet, fuel: Optional[int] = None) -> Point:
        if basex.transpose_inverse is None or basey.transpose_inverse is None:
            raise MissingWitnessError("factor presubbase has no inverse")
        wr = OpenSet(basex.index,
                     lambda r: basey.index.overt.exists_(section(r, w)))
        ws = OpenSet(basey.index,
                     lambda s: basex.index.overt.exists_(section_right(s, w)))
        return meet_point(basex.transpose_inverse(wr, fuel),
                          basey.transpose_inverse(ws, fuel))

    base = Presubbase(index, carrier, family, transpose_inverse)
    if resx is None or resy is None:
        return base

    pr1 = fun_point(index, basex.index, proj1)
    pr2 = fun_point(index, basey.index, proj2)

    def resolver(k: CompactSat, fuel: Optional[int] = None) -> OvertClosed:
        a1 = resx(compact_image(pr1, k), fuel)
        a2 = resy(compact_image(pr2, k), fuel)
        return product_closed(a1, a2)

    return Prebase(base, resolver)


# --- finite tuples of an overt space, for the sequence construction ------


def star(s: Space) -> Space:
    """Finite tuples over s, the index space of the sequence construction;
    payloads are tuples of points."""
    sp = Space("star", (s,), label=f"{s!r}*")
    if s.overt is not None:
        sw = s.overt

        def exists_len(w: OpenSet, n: int, prefix: tuple) -> SValue:
            if n == 0:
                return w.chi(star_point(sp, prefix))
            return sw.exists_(OpenSet(
                s, lambda sp_: exists_len(w, n - 1, prefix + (sp_,))))

        sp.overt = OvertClosed(
            sp, lambda w: or_countable(lambda n: exists_len(w, n, ())))
    return sp


def star_point(star_space: Space, points: tuple) -> Point:
    return Point(star_space, tuple(points))


def sequence_prebase(by: BaseLike, length_cap: int = 64,
                     search_fuel: int = DEFAULT_FUEL) -> BaseLike:
    """Cylinder opens over the sequence space: a tuple of indices
    constrains that many leading components and leaves the tail free."""
    basey, resy = _split(by)
    sw = _need_overt(basey.index, "sequence_prebase")
    index = star(basey.index)
    carrier = sequence(basey.carrier)

    def family(t: Point) -> OpenSet:
        idxs = t.payload
        return OpenSet(carrier, lambda q: and_finite(
            [basey.family(idxs[i]).chi(seq_at(q, i)) for i in range(len(idxs))]))

    def component_open(w: OpenSet, n: int) -> OpenSet:
        """{s : some length-(n+1) tuple in w ends with s}: the overt
        projection of the length-(n+1) slice onto its last component."""

        def ex_prefix(s_last: Point, k: int, prefix: tuple) -> SValue:
            if k == 0:
                return w.chi(star_point(index, prefix + (s_last,)))
            return sw.exists_(OpenSet(
                basey.index, lambda sp_: ex_prefix(s_last, k - 1, prefix + (sp_,))))

        return OpenSet(basey.index, lambda s_last: ex_prefix(s_last, n, ()))

    def transpose_inverse(w: OpenSet, fuel: Optional[int] = None) -> Point:
        if basey.transpose_inverse is None:
            raise MissingWitnessError("factor presubbase has no inverse")
        return seq_point(basey.carrier, lambda n: basey.transpose_inverse(
            component_open(w, n), fuel))

    base = Presubbase(index, carrier, family, transpose_inverse)
    if resy is None:
        return base

    def resolver(k: CompactSat, fuel: Optional[int] = None) -> OvertClosed:
        budget = fuel if fuel is not None else search_fuel
        # certify an upper bound on the tuple lengths occurring in k
        m = None
        for cap in range(length_cap + 1):
            short = OpenSet(index, lambda t, _c=cap: top() if len(t.payload) <= _c else bot())
            sv = k.forall_(short)
            lim = budget if sv.bound is None else min(sv.bound, budget)
            if sv.status(lim) is not None:
                m = cap
                break
        if m is None:
            raise ValueError("no length bound certified within the cap")
        ais = []
        for i in range(m):
            ki = CompactSat(basey.index, lambda u, _i=i: k.forall_(OpenSet(
                index,
                lambda t: u.chi(t.payload[_i]) if len(t.payload) > _i else top())))
            ais.append(resy(ki, fuel))

        def ex(w: OpenSet) -> SValue:
            def nested(j: int, prefix: tuple) -> SValue:
                if j == m:
                    return w.chi(star_point(index, prefix))
                return ais[j].exists_(OpenSet(
                    basey.index, lambda s: nested(j + 1, prefix + (s,))))

            return nested(0, ())

        return OvertClosed(index, ex)

    return Prebase(base, resolver)


# ---------------------------------------------------------------------------
# The completion operator


@dataclass(eq=False)
class Completion:
    """The induced space of the identity presubbase, with the two
    translators making the operation a closure: points map forward through
    their neighborhood filters, opens pull back by evaluation."""

    space: Space
    forward: Callable[[Point], Point]
    open_back: Callable[[OpenSet], OpenSet]


def kolmogorov_completion(x: Space) -> Completion:
    """Re-represent points by their neighborhood filters.  For a space
    whose final topology is T0 this changes nothing topologically but
    equips the space with the neighborhood-map inverse; non-T0 inputs are
    only detectable at oracle scale."""
    b = identity_presubbase(x)
    sp = presubbase_space(b)

    def forward(p: Point) -> Point:
        return dsub_point(sp, neighborhood_filter(p))

    def open_back(u: OpenSet) -> OpenSet:
        upt = u.as_point()
        return OpenSet(sp, lambda q: point_transpose(q).chi(upt))

    return Completion(sp, forward, open_back)


def base_completion(b: Presubbase) -> LacombeBase:
    """Close a presubbase into a Lacombe base: the identity base of the
    space the presubbase induces."""
    return identity_base(presubbase_space(b))


# ---------------------------------------------------------------------------
# The Galois connection between representations and presubbases


@dataclass(eq=False)
class GaloisWitness:
    """A realizer for one side of the adjunction between representations
    and presubbases of the same carrier.

    direction "rep_to_base": ``translator`` maps a carrier point to its
    transpose set as an O(Y) value (the representation refines the induced
    one).  direction "base_to_rep": ``translator`` maps an index point to
    the family member as an open of the carrier (the family factors
    through the open-set space)."""

    direction: str
    x_space: Space
    y_space: Space
    translator: Callable


def galois_forward(w: GaloisWitness) -> GaloisWitness:
    """Transpose a point-side witness into a family-side witness."""
    if w.direction != "rep_to_base":
        raise ValueError(f"expected a rep_to_base witness, got {w.direction}")
    t = w.translator

    def u(y: Point) -> OpenSet:
        return OpenSet(w.x_space, lambda x: t(x).chi(y))

    return GaloisWitness("base_to_rep", w.x_space, w.y_space, u)


def galois_backward(w: GaloisWitness) -> GaloisWitness:
    """Transpose a family-side witness into a point-side witness."""
    if w.direction != "base_to_rep":
        raise ValueError(f"expected a base_to_rep witness, got {w.direction}")
    u = w.translator

    def t(x: Point) -> OpenSet:
        return OpenSet(w.y_space, lambda y: u(y).chi(x))

    return GaloisWitness("rep_to_base", w.x_space, w.y_space, t)
