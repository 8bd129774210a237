"""Brute-force ground truth on finite topological spaces.

Subsets of the carrier {0..n-1} are bitmasks.  A finite topology is the
same thing as the family of up-sets of its specialization preorder, which
is what makes every construction here exhaustively checkable: saturation
is up-closure, compact saturated sets are up-sets, continuity is
monotonicity, and two independent enumerations (closed set-families vs.
preorders) must produce the same counts.

The second half of the module bridges finite data into the kernel:
name-backed points, leaf semideciders for opens / overt / compact values,
denotation decoders, and the positive-information decoder for presubbase
points.  Negative queries are budgeted by each semidecision's certified
horizon where one exists, falling back to `NEGATIVE_FUEL`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .kernel import delayed_name, literal_name
from .sierpinski import NEGATIVE_FUEL, SValue, and_finite, bot, or_countable, top
from .spaces import Point, Space, on_value
from .hyper import CompactSat, OpenSet, OvertClosed, as_open


class SchemaError(ValueError):
    """A JSON instance does not match the documented schema."""


MAX_EXHAUSTIVE = 4


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits(mask: int) -> Iterable[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# Finite spaces


@dataclass(frozen=True)
class FiniteSpace:
    """Carrier {0..n-1} with an explicit family of open sets (bitmasks,
    sorted, containing 0 and the full carrier, closed under union and
    intersection)."""

    n: int
    opens: tuple[int, ...]

    def __post_init__(self):
        assert self.opens == tuple(sorted(set(self.opens)))

    def to_json(self) -> dict:
        return {"n": self.n,
                "opens": [sorted(bits(u)) for u in self.opens]}


def make_space(n: int, opens: Iterable[int]) -> FiniteSpace:
    return FiniteSpace(n, tuple(sorted(set(opens))))


def generate_topology(sets: Sequence[int], n: int) -> FiniteSpace:
    """Smallest topology containing the given subsets: close under pairwise
    intersection and union, always including the empty set and carrier."""
    fam = {0, full_mask(n)}
    fam.update(sets)
    while True:
        new = set()
        items = list(fam)
        for i, a in enumerate(items):
            for b in items[i + 1:]:
                u, v = a | b, a & b
                if u not in fam:
                    new.add(u)
                if v not in fam:
                    new.add(v)
        if not new:
            return make_space(n, fam)
        fam |= new


def is_topology(n: int, fam: frozenset) -> bool:
    if 0 not in fam or full_mask(n) not in fam:
        return False
    items = list(fam)
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if (a | b) not in fam or (a & b) not in fam:
                return False
    return True


def minimal_open(space: FiniteSpace, x: int) -> int:
    m = full_mask(space.n)
    for u in space.opens:
        if u >> x & 1:
            m &= u
    return m


def specialization(space: FiniteSpace) -> tuple[int, ...]:
    """Row i is the mask {j : i <= j}, i.e. the minimal open of i:
    i <= j iff every open containing i contains j."""
    return tuple(minimal_open(space, i) for i in range(space.n))


def is_T0(space: FiniteSpace) -> bool:
    rows = specialization(space)
    return len(set(rows)) == space.n


def saturate(space: FiniteSpace, a: int) -> int:
    """Intersection of all opens containing a = up-closure under the
    specialization order."""
    rows = specialization(space)
    out = 0
    for x in bits(a):
        out |= rows[x]
    return out


def closure(space: FiniteSpace, a: int) -> int:
    rows = specialization(space)
    return mask_of(x for x in range(space.n) if rows[x] & a)


def interior(space: FiniteSpace, a: int) -> int:
    out = 0
    for u in space.opens:
        if u & ~a == 0:
            out |= u
    return out


def up_sets(space: FiniteSpace) -> tuple[int, ...]:
    """All up-closed subsets = all saturated sets = all compact saturated
    sets of a finite space."""
    n = space.n
    return tuple(s for s in range(1 << n) if saturate(space, s) == s)


def continuous_maps(dom: FiniteSpace, cod: FiniteSpace) -> list[tuple[int, ...]]:
    """All continuous (= specialization-monotone) maps dom -> cod."""
    if dom.n == 0:
        return [()]
    rd = specialization(dom)
    rc = specialization(cod)
    if cod.n == 0:
        return []
    out = []
    fs = [0] * dom.n

    def rec(i: int):
        if i == dom.n:
            out.append(tuple(fs))
            return
        for v in range(cod.n):
            fs[i] = v
            ok = True
            for j in range(i + 1):
                if rd[j] >> i & 1 and not rc[fs[j]] >> v & 1:
                    ok = False
                    break
                if rd[i] >> j & 1 and not rc[v] >> fs[j] & 1:
                    ok = False
                    break
            if ok:
                rec(i + 1)

    rec(0)
    return out


def image_mask(f: Sequence[int], a: int) -> int:
    return mask_of(f[x] for x in bits(a))


def preimage_mask(f: Sequence[int], b: int, n_dom: int) -> int:
    return mask_of(x for x in range(n_dom) if b >> f[x] & 1)


# ---------------------------------------------------------------------------
# Products and coproducts of finite spaces


def product_space(f: FiniteSpace, g: FiniteSpace) -> FiniteSpace:
    """Product topology; element (i, j) is coded as i * g.n + j."""
    rects = []
    for u in f.opens:
        for v in g.opens:
            m = 0
            for i in bits(u):
                m |= v << (i * g.n)
            rects.append(m)
    return generate_topology(rects, f.n * g.n)


def coproduct_space(f: FiniteSpace, g: FiniteSpace) -> FiniteSpace:
    """Disjoint union; g's elements are shifted by f.n."""
    return make_space(f.n + g.n,
                      (u | (v << f.n) for u in f.opens for v in g.opens))


# ---------------------------------------------------------------------------
# Enumeration, two independent ways


def _families(n: int) -> Iterable[frozenset]:
    middle = [s for s in range(1, full_mask(n))]
    base = {0, full_mask(n)} if n > 0 else {0}
    for pick in range(1 << len(middle)):
        fam = set(base)
        for i, s in enumerate(middle):
            if pick >> i & 1:
                fam.add(s)
        yield frozenset(fam)


def enumerate_spaces(n: int, t0_only: bool = False) -> list[FiniteSpace]:
    """All (labeled) topologies on {0..n-1}, each exactly once, via closed
    set-family enumeration."""
    if n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration capped at n <= {MAX_EXHAUSTIVE}")
    if n == 0:
        return [make_space(0, [0])]
    out = []
    for fam in _families(n):
        if is_topology(n, fam):
            sp = make_space(n, fam)
            if t0_only and not is_T0(sp):
                continue
            out.append(sp)
    out.sort(key=lambda s: s.opens)
    return out


def enumerate_preorders(n: int) -> list[tuple[int, ...]]:
    """All reflexive transitive relations on {0..n-1}, rows as masks."""
    if n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration capped at n <= {MAX_EXHAUSTIVE}")
    if n == 0:
        return [()]
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for pick in range(1 << len(offdiag)):
        rows = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(offdiag):
            if pick >> b & 1:
                rows[i] |= 1 << j
        ok = True
        for i in range(n):
            reach = rows[i]
            for j in bits(rows[i]):
                if rows[j] & ~reach:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(rows))
    return out


def preorder_is_partial_order(rows: Sequence[int]) -> bool:
    for i in range(len(rows)):
        for j in bits(rows[i]):
            if j != i and rows[j] >> i & 1:
                return False
    return True


def topology_from_preorder(rows: Sequence[int]) -> FiniteSpace:
    n = len(rows)
    fam = [s for s in range(1 << n)
           if all(rows[x] & ~s == 0 for x in bits(s))]
    return make_space(n, fam)


def enumeration_crosscheck(n: int) -> dict:
    """Counts from the closure-family enumerator vs. the preorder/poset
    enumerator; finite topologies biject with preorders (T0 with posets)."""
    spaces = enumerate_spaces(n)
    t0 = [s for s in spaces if is_T0(s)]
    pre = enumerate_preorders(n)
    posets = [r for r in pre if preorder_is_partial_order(r)]
    # the bijection itself, not just the counts
    via_orders = sorted(topology_from_preorder(r).opens for r in pre)
    via_closure = sorted(s.opens for s in spaces)
    return {
        "n": n,
        "topologies_closure": len(spaces),
        "topologies_preorders": len(pre),
        "t0_closure": len(t0),
        "t0_posets": len(posets),
        "bijection_ok": via_orders == via_closure,
    }


# ---------------------------------------------------------------------------
# Finite subbases and the associated topologies


@dataclass(frozen=True)
class FiniteSubbase:
    """A family of subsets of the carrier {0..n-1}, indexed by a finite
    preordered index set: ``sets[y]`` is the member at index y and
    ``order[y]`` the mask {y' : y <= y'}."""

    n: int
    sets: tuple[int, ...]
    order: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.sets)

    def index_space(self) -> FiniteSpace:
        return topology_from_preorder(self.order)

    def transpose(self, x: int) -> int:
        return mask_of(y for y, b in enumerate(self.sets) if b >> x & 1)

    def well_defined(self) -> bool:
        """Transposes must be up-sets of the index order, i.e. the family
        must be monotone along the order."""
        for y in range(self.m):
            for y2 in bits(self.order[y]):
                if self.sets[y] & ~self.sets[y2]:
                    return False
        return True

    def injective(self) -> bool:
        seen = set()
        for x in range(self.n):
            t = self.transpose(x)
            if t in seen:
                return False
            seen.add(t)
        return True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sets": [sorted(bits(b)) for b in self.sets],
            "index_order": [[y, y2] for y in range(self.m)
                            for y2 in bits(self.order[y]) if y2 != y],
        }


def make_subbase(n: int, sets: Sequence[int],
                 order_pairs: Iterable[tuple[int, int]] = ()) -> FiniteSubbase:
    """Build a subbase from <= pairs; the order is closed reflexively and
    transitively."""
    m = len(sets)
    rows = [1 << y for y in range(m)]
    for a, b in order_pairs:
        if not (0 <= a < m and 0 <= b < m):
            raise SchemaError(f"index_order pair ({a},{b}) out of range")
        rows[a] |= 1 << b
    changed = True
    while changed:
        changed = False
        for i in range(m):
            reach = rows[i]
            for j in bits(rows[i]):
                if rows[j] & ~reach:
                    rows[i] |= rows[j]
                    changed = True
    return FiniteSubbase(n, tuple(int(s) for s in sets), tuple(rows))


def tau_B(sub: FiniteSubbase) -> FiniteSpace:
    """Topology generated by the raw family."""
    return generate_topology(sub.sets, sub.n)


def tau_K(sub: FiniteSubbase) -> FiniteSpace:
    """Topology generated by the carrier plus intersections of the family
    over the compact saturated (= up-closed) index sets."""
    isp = sub.index_space()
    gens = [full_mask(sub.n)]
    for k in up_sets(isp):
        inter = full_mask(sub.n)
        for y in bits(k):
            inter &= sub.sets[y]
        gens.append(inter)
    return generate_topology(gens, sub.n)


def tau_inf(sub: FiniteSubbase) -> FiniteSpace:
    """Topology generated by intersections along convergent index
    sequences.  On a finite index space a sequence converging to y can
    visit an arbitrary finite junk set before settling, so the generated
    sets are exactly the intersections over S + {y} for finite S."""
    gens = [full_mask(sub.n)]
    for y in range(sub.m):
        for s in range(1 << sub.m):
            inter = sub.sets[y]
            for z in bits(s):
                inter &= sub.sets[z]
            gens.append(inter)
    return generate_topology(gens, sub.n)


def final_topology_standin(sub: FiniteSubbase) -> FiniteSpace:
    """Desk-scale stand-in for the final topology of the subbase
    representation: finite spaces are sequential, so it is the Alexandrov
    topology of tau_K's specialization order."""
    t = tau_K(sub)
    rows = specialization(t)
    return topology_from_preorder(rows)


def figure1_check(sub: FiniteSubbase) -> dict:
    """The inclusion chain of the four topologies a presubbase generates,
    plus the T0-iff-injective equivalence."""
    tb, ti, tk = tau_B(sub), tau_inf(sub), tau_K(sub)
    fin = final_topology_standin(sub)
    sb, si, sk, sf = (set(t.opens) for t in (tb, ti, tk, fin))
    report = {
        "well_defined": sub.well_defined(),
        "injective": sub.injective(),
        "tau_B_size": len(sb),
        "tau_inf_size": len(si),
        "tau_K_size": len(sk),
        "chain_ok": sb <= si <= sk,
        # finite spaces are sequential, so the right-hand three topologies
        # of the chain collapse on every finite instance
        "inf_equals_K": si == sk,
        "final_equals_tau_K": sk == sf,
        "t0_iff_injective": is_T0(tk) == sub.injective(),
        "discrete_order": all(sub.order[y] == 1 << y for y in range(sub.m)),
    }
    report["all_equal"] = sb == si == sk == sf
    return report


# ---------------------------------------------------------------------------
# Scott convergence on finite instances


def scott_converges(space: FiniteSpace, terms: Sequence[int], u: int,
                    cycle_start: Optional[int] = None) -> bool:
    """Does the open sequence converge to U in the Scott sense?  The
    criterion is containment of U in the union over k of the interiors of
    the tail intersections.

    ``terms`` lists opens up to stabilization; from ``cycle_start`` on the
    listed tail repeats forever (default: the last term is constant).
    """
    terms = list(terms)
    if not terms:
        raise ValueError("empty sequence")
    if cycle_start is None:
        cycle_start = len(terms) - 1
    if not 0 <= cycle_start < len(terms):
        raise ValueError("cycle_start out of range; sequence must stabilize")
    for t in list(terms) + [u]:
        if t & ~full_mask(space.n):
            raise ValueError("term not a subset of the carrier")
    cycle = terms[cycle_start:]
    cycle_inter = full_mask(space.n)
    for t in cycle:
        cycle_inter &= t
    union = 0
    for k in range(cycle_start + 1):
        tail = cycle_inter
        for t in terms[k:cycle_start]:
            tail &= t
        union |= interior(space, tail)
    return u & ~union == 0


# ---------------------------------------------------------------------------
# JSON interface


def space_from_json(doc: dict) -> FiniteSpace:
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object")
    if "n" not in doc or "opens" not in doc:
        raise SchemaError("missing field: need 'n' and 'opens'")
    n = doc["n"]
    if not isinstance(n, int) or n < 0:
        raise SchemaError("field 'n': expected a nonnegative integer")
    opens = doc["opens"]
    if not isinstance(opens, list):
        raise SchemaError("field 'opens': expected a list of element lists")
    masks = set()
    for i, u in enumerate(opens):
        if not isinstance(u, list) or not all(isinstance(e, int) for e in u):
            raise SchemaError(f"field 'opens[{i}]': expected a list of integers")
        if any(e < 0 or e >= n for e in u):
            raise SchemaError(f"field 'opens[{i}]': element out of range 0..{n - 1}")
        masks.add(mask_of(u))
    if 0 not in masks or full_mask(n) not in masks:
        raise SchemaError("field 'opens': must include [] and the full carrier")
    if not is_topology(n, frozenset(masks)):
        raise SchemaError("field 'opens': not closed under union/intersection")
    return make_space(n, masks)


def subbase_from_json(doc: dict) -> FiniteSubbase:
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object")
    for field in ("n", "sets"):
        if field not in doc:
            raise SchemaError(f"missing field: '{field}'")
    n = doc["n"]
    if not isinstance(n, int) or n < 0:
        raise SchemaError("field 'n': expected a nonnegative integer")
    sets = doc["sets"]
    if not isinstance(sets, list):
        raise SchemaError("field 'sets': expected a list of element lists")
    masks = []
    for i, s in enumerate(sets):
        if not isinstance(s, list) or not all(isinstance(e, int) for e in s):
            raise SchemaError(f"field 'sets[{i}]': expected a list of integers")
        if any(e < 0 or e >= n for e in s):
            raise SchemaError(f"field 'sets[{i}]': element out of range 0..{n - 1}")
        masks.append(mask_of(s))
    pairs = []
    for i, p in enumerate(doc.get("index_order", [])):
        if (not isinstance(p, list) or len(p) != 2
                or not all(isinstance(e, int) for e in p)):
            raise SchemaError(f"field 'index_order[{i}]': expected a [y, y'] pair")
        pairs.append((p[0], p[1]))
    return make_subbase(n, masks, pairs)


def load_json(path: str) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")


# ---------------------------------------------------------------------------
# Bridge: finite data as kernel spaces, points and hyperspace values


_SPACE_CACHE: dict[FiniteSpace, Space] = {}


def finite_repr(f: FiniteSpace) -> Space:
    """The finite space as a represented space: points are name-backed and
    denote their first emitted value.  Always overt (disjunction over
    elements); carries the neighborhood-map inverse (candidate narrowing
    plus least element) exactly when the topology is T0 -- otherwise the
    filter does not determine the point and the space is genuinely not a
    computable Kolmogorov space."""
    sp = _SPACE_CACHE.get(f)
    if sp is not None:
        return sp
    sp = Space("finite", (f,), label=f"Fin({f.n})")
    _SPACE_CACHE[f] = sp
    sp.overt = OvertClosed(sp, lambda u: or_countable(
        [u.chi(finite_point(sp, e)) for e in range(f.n)]))
    if is_T0(f):
        sp.filter_inverse = lambda flt, fuel=None: _finite_filter_inverse(sp, f, flt, fuel)
    return sp


_POINT_CACHE: dict[tuple[int, int], Point] = {}


def finite_point(sp: Space, elem: int, delay: int = 0) -> Point:
    f: FiniteSpace = sp.parts[0]
    if not 0 <= elem < f.n:
        raise ValueError(f"element {elem} outside carrier of size {f.n}")
    if delay == 0:
        key = (id(sp), elem)
        p = _POINT_CACHE.get(key)
        if p is None:
            p = Point(sp, literal_name([elem], tail=elem))
            _POINT_CACHE[key] = p
        return p
    return Point(sp, delayed_name([(delay, elem)], tail=elem))


def leaf_open(sp: Space, mask: int) -> OpenSet:
    """Membership semidecider of a subset given as a bitmask (only opens of
    the topology denote opens, but the semidecider is definable for any
    mask; validity is the caller's concern)."""
    return OpenSet(sp, lambda p: on_value(
        p, lambda v: top() if mask >> v & 1 else bot(), inner_bound=0))


def leaf_overt(sp: Space, mask: int) -> OvertClosed:
    """The overt value generated by the elements of ``mask``; denotes the
    closure of that set."""
    pts = [finite_point(sp, e) for e in bits(mask)]
    return OvertClosed(sp, lambda u: or_countable([u.chi(p) for p in pts]))


def leaf_compact(sp: Space, mask: int) -> CompactSat:
    """The compact value generated by the elements of ``mask``; denotes the
    saturation of that set."""
    pts = [finite_point(sp, e) for e in bits(mask)]
    return CompactSat(sp, lambda u: and_finite([u.chi(p) for p in pts]))


def budgeted(sv: SValue, fuel: Optional[int] = None) -> bool:
    """Accept-or-certified-never, preferring the value's own horizon.
    Without a horizon, ``fuel`` (default NEGATIVE_FUEL) bounds the
    observation -- honest only against processes with known bounds."""
    budget = sv.bound
    if budget is None:
        budget = fuel if fuel is not None else NEGATIVE_FUEL
    return sv.status(budget) is not None


def open_members(sp: Space, u: OpenSet, fuel: Optional[int] = None) -> int:
    """Decode the denoted subset of a finite-space open."""
    f: FiniteSpace = sp.parts[0]
    return mask_of(e for e in range(f.n)
                   if budgeted(u.chi(finite_point(sp, e)), fuel))


def overt_members(sp: Space, a: OvertClosed, fuel: Optional[int] = None) -> int:
    """Denotation of an overt value over a finite space: x lies in the
    closed set iff the set meets the minimal open of x."""
    f: FiniteSpace = sp.parts[0]
    return mask_of(e for e in range(f.n)
                   if budgeted(a.exists_(leaf_open(sp, minimal_open(f, e))), fuel))


def compact_members(sp: Space, k: CompactSat, fuel: Optional[int] = None) -> int:
    """Denotation of a compact value over a finite space: the intersection
    of the opens it certifiably sits inside."""
    f: FiniteSpace = sp.parts[0]
    out = full_mask(f.n)
    for u in f.opens:
        if budgeted(k.forall_(leaf_open(sp, u)), fuel):
            out &= u
    return out


def check_meet_views(p: Point, fuel: Optional[int] = None) -> int:
    """Validate a meet point over finite spaces: both views must denote
    the same carrier element.  Returns it, or raises on a mismatch (the
    kernel itself cannot detect one)."""
    from .spaces import meet_left, meet_right, read_first
    budget = fuel if fuel is not None else NEGATIVE_FUEL
    left = read_first(meet_left(p), budget)
    right = read_first(meet_right(p), budget)
    if left is None or right is None:
        raise ValueError("meet views did not produce elements within fuel")
    if left != right:
        raise ValueError(f"meet views denote different elements: {left} != {right}")
    return left


def _finite_filter_inverse(sp: Space, f: FiniteSpace, flt: OpenSet,
                           fuel: Optional[int]) -> Point:
    """Candidate narrowing from positive information only: keep the points
    lying in every open the filter has accepted, then take the least
    candidate in the specialization order (unique for a T0 space when the
    input is a genuine neighborhood filter)."""
    accepted = [u for u in f.opens
                if budgeted(flt.chi(leaf_open(sp, u).as_point()), fuel)]
    cand = full_mask(f.n)
    for u in accepted:
        cand &= u
    rows = specialization(f)
    for x in bits(cand):
        if cand & ~rows[x] == 0:
            return finite_point(sp, x)
    raise ValueError("filter is not a neighborhood filter of this space")


def family_overt(sp: Space, members: Sequence[OpenSet]) -> OvertClosed:
    """An overt family of opens (a value over O(sp)) generated by the given
    members; denotes the closure of the member set in the open-set space."""
    pts = [u.as_point() for u in members]
    target = opens_space(sp)
    return OvertClosed(target, lambda w: or_countable([w.chi(p) for p in pts]))


def family_compact(sp: Space, members: Sequence[OpenSet]) -> CompactSat:
    """A compact family of opens (a value over O(sp)); denotes the
    saturation of the member set in the open-set space."""
    pts = [u.as_point() for u in members]
    target = opens_space(sp)
    return CompactSat(target, lambda w: and_finite([w.chi(p) for p in pts]))


def compact_family_of_compacts(sp: Space, members: Sequence["CompactSat"]) -> CompactSat:
    """A compact family of compact sets (a value over K-(sp))."""
    from .spaces import compacts
    pts = [k.as_point() for k in members]
    return CompactSat(compacts(sp), lambda w: and_finite([w.chi(p) for p in pts]))


def opens_space(sp: Space) -> Space:
    from .spaces import opens
    return opens(sp)


def monotone_families(order: Sequence[int], n_carrier: int) -> Iterable[tuple[int, ...]]:
    """All families of subsets of the carrier indexed by the preordered set
    whose transpose is well-defined, i.e. monotone along the order."""
    m = len(order)
    if m == 0:
        yield ()
        return
    choices = range(1 << n_carrier)
    fam = [0] * m

    def rec(y: int):
        if y == m:
            yield tuple(fam)
            return
        for s in choices:
            ok = True
            for y2 in range(y):
                if order[y2] >> y & 1 and fam[y2] & ~s:
                    ok = False
                    break
                if order[y] >> y2 & 1 and s & ~fam[y2]:
                    ok = False
                    break
            if ok:
                fam[y] = s
                yield from rec(y + 1)

    yield from rec(0)


def finite_presubbase(sub: FiniteSubbase,
                      carrier_topology: Optional[FiniteSpace] = None):
    """The subbase as a kernel presubbase: index and carrier become
    name-backed finite spaces, the family reads the index element and then
    semidecides membership, and the transpose inverse narrows candidates
    from positive information, returning the least one."""
    from .bases import Presubbase
    isp = finite_repr(sub.index_space())
    ctop = carrier_topology if carrier_topology is not None else tau_K(sub)
    csp = finite_repr(ctop)

    def family(ypt: Point) -> OpenSet:
        def chi(x: Point) -> SValue:
            hint = x.payload.cost(0) if x.payload.cost else None
            return on_value(
                ypt,
                lambda yv: leaf_open(csp, sub.sets[yv]).chi(x),
                inner_bound=hint)

        return OpenSet(csp, chi)

    def transpose_inverse(w: OpenSet, fuel: Optional[int] = None) -> Point:
        accepted = mask_of(
            y for y in range(sub.m)
            if budgeted(w.chi(finite_point(isp, y)), fuel))
        cands = [x for x in range(sub.n)
                 if accepted & ~sub.transpose(x) == 0]
        for x in cands:
            if all(sub.transpose(x) & ~sub.transpose(x2) == 0 for x2 in cands):
                return finite_point(csp, x)
        raise ValueError("no least candidate; not in range or underfueled")

    return Presubbase(index=isp, carrier=csp, family=family,
                      transpose_inverse=transpose_inverse)


def run_law_suite(law: str, max_size: int = 3, fuel: Optional[int] = None,
                  seed: int = 0):
    """Run a registered exhaustive law suite (see the laws module, which
    owns the registry) and return its report."""
    from .laws import run_law_suite as _run
    kwargs = {} if fuel is None else {"fuel": fuel}
    return _run(law, max_size=max_size, seed=seed, **kwargs)


def decode_finite(point: Point, sub: FiniteSubbase, fuel: int) -> int:
    """Candidate set of a presubbase-represented point: every carrier
    element consistent with the indices accepted so far.  Always contains
    the denoted point; antitone in fuel; its limit is the specialization
    up-set of the point in the generated topology."""
    q = point.payload if isinstance(point.payload, OpenSet) else as_open(point.payload)
    isp = finite_repr(sub.index_space())

    def seen(y: int) -> bool:
        sv = q.chi(finite_point(isp, y))
        budget = fuel if sv.bound is None else min(sv.bound, fuel)
        return sv.status(budget) is not None

    accepted = mask_of(y for y in range(sub.m) if seen(y))
    return mask_of(x for x in range(sub.n)
                   if accepted & ~sub.transpose(x) == 0)
