"""Represented-space constructors and the cartesian-closed plumbing.

A `Space` is a constructor tree telling us how a `Point`'s payload is
read; a `Point` is a payload tagged with its space.  All maps between
spaces are shallow transformers (Python callables on points): the
machinery composes realizers, it does not serialize them.

Capability witnesses are attached to spaces where available rather than
derived: ``overt`` is a whole-space overt value and ``filter_inverse``
a partial inverse of the neighborhood map.  Spaces without a witness
simply lack the corresponding operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .kernel import Name, literal_name
from .sierpinski import SValue, bind_name_value


class SpaceMismatch(ValueError):
    """A point or hyperspace value was used over the wrong space."""


class MissingWitnessError(ValueError):
    """The operation needs a capability witness this space does not carry."""


class Space:
    __slots__ = ("tag", "parts", "label", "overt", "filter_inverse",
                 "_opens", "_overts", "_compacts")

    def __init__(self, tag: str, parts: tuple = (), label: str = ""):
        self.tag = tag
        self.parts = parts
        self.label = label
        self.overt = None            # OvertClosed over self, or None
        self.filter_inverse = None   # (OpenSet over opens(self), fuel) -> Point
        self._opens = None
        self._overts = None
        self._compacts = None

    def __repr__(self):
        return self.label or f"Space<{self.tag}>"


NAT = Space("nat", label="N")
BAIRE = Space("baire", label="N^N")
SIERP = Space("sierp", label="S")


def product(x: Space, y: Space) -> Space:
    return Space("product", (x, y), label=f"({x!r} x {y!r})")


def coproduct(x: Space, y: Space) -> Space:
    return Space("coproduct", (x, y), label=f"({x!r} + {y!r})")


def meet(x: Space, y: Space) -> Space:
    return Space("meet", (x, y), label=f"({x!r} & {y!r})")


def subspace(x: Space, member: Callable[["Point"], bool]) -> Space:
    """A subspace: points are x-points asserted to satisfy ``member``.
    The predicate is only usable at oracle scale; no new names appear."""
    return Space("subspace", (x, member), label=f"Sub({x!r})")


def sequence(x: Space) -> Space:
    return Space("sequence", (x,), label=f"{x!r}^N")


def function(x: Space, y: Space) -> Space:
    return Space("function", (x, y), label=f"C({x!r},{y!r})")


def opens(x: Space) -> Space:
    """O(x), realized as the function space into Sierpinski; memoized so
    repeated constructions share identity."""
    sp = x._opens
    if sp is None:
        sp = function(x, SIERP)
        sp.label = f"O({x!r})"
        x._opens = sp
    return sp


def overts(x: Space) -> Space:
    """A+(x): closed sets given by their meets-this-open semidecider."""
    sp = x._overts
    if sp is None:
        sp = Space("overts", (x,), label=f"A+({x!r})")
        x._overts = sp
    return sp


def compacts(x: Space) -> Space:
    """K-(x): saturated compacts given by their inside-this-open semidecider."""
    sp = x._compacts
    if sp is None:
        sp = Space("compacts", (x,), label=f"K-({x!r})")
        x._compacts = sp
    return sp


def same_shape(a: Space, b: Space) -> bool:
    if a is b:
        return True
    if a.tag != b.tag:
        return False
    if len(a.parts) != len(b.parts):
        return False
    for p, q in zip(a.parts, b.parts):
        if isinstance(p, Space) and isinstance(q, Space):
            if not same_shape(p, q):
                return False
        elif isinstance(p, Space) or isinstance(q, Space):
            return False
        else:
            # non-space payloads (finite data, predicates): compare by
            # equality where it is meaningful, identity otherwise
            try:
                if p != q:
                    return False
            except Exception:
                if p is not q:
                    return False
    return True


def check_space(point: "Point", space: Space, what: str = "point") -> None:
    if not same_shape(point.space, space):
        raise SpaceMismatch(f"{what} lives over {point.space!r}, expected {space!r}")


class Point:
    __slots__ = ("space", "payload")

    def __init__(self, space: Space, payload):
        self.space = space
        self.payload = payload

    def __repr__(self):
        return f"Point({self.space!r})"


# ---------------------------------------------------------------------------
# Base spaces


def nat_point(k: int, delay: int = 0) -> Point:
    if delay:
        from .kernel import delayed_name
        return Point(NAT, delayed_name([(delay, k)], tail=k))
    return Point(NAT, literal_name([k], tail=k))


def baire_point(name: Name) -> Point:
    return Point(BAIRE, name)


def read_first(p: Point, fuel: int) -> Optional[int]:
    """First emitted value of a name-backed point, within fuel steps."""
    name: Name = p.payload
    vals = name.prefix(1, fuel)
    return vals[0] if vals else None


def sierp_point(v: SValue) -> Point:
    return Point(SIERP, v)


def sierp_value(p: Point) -> SValue:
    check_space(p, SIERP)
    return p.payload


def on_value(p: Point, k: Callable[[int], SValue],
             inner_bound: Optional[int] = None) -> SValue:
    """Semidecision reading the first value of a name-backed point."""
    return bind_name_value(p.payload, k, inner_bound=inner_bound)


# ---------------------------------------------------------------------------
# Products, coproducts, meets


def pair_point(x: Point, y: Point) -> Point:
    return Point(product(x.space, y.space), (x, y))


def proj1(p: Point) -> Point:
    if p.space.tag != "product":
        raise SpaceMismatch(f"proj1 on {p.space!r}")
    return p.payload[0]


def proj2(p: Point) -> Point:
    if p.space.tag != "product":
        raise SpaceMismatch(f"proj2 on {p.space!r}")
    return p.payload[1]


def inj0(x: Point, other: Space) -> Point:
    return Point(coproduct(x.space, other), (0, x))


def inj1(other: Space, y: Point) -> Point:
    return Point(coproduct(other, y.space), (1, y))


def case_point(p: Point, f: Callable[[Point], Point],
               g: Callable[[Point], Point]) -> Point:
    if p.space.tag != "coproduct":
        raise SpaceMismatch(f"case on {p.space!r}")
    tag, inner = p.payload
    if tag == 0:
        return f(inner)
    if tag == 1:
        return g(inner)
    raise SpaceMismatch(f"coproduct tag {tag!r}")


def meet_point(x_view: Point, y_view: Point) -> Point:
    """Both views must denote the same carrier element; that obligation is
    the caller's, checkable only at oracle scale."""
    return Point(meet(x_view.space, y_view.space), (x_view, y_view))


def meet_left(p: Point) -> Point:
    if p.space.tag != "meet":
        raise SpaceMismatch(f"meet_left on {p.space!r}")
    return p.payload[0]


def meet_right(p: Point) -> Point:
    if p.space.tag != "meet":
        raise SpaceMismatch(f"meet_right on {p.space!r}")
    return p.payload[1]


# ---------------------------------------------------------------------------
# Sequences


def seq_point(x: Space, terms: Union[Sequence[Point], Callable[[int], Point]]) -> Point:
    if not callable(terms):
        items = list(terms)

        def get(i: int, _items=items) -> Point:
            return _items[i]

        terms = get
    cache: dict[int, Point] = {}

    def lookup(i: int) -> Point:
        if i not in cache:
            cache[i] = terms(i)
        return cache[i]

    return Point(sequence(x), lookup)


def seq_at(p: Point, n: int) -> Point:
    if p.space.tag != "sequence":
        raise SpaceMismatch(f"seq_at on {p.space!r}")
    return p.payload(n)


@dataclass
class ConvSeq:
    """A sequence indexed by N plus its limit slot: terms(n) for finite
    indices, ``limit`` for the infinity index.  Convergence itself is
    checked at oracle scale."""

    terms: Callable[[int], Point]
    limit: Point

    def at(self, n: Union[int, str]) -> Point:
        if n == "inf":
            return self.limit
        return self.terms(n)


# ---------------------------------------------------------------------------
# Function spaces


def fun_point(dom: Space, cod: Space, transformer: Callable[[Point], Point]) -> Point:
    return Point(function(dom, cod), transformer)


def apply_fun(f: Point, x: Point) -> Point:
    if f.space.tag != "function":
        raise SpaceMismatch(f"apply on {f.space!r}")
    check_space(x, f.space.parts[0], "argument")
    return f.payload(x)


def identity_fun(x: Space) -> Point:
    return fun_point(x, x, lambda p: p)


def compose_fun(g: Point, f: Point) -> Point:
    """g after f."""
    return fun_point(f.space.parts[0], g.space.parts[1],
                     lambda p: apply_fun(g, apply_fun(f, p)))


def curry(f: Point) -> Point:
    fs = f.space
    if fs.tag != "function" or fs.parts[0].tag != "product":
        raise SpaceMismatch(f"curry on {fs!r}")
    x, y = fs.parts[0].parts
    z = fs.parts[1]

    def outer(xp: Point) -> Point:
        return fun_point(y, z, lambda yp: apply_fun(f, pair_point(xp, yp)))

    return fun_point(x, function(y, z), outer)


def uncurry(f: Point) -> Point:
    fs = f.space
    if fs.tag != "function" or fs.parts[1].tag != "function":
        raise SpaceMismatch(f"uncurry on {fs!r}")
    x = fs.parts[0]
    y, z = fs.parts[1].parts

    def flat(p: Point) -> Point:
        return apply_fun(apply_fun(f, proj1(p)), proj2(p))

    return fun_point(product(x, y), z, flat)
