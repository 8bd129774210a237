import itertools
import random

from hypothesis import given, settings, strategies as st

from synthtop.kernel import dovetail_bound, literal_name
from synthtop.sierpinski import (NEGATIVE_FUEL, accept_at, after, and_finite,
                                 bind_name_value, bot, first_accepting,
                                 or_countable, top)


def test_top_accepts_at_zero():
    assert top().status(0) == 0


def test_bot_pends_at_large_fuel():
    assert bot().status(10 ** 6) is None


def test_accept_at_threshold():
    v = accept_at(17)
    assert v.status(16) is None
    assert v.status(17) == 17


def test_status_cache_matches_fresh_runs():
    v = accept_at(9)
    assert v.status(3) is None
    assert v.status(100) == 9
    assert v.status(5) is None  # a query below the accept step stays pending
    assert accept_at(9).status(100) == 9


def test_and_trivial_cases():
    assert and_finite([top(), top()]).status(0) == 0
    assert and_finite([top(), bot()]).status(NEGATIVE_FUEL) is None


def test_and_accepts_at_sum_of_counts():
    # frozen scheduler constant: forwarding adds no overhead steps
    v = and_finite([accept_at(3), accept_at(5)])
    assert v.status(7) is None
    assert v.status(8) == 8
    assert v.bound == 8


def test_or_trivial_cases():
    fam = [bot(), bot(), top(), bot()]
    assert or_countable(fam).status(100) is not None
    assert or_countable(lambda i: bot()).status(NEGATIVE_FUEL) is None
    assert or_countable([]).status(NEGATIVE_FUEL) is None


def test_or_planted_at_512_within_dovetail_bound():
    v = or_countable(lambda i: accept_at(3) if i == 512 else bot())
    bound = dovetail_bound(512, 3)
    assert v.status(bound) == bound


def test_or_monotone_under_earlier_acceptance():
    fam = [accept_at(9), bot(), accept_at(30)]
    faster = [accept_at(9), bot(), accept_at(4)]
    slow = or_countable(fam)
    fast = or_countable(faster)
    for fuel in range(0, 60):
        if slow.status(fuel) is not None:
            assert fast.status(fuel) is not None


def test_and_monotone_under_earlier_acceptance():
    slow = and_finite([accept_at(4), accept_at(7)])
    fast = and_finite([accept_at(4), accept_at(2)])
    for fuel in range(0, 20):
        if slow.status(fuel) is not None:
            assert fast.status(fuel) is not None


def test_acceptance_ever_is_permutation_invariant():
    rng = random.Random(5)
    for _ in range(20):
        children = [rng.choice([bot(), accept_at(rng.randrange(1, 9)), top()])
                    for _ in range(4)]
        outcomes = set()
        for perm in itertools.permutations(range(4)):
            fam = [children[i] for i in perm]
            both = (and_finite(fam).status(200) is not None,
                    or_countable(fam).status(200) is not None)
            outcomes.add(both)
        assert len(outcomes) == 1


@st.composite
def trees(draw, depth=0):
    if depth >= 3 or draw(st.booleans()):
        return draw(st.sampled_from(["top", "bot"])) \
            if draw(st.booleans()) else ("at", draw(st.integers(0, 12)))
    op = draw(st.sampled_from(["and", "or", "after"]))
    if op == "after":
        return ("after", draw(st.integers(0, 5)), draw(trees(depth + 1)))
    kids = draw(st.lists(trees(depth + 1), min_size=1, max_size=3))
    return (op, kids)


def build(tree):
    if tree == "top":
        return top()
    if tree == "bot":
        return bot()
    tag = tree[0]
    if tag == "at":
        return accept_at(tree[1])
    if tag == "after":
        return after(tree[1], build(tree[2]))
    kids = [build(t) for t in tree[1]]
    return and_finite(kids) if tag == "and" else or_countable(kids)


@given(trees(), st.integers(0, 64))
@settings(max_examples=80, deadline=None)
def test_fuel_monotone_and_deterministic(tree, fuel):
    a = build(tree)
    b = build(tree)
    sa = a.status(fuel)
    assert sa == b.status(fuel)
    if sa is not None:
        assert a.status(fuel + 17) == sa
    # certified horizons are honest
    if a.bound is not None and a.status(a.bound) is None:
        assert build(tree).status(a.bound + 200) is None


@given(trees())
@settings(max_examples=60, deadline=None)
def test_bound_certifies_acceptance_horizon(tree):
    v = build(tree)
    assert v.bound is not None
    st_at_bound = v.status(v.bound)
    if st_at_bound is None:
        # beyond the horizon nothing changes
        assert v.status(v.bound + 123) is None


def test_after_shifts_acceptance():
    v = after(5, accept_at(2))
    assert v.status(6) is None
    assert v.status(7) == 7
    assert after(3, top()).status(3) == 3


def test_bind_name_value_costs_one_step_per_name_step():
    nm = literal_name([4], tail=4)
    v = bind_name_value(nm, lambda k: accept_at(k), inner_bound=4)
    assert v.status(5) == 5  # 1 read step + 4 inner steps
    assert v.bound == 5
    born = bind_name_value(literal_name([0], tail=0), lambda k: top(),
                           inner_bound=0)
    assert born.status(1) == 1  # arrival observes the born-accepted inner


def test_no_negation_surface():
    # semidecidability is one-sided: the module exposes no complement-like
    # combinator
    import synthtop.sierpinski as mod
    offenders = [n for n in dir(mod)
                 if callable(getattr(mod, n))
                 and (n == "not_" or n.startswith("neg") or n == "complement")]
    assert not offenders


def test_first_accepting_reports_winner():
    fam = [bot(), accept_at(2), top()]
    got = first_accepting(lambda i: fam[i], 3, 100)
    assert got is not None
    idx, used = got
    assert idx in (1, 2)
    assert first_accepting(lambda i: bot(), 4, 500) is None
