"""Order, equality, and canonical forms in free lattices.

leq decides s <= t in the free lattice by Whitman's recursion: a join is
below t iff every joinand is; s is below a meet iff it is below every
meetand; a generator is below a join iff it is below some joinand, and
dually; and a meet is below a join iff some meetand is below the whole
join or the whole meet is below some joinand.  Generators are below each
other only if identical.  Results are memoized for the process lifetime,
keyed on interned term identity.

canonical_form rewrites a term to the shortest join-of-meets/meet-of-joins
normal form: operands canonicalized first, same-kind nesting flattened,
operands absorbed by the rest dropped, and a meetand u of a joinand with
u below the whole join promoted in its place (dually inside meets).  Two
terms denote the same free-lattice element iff their canonical forms are
the identical object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .terms import (
    GEN,
    JOIN,
    MEET,
    GeneratorSet,
    Term,
    _node,
    enumerate_terms,
    gen,
    join,
    meet,
    print_term,
    substitute,
    term_key,
)

_LEQ: dict[tuple[Term, Term], bool] = {}


def leq(s: Term, t: Term) -> bool:
    if s is t:
        return True
    key = (s, t)
    r = _LEQ.get(key)
    if r is None:
        if s.kind == JOIN:
            r = all(leq(o, t) for o in s.ops)
        elif t.kind == MEET:
            r = all(leq(s, o) for o in t.ops)
        elif s.kind == GEN:
            # t is a generator or a join here
            r = s is t if t.kind == GEN else any(leq(s, o) for o in t.ops)
        elif t.kind == GEN:
            r = any(leq(o, t) for o in s.ops)
        else:
            # meet vs join: Whitman's condition (W)
            r = any(leq(o, t) for o in s.ops) or any(leq(s, o) for o in t.ops)
        _LEQ[key] = r
    return r


def equal(s: Term, t: Term) -> bool:
    return s is t or (leq(s, t) and leq(t, s))


_CANON: dict[Term, Term] = {}


def canonical_form(t: Term) -> Term:
    if t.kind == GEN:
        return t
    r = _CANON.get(t)
    if r is not None:
        return r
    kind = t.kind
    other = MEET if kind == JOIN else JOIN
    work: list[Term] = []
    for o in t.ops:
        c = canonical_form(o)
        work.extend(c.ops if c.kind == kind else (c,))
    work = sorted(set(work), key=term_key)
    while True:
        whole = _node(kind, tuple(work))
        promoted = False
        for i, o in enumerate(work):
            if o.kind != other:
                continue
            for u in o.ops:
                # u covers the whole operand: joins absorb such a meetand's
                # meet upward, meets dually
                if leq(u, whole) if kind == JOIN else leq(whole, u):
                    del work[i]
                    work.extend(u.ops if u.kind == kind else (u,))
                    work = sorted(set(work), key=term_key)
                    promoted = True
                    break
            if promoted:
                break
        if promoted:
            continue
        dropped = False
        if len(work) >= 2:
            for i, o in enumerate(work):
                rest = _node(kind, tuple(work[:i] + work[i + 1:]))
                if leq(o, rest) if kind == JOIN else leq(rest, o):
                    del work[i]
                    dropped = True
                    break
        if not dropped:
            break
    r = _node(kind, tuple(work))
    _CANON[t] = r
    if r is not t:
        _CANON[r] = r
    return r


def is_doubly_prime(t: Term) -> bool:
    """True iff t equals a generator."""
    return canonical_form(t).kind == GEN


def ni_predicate(terms: Sequence[Term]) -> bool:
    """Some term is below the join of the others, or above their meet."""
    ts = list(terms)
    if len(ts) < 2:
        raise ValueError("need at least two terms")
    for i, t in enumerate(ts):
        rest = ts[:i] + ts[i + 1:]
        if leq(t, join(*rest)) or leq(meet(*rest), t):
            return True
    return False


def generates_free(terms: Sequence[Term]) -> bool:
    """Do these four elements generate a free sublattice on four generators?"""
    ts = list(terms)
    if len(ts) != 4:
        raise ValueError(f"need exactly four terms, got {len(ts)}")
    return not ni_predicate(ts)


@dataclass(frozen=True)
class Interval:
    lo: Term
    hi: Term

    def __post_init__(self) -> None:
        if not leq(self.lo, self.hi):
            raise ValueError(
                f"empty interval: {print_term(self.lo)} is not below {print_term(self.hi)}"
            )

    def __repr__(self) -> str:
        return f"Interval({print_term(self.lo)!r}, {print_term(self.hi)!r})"


def in_interval(t: Term, iv: Interval) -> bool:
    return leq(iv.lo, t) and leq(t, iv.hi)


def ci_check(terms: Iterable[Term], intervals: Sequence[Interval]) -> bool:
    """Every term lies in at least one of the intervals."""
    return all(any(in_interval(t, iv) for iv in intervals) for t in terms)


def fixed_point_search(p: Term, var: str, gens: GeneratorSet,
                       max_size: int) -> Term | None:
    """First canonical term w with p[var := w] equal to w, in enumeration
    order over terms of size <= max_size; None if there is none that small."""
    base = {n: gen(n) for n in gens.names}
    for w in enumerate_terms(gens, max_size, canon=canonical_form):
        amap = dict(base)
        amap[var] = w
        if equal(substitute(p, amap), w):
            return w
    return None
