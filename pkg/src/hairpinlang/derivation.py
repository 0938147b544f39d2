"""Partial derivatives, derived-term fixpoints, and cardinality bounds.

The one-sided derivatives are Antimirov's: a set of terms whose languages
union to the residual by one symbol, taken on the left or on the right.
The two-sided derivative acts on couple symbols (x, y), consuming x on the
left and y on the right in one step; on hairpin operators it follows the
completion-specific rules (the couple must read a stem symbol and its
image, otherwise the derivative is empty).

Term sets are ordered, duplicate-free tuples. A literal empty-set member
never survives: it cannot contribute to any residual, so it is dropped
before any wrapper is applied. Reduced mode (the default) canonicalizes
every member; raw mode keeps the terms exactly as the rules build them,
which is the regime the cardinality bounds are stated for.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .expr import (
    Concat,
    Couple,
    Empty,
    Epsilon,
    ExprError,
    HLeft,
    HPrime,
    HRight,
    HSum,
    Reg,
    Registry,
    RegexAst,
    Star,
    Sum,
    Sym,
    all_couples,
    as_hairpin,
    canonicalize,
    expr_key,
    infer_alphabet,
    metrics,
    nullable,
    pure_regex_of,
    regex_key,
)


def _finish_regex(terms, reduce: bool) -> tuple[RegexAst, ...]:
    if reduce:
        terms = (canonicalize(t) for t in terms)
    out = {t for t in terms if not isinstance(t, Empty)}
    return tuple(sorted(out, key=regex_key))


def _concat_right(terms, g: RegexAst):
    # S·G: drop empty members first, then wrap; the wrapper itself is not
    # simplified here (reduced mode handles that afterwards).
    return [Concat(t, g) for t in terms if not isinstance(t, Empty)]


def _concat_left(f: RegexAst, terms):
    return [Concat(f, t) for t in terms if not isinstance(t, Empty)]


def left_pd(f: RegexAst, a: str, reduce: bool = True) -> tuple[RegexAst, ...]:
    """Antimirov left partial derivative: terms whose languages union to
    a^{-1}(L(f))."""
    return _finish_regex(_left_pd(f, a), reduce)


def _left_pd(f: RegexAst, a: str) -> list[RegexAst]:
    if isinstance(f, Sym):
        return [Epsilon()] if f.ch == a else []
    if isinstance(f, Sum):
        return _left_pd(f.left, a) + _left_pd(f.right, a)
    if isinstance(f, Concat):
        out = _concat_right(_left_pd(f.left, a), f.right)
        if nullable(f.left):
            out += _left_pd(f.right, a)
        return out
    if isinstance(f, Star):
        return _concat_right(_left_pd(f.inner, a), f)
    return []


def right_pd(f: RegexAst, a: str, reduce: bool = True) -> tuple[RegexAst, ...]:
    """Mirror of left_pd: terms whose languages union to (L(f))a^{-1}."""
    return _finish_regex(_right_pd(f, a), reduce)


def _right_pd(f: RegexAst, a: str) -> list[RegexAst]:
    if isinstance(f, Sym):
        return [Epsilon()] if f.ch == a else []
    if isinstance(f, Sum):
        return _right_pd(f.left, a) + _right_pd(f.right, a)
    if isinstance(f, Concat):
        out = _concat_left(f.left, _right_pd(f.right, a))
        if nullable(f.right):
            out += _right_pd(f.left, a)
        return out
    if isinstance(f, Star):
        return _concat_left(f, _right_pd(f.inner, a))
    return []


def word_pd(
    f: RegexAst, w: str, side: str, reduce: bool = True
) -> tuple[RegexAst, ...]:
    """Iterated symbol derivative. The word is consumed symbol by symbol
    left to right on both sides; for the right side that means the first
    symbol of w is the first one stripped off the end of the language."""
    if side not in ("left", "right"):
        raise ExprError(f"unknown side {side!r}")
    pd = left_pd if side == "left" else right_pd
    terms: tuple[RegexAst, ...] = _finish_regex([f], reduce)
    for a in w:
        step: set[RegexAst] = set()
        for t in terms:
            step.update(pd(t, a, reduce))
        terms = tuple(sorted(step, key=regex_key))
    return terms


def _wrap(terms, ctor, k: int, h: str):
    return [ctor(k, h, t) for t in terms if not isinstance(t, Empty)]


def two_sided_pd(
    e,
    c: Couple,
    registry: Optional[Registry] = None,
    reduce: bool = True,
) -> tuple:
    """Two-sided partial derivative of a hairpin expression by the couple
    (x, y): x is consumed on the left and y on the right in a single step.

    On a plain regex the couple composes the one-sided derivatives (left
    first, then right on every term). On a completion operator the result
    is empty unless both components are alphabet symbols with y = H(x);
    the surviving cases peel one stem layer, lowering the prime index by
    one until it vanishes at k = 1. Requires every operator to have k >= 1.
    """
    x, y = c
    if (x, y) == ("", ""):
        raise ExprError("the couple (epsilon, epsilon) is not a symbol")
    e = as_hairpin(e)

    if isinstance(e, Reg):
        return _reg_two_sided(e.re, x, y, reduce)

    if isinstance(e, HSum):
        out = set(two_sided_pd(e.left, c, registry, reduce))
        out.update(two_sided_pd(e.right, c, registry, reduce))
        return tuple(sorted(out, key=expr_key))

    if e.k == 0:
        raise ExprError(
            "two-sided derivatives are undefined for k = 0 completions; "
            "use the effective-automaton construction instead"
        )
    if registry is None or e.h not in registry:
        raise ExprError(f"anti-morphism {e.h!r} is not registered")
    h = registry[e.h]
    if not x or not y or x not in h.alphabet or y != h.image(x):
        return ()

    inner_xy = _reg_two_sided(e.inner, x, y, reduce)
    bare = [t.re for t in inner_xy]
    if isinstance(e, HRight):
        wrapped = _wrap(left_pd(e.inner, x, reduce), HRight, e.k, e.h)
        rest = bare if e.k == 1 else _wrap(bare, HPrime, e.k - 1, e.h)
    elif isinstance(e, HLeft):
        wrapped = _wrap(right_pd(e.inner, y, reduce), HLeft, e.k, e.h)
        rest = bare if e.k == 1 else _wrap(bare, HPrime, e.k - 1, e.h)
    else:
        wrapped = []
        rest = bare if e.k == 1 else _wrap(bare, HPrime, e.k - 1, e.h)
    out = {as_hairpin(t) for t in wrapped + rest}
    return tuple(sorted(out, key=expr_key))


def _reg_two_sided(f: RegexAst, x: str, y: str, reduce: bool):
    if not x:
        terms = right_pd(f, y, reduce)
    elif not y:
        terms = left_pd(f, x, reduce)
    else:
        step: set[RegexAst] = set()
        for t in left_pd(f, x, reduce):
            step.update(right_pd(t, y, reduce))
        terms = tuple(step)
    return tuple(sorted((Reg(t) for t in terms), key=expr_key))


@dataclass(frozen=True)
class DerivedTerms:
    terms: tuple
    side: str
    source: object


def derived_terms(
    e,
    side: str,
    registry: Optional[Registry] = None,
    alphabet: Optional[tuple[str, ...]] = None,
    reduce: bool = True,
) -> DerivedTerms:
    """Closure of the one-step derivatives of e under further derivation,
    by breadth-first worklist. The source expression belongs to the result
    only when some derivative chain comes back to it.

    Sides left/right need a pure regex and step over the alphabet; side
    two_sided steps over the whole couple alphabet (one-sided couples
    included, though they only fire on regex terms).
    """
    if alphabet is None:
        alphabet = infer_alphabet(e, registry)

    if side in ("left", "right"):
        f = pure_regex_of(e)
        if f is None:
            raise ExprError(f"{side} derived terms require a pure regex")
        if reduce:
            f = canonicalize(f)
        pd = left_pd if side == "left" else right_pd
        seen: dict[RegexAst, None] = {}
        queue = deque([f])
        while queue:
            t = queue.popleft()
            for a in alphabet:
                for t2 in pd(t, a, reduce):
                    if t2 not in seen:
                        seen[t2] = None
                        queue.append(t2)
        terms = tuple(sorted(seen, key=regex_key))
        return DerivedTerms(terms, side, e)

    if side != "two_sided":
        raise ExprError(f"unknown side {side!r}")
    start = canonicalize(as_hairpin(e)) if reduce else as_hairpin(e)
    couples = all_couples(alphabet)
    seen2: dict = {}
    queue2 = deque([start])
    while queue2:
        t = queue2.popleft()
        for c in couples:
            for t2 in two_sided_pd(t, c, registry, reduce):
                if t2 not in seen2:
                    seen2[t2] = None
                    queue2.append(t2)
    terms = tuple(sorted(seen2, key=expr_key))
    return DerivedTerms(terms, "two_sided", e)


def phi(k: int) -> int:
    """Size of the two-sided derived-term set of a single star under the
    recurrence phi(k+1) = phi(k) + 2k(k+1), with phi(0) = 0, phi(1) = 1."""
    if k < 0:
        raise ExprError("phi is defined for k >= 0")
    value = 0 if k == 0 else 1
    for i in range(1, k):
        value += 2 * i * (i + 1)
    return value


@dataclass(frozen=True)
class Bounds:
    left_bound: int
    right_bound: int
    two_sided_bound: int
    state_bound: int


def bounds(e) -> Bounds:
    """Worst-case derived-term counts from the expression's size alone:
    width n for each one-sided set, a cubic in m = n + star count for the
    two-sided set (scaled by the completion index when there is one), and
    one more than that for automaton states. The cubic assumes n > 0; at
    n = 0 the value is clamped to 0."""
    ms = metrics(e)
    m = ms.m
    cubic = 2 * m * (m + 1) * (m + 2) // 3 - 3
    if ms.index == 0:
        two_sided = cubic
    else:
        two_sided = ms.index * cubic + ms.n
    two_sided = max(two_sided, 0)
    return Bounds(ms.n, ms.n, two_sided, two_sided + 1)
