"""Builders for the three derivative-based recognizers.

regex_dta embeds the classic derived term automaton into the couple world
(labels (a, ε) only). two_sided_dta closes an expression under two-sided
derivatives and wires every couple symbol. effective_automaton handles the
k = 0 completions, which the two-sided derivative rules do not cover: it
is a restricted construction with its own transition shape, built from the
one-sided derived terms of the underlying regex, and is deliberately kept
as a separate code path (it is not the k = 0 instance of the general one).

States are numbered in construction order; the printed expression each
state stands for is kept as its display label.
"""

from __future__ import annotations

from typing import Optional

from .couple_nfa import CoupleNfa
from .derivation import derived_terms, left_pd, right_pd, two_sided_pd
from .expr import (
    ExprError,
    HLeft,
    HRight,
    Reg,
    Registry,
    RegexAst,
    all_couples,
    as_hairpin,
    canonicalize,
    expr_key,
    expr_str,
    has_zero_k,
    infer_alphabet,
    nullable,
    pure_regex_of,
    regex_str,
)


def _assemble(alphabet, exprs, initial_expr, finals, trans, printer) -> CoupleNfa:
    ids = {e: str(i) for i, e in enumerate(exprs)}
    return CoupleNfa(
        alphabet=tuple(alphabet),
        states=tuple(ids[e] for e in exprs),
        initial=frozenset({ids[initial_expr]}),
        final=frozenset(ids[e] for e in finals),
        transitions=frozenset((ids[s], c, ids[t]) for s, c, t in trans),
        labels=tuple((ids[e], printer(e)) for e in exprs),
    )


def regex_dta(f: RegexAst, reduce: bool = True) -> CoupleNfa:
    """Derived term automaton of a plain regex, with couple labels (a, ε).

    States are the expression and its left derived terms (at most width+1
    of them); a state is final when nullable. The automaton's image
    language is L(f)."""
    g = pure_regex_of(f)
    if g is None:
        raise ExprError("regex_dta requires a pure regular expression")
    if reduce:
        g = canonicalize(g)
    alphabet = infer_alphabet(g)
    dt = derived_terms(g, "left", alphabet=alphabet, reduce=reduce)
    exprs = [g] + [t for t in dt.terms if t != g]
    trans = []
    for e in exprs:
        for a in alphabet:
            for t in left_pd(e, a, reduce):
                trans.append((e, (a, ""), t))
    finals = [e for e in exprs if nullable(e)]
    return _assemble(alphabet, exprs, g, finals, trans, regex_str)


def two_sided_dta(
    e, registry: Optional[Registry] = None, reduce: bool = True
) -> CoupleNfa:
    """Two-sided derived term automaton: states are the expression plus
    its two-sided derived terms, transitions run over every couple symbol
    (one-sided couples fire on regex-valued states only), finals are the
    nullable states. Rejects k = 0 completions."""
    start = as_hairpin(e)
    if has_zero_k(start):
        raise ExprError(
            "k = 0 completions have no two-sided derivatives; "
            "use effective_automaton"
        )
    if reduce:
        start = canonicalize(start)
    alphabet = infer_alphabet(start, registry)
    couples = all_couples(alphabet)
    dt = derived_terms(start, "two_sided", registry, alphabet, reduce)
    exprs = [start] + [t for t in dt.terms if t != start]
    trans = []
    for e2 in exprs:
        for c in couples:
            for t in two_sided_pd(e2, c, registry, reduce):
                trans.append((e2, c, t))
    finals = [e2 for e2 in exprs if nullable(e2)]
    return _assemble(alphabet, exprs, start, finals, trans, expr_str)


def effective_automaton(
    e, registry: Optional[Registry] = None, reduce: bool = True
) -> CoupleNfa:
    """Recognizer for a k = 0 completion of a regular language.

    For the right completion the states are the wrapped and bare left
    derived terms of the inner regex; a wrapped state reads (x, H(x))
    into wrapped derivatives while the stem is still being matched, or
    gives up on the stem with (x, ε) into the bare copy, which then
    behaves like the ordinary derived term automaton. The left completion
    mirrors this with right derivatives and (ε, y) couples. At most
    2·width + 1 states."""
    root = as_hairpin(e)
    if reduce:
        root = canonicalize(root)
    if not isinstance(root, (HRight, HLeft)) or root.k != 0:
        raise ExprError(
            "effective_automaton requires a single k = 0 right or left completion"
        )
    if registry is None or root.h not in registry:
        raise ExprError(f"anti-morphism {root.h!r} is not registered")
    h = registry[root.h]
    rightward = isinstance(root, HRight)
    alphabet = infer_alphabet(root, registry)
    op = type(root)

    dt = derived_terms(
        root.inner, "left" if rightward else "right", alphabet=alphabet, reduce=reduce
    )
    derived = list(dt.terms)
    inners = [root.inner] + [t for t in derived if t != root.inner]

    exprs = [root]
    seen = {root}
    for state in sorted(
        {op(0, root.h, t) for t in derived} | {Reg(t) for t in derived},
        key=expr_key,
    ):
        if state not in seen:
            seen.add(state)
            exprs.append(state)

    def stem_steps(r: RegexAst):
        # couples that keep matching the stem, with the derivative terms
        if rightward:
            for x in alphabet:
                if x in h.alphabet:
                    yield (x, h.image(x)), left_pd(r, x, reduce)
        else:
            for x in alphabet:
                if x in h.alphabet:
                    yield (x, h.image(x)), right_pd(r, h.image(x), reduce)

    def drop_steps(r: RegexAst):
        # couples that stop matching the stem (one-sided reads)
        if rightward:
            for x in alphabet:
                yield (x, ""), left_pd(r, x, reduce)
        else:
            for y in alphabet:
                yield ("", y), right_pd(r, y, reduce)

    trans = []
    for r in inners:
        w = op(0, root.h, r)
        for c, terms in stem_steps(r):
            for t in terms:
                trans.append((w, c, op(0, root.h, t)))
        for c, terms in drop_steps(r):
            for t in terms:
                trans.append((w, c, Reg(t)))
    for r in derived:
        for c, terms in drop_steps(r):
            for t in terms:
                trans.append((Reg(r), c, Reg(t)))

    finals = [e2 for e2 in exprs if nullable(e2)]
    return _assemble(alphabet, exprs, root, finals, trans, expr_str)
