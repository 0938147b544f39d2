"""Couple NFAs: automata whose labels consume a symbol on each side.

A transition label is a couple (x, y), never (ε, ε); reading it wraps the
word generated by the rest of the run as x·w·y. The language of interest
is the image language: every accepted label sequence is flattened through
im() and the automaton stands for that set of plain words. Such automata
recognize exactly the linear context-free languages.

Membership is decided two ways: a faithful transcription of the recursive
algorithm (try every transition whose components match the ends of the
word), and a memoized variant over substring intervals that is polynomial.
Both are exposed so tests can attest they agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .expr import Couple
from .oracle import CAP, LangSet


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class CoupleNfa:
    """An NFA over a couple alphabet.

    ``states`` are identifier strings in display order; ``labels`` may map
    an identifier to a human-readable label (constructions use the printed
    expression each state stands for). Transitions form a relation: triples
    (source, (x, y), target) with "" standing for ε on either side.
    """

    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial: frozenset[str]
    final: frozenset[str]
    transitions: frozenset[tuple[str, Couple, str]]
    labels: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        declared = set(self.states)
        if len(declared) != len(self.states):
            raise AutomatonError("duplicate state identifier")
        for q in self.initial | self.final:
            if q not in declared:
                raise AutomatonError(f"undeclared state {q!r} in initial/final set")
        sigma = set(self.alphabet) | {""}
        for src, (x, y), dst in self.transitions:
            if src not in declared or dst not in declared:
                raise AutomatonError(f"transition endpoint {src!r}->{dst!r} undeclared")
            if x not in sigma or y not in sigma or (x, y) == ("", ""):
                raise AutomatonError(f"bad transition label ({x!r},{y!r})")
        for q, _ in self.labels:
            if q not in declared:
                raise AutomatonError(f"label for undeclared state {q!r}")

    def label(self, q: str) -> str:
        for state, text in self.labels:
            if state == q:
                return text
        return q

    def outgoing(self, q: str):
        return sorted(
            (c, dst) for src, c, dst in self.transitions if src == q
        )


def im(word: Sequence[Couple]) -> str:
    """Flatten a couple-symbol sequence: im(ε) = ε and
    im((x,y)·w) = x·im(w)·y."""
    if not word:
        return ""
    x, y = word[0]
    return x + im(word[1:]) + y


def is_in_right_language(a: CoupleNfa, w: str, q: str) -> bool:
    """Does state q generate w? Recursive: ε needs q final; otherwise some
    transition (q,(α,β),q') must supply a matching prefix α and suffix β,
    with q' generating the middle. Terminates since every label consumes
    at least one symbol."""
    if q not in a.states:
        raise AutomatonError(f"unknown state {q!r}")
    if w == "":
        return q in a.final
    for src, (x, y), dst in a.transitions:
        if src != q:
            continue
        if len(w) < len(x) + len(y):
            continue
        if not (w.startswith(x) and w.endswith(y)):
            continue
        if is_in_right_language(a, w[len(x) : len(w) - len(y)], dst):
            return True
    return False


def membership_test(a: CoupleNfa, w: str) -> bool:
    """Word in the image language? Disjunction of is_in_right_language
    over the initial states."""
    return any(is_in_right_language(a, w, q) for q in sorted(a.initial))


def membership_dp(a: CoupleNfa, w: str) -> bool:
    """Same answer as membership_test, via memoization on (state, interval):
    whether w[i:j] is generated from the state. O(|Q|·|w|²·|δ|) worst case."""
    by_src: dict[str, list[tuple[str, str, str]]] = {q: [] for q in a.states}
    for src, (x, y), dst in a.transitions:
        by_src[src].append((x, y, dst))
    memo: dict[tuple[str, int, int], bool] = {}

    def gen(q: str, i: int, j: int) -> bool:
        key = (q, i, j)
        if key in memo:
            return memo[key]
        if i == j:
            result = q in a.final
        else:
            result = False
            for x, y, dst in by_src[q]:
                if j - i < len(x) + len(y):
                    continue
                if w[i : i + len(x)] != x or w[j - len(y) : j] != y:
                    continue
                if gen(dst, i + len(x), j - len(y)):
                    result = True
                    break
        memo[key] = result
        return result

    return any(gen(q, 0, len(w)) for q in sorted(a.initial))


def enumerate_gamma_language(a: CoupleNfa, max_len: int) -> LangSet:
    """All image-language words of length at most max_len.

    Length-indexed dynamic programming: the words of length n generated by
    a state are built from strictly shorter words of the successor states
    (every label adds at least one symbol), so one pass per length is
    exact even when one-sided labels form cycles."""
    if max_len > CAP:
        raise AutomatonError(f"max_len {max_len} exceeds the enumeration cap {CAP}")
    if max_len < 0:
        raise AutomatonError("max_len must be non-negative")
    by_src: dict[str, list[tuple[str, str, str]]] = {q: [] for q in a.states}
    for src, (x, y), dst in a.transitions:
        by_src[src].append((x, y, dst))
    # gen[n][q] = words of length exactly n generated from q
    gen: list[dict[str, set[str]]] = []
    for n in range(max_len + 1):
        level: dict[str, set[str]] = {}
        for q in a.states:
            words = set()
            if n == 0:
                if q in a.final:
                    words.add("")
            else:
                for x, y, dst in by_src[q]:
                    grow = len(x) + len(y)
                    if grow > n:
                        continue
                    for mid in gen[n - grow][dst]:
                        words.add(x + mid + y)
            level[q] = words
        gen.append(level)
    out = set()
    for q in a.initial:
        for level in gen:
            out.update(level[q])
    return LangSet(frozenset(out), max_len)


# ---------------------------------------------------------------------------
# Serialization


_TOKEN = re.compile(r"(?:\\.|\S)+")


def _split(line: str) -> list[str]:
    """Split on whitespace, keeping backslash-escaped characters inside
    their token."""
    return _TOKEN.findall(line)


def _esc(text: str) -> str:
    return text.replace("\\", "\\\\").replace(" ", "\\ ")


def _unesc(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        if text[i] == "\\" and i + 1 < len(text):
            out.append(text[i + 1])
            i += 2
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def to_text(a: CoupleNfa) -> str:
    """Line-oriented dump; from_text() reads it back."""
    lines = ["alphabet " + " ".join(a.alphabet)]
    for q in a.states:
        parts = ["state", _esc(q)]
        if q in a.initial:
            parts.append("initial")
        if q in a.final:
            parts.append("final")
        if a.label(q) != q:
            parts.append("label=" + _esc(a.label(q)))
        lines.append(" ".join(parts))
    for src, (x, y), dst in sorted(a.transitions):
        lines.append(f"trans {_esc(src)} {x or '~'} {y or '~'} {_esc(dst)}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> CoupleNfa:
    alphabet: list[str] = []
    states: list[str] = []
    initial: set[str] = set()
    final: set[str] = set()
    transitions: set[tuple[str, Couple, str]] = set()
    labels: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = _split(line)
        kind = fields[0]
        if kind == "alphabet":
            for tok in fields[1:]:
                # a run-together token like "abc" means three symbols
                alphabet.extend(tok)
        elif kind == "state":
            if len(fields) < 2:
                raise AutomatonError(f"line {lineno}: state needs an identifier")
            q = _unesc(fields[1])
            states.append(q)
            for flag in fields[2:]:
                if flag == "initial":
                    initial.add(q)
                elif flag == "final":
                    final.add(q)
                elif flag.startswith("label="):
                    labels.append((q, _unesc(flag[len("label=") :])))
                else:
                    raise AutomatonError(f"line {lineno}: unknown flag {flag!r}")
        elif kind == "trans":
            if len(fields) != 5:
                raise AutomatonError(f"line {lineno}: trans needs src x y dst")
            _, src, x, y, dst = fields
            transitions.add((
                _unesc(src),
                (("" if x == "~" else x), ("" if y == "~" else y)),
                _unesc(dst),
            ))
        else:
            raise AutomatonError(f"line {lineno}: unknown directive {kind!r}")
    return CoupleNfa(
        tuple(alphabet),
        tuple(states),
        frozenset(initial),
        frozenset(final),
        frozenset(transitions),
        tuple(labels),
    )


def _gvquote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(a: CoupleNfa) -> str:
    """GraphViz rendering: double circles for finals, a point-shaped
    arrow source per initial state, ε printed as ~."""
    ids = {q: f"n{i}" for i, q in enumerate(a.states)}
    lines = ["digraph couple_nfa {", "  rankdir=LR;"]
    for i, q in enumerate(sorted(a.initial)):
        lines.append(f"  __start{i} [shape=point, label=\"\"];")
    for q in a.states:
        shape = "doublecircle" if q in a.final else "circle"
        lines.append(f"  {ids[q]} [shape={shape}, label={_gvquote(a.label(q))}];")
    for i, q in enumerate(sorted(a.initial)):
        lines.append(f"  __start{i} -> {ids[q]};")
    for src, (x, y), dst in sorted(a.transitions):
        lab = f"({x or '~'},{y or '~'})"
        lines.append(f"  {ids[src]} -> {ids[dst]} [label={_gvquote(lab)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
