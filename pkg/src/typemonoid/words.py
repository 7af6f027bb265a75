"""Regular languages of reduced words over a two-generator free group.

Letters are `a`, `A`, `b`, `B` with `A` and `B` the inverses of `a` and
`b`.  A word is reduced when no letter is followed by its inverse.
Every language here is a set of reduced words, kept as a total DFA that
is minimized and canonically numbered after each operation, so
dataclass equality is language equality (the minimal DFA is unique up
to the state numbering, and breadth-first renumbering fixes it).

Group elements act by left multiplication.  Prepending a generator to a
reduced word cancels exactly when the word starts with the inverse
letter, so the action splits into a prefix-stripping part and a
prefix-adding part, both regular.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Tuple

__all__ = [
    "LETTERS",
    "ReducedWordDFA",
    "inverse_letter",
    "invert_word",
    "is_reduced",
    "reduce_word",
    "dfa_none",
    "dfa_all",
    "dfa_word",
    "dfa_first_letter",
    "dfa_star",
    "dfa_union",
    "dfa_intersect",
    "dfa_complement",
    "dfa_difference",
    "dfa_equivalent",
    "left_translate",
    "compile_word_regex",
    "reduced_words_upto",
]

LETTERS = "aAbB"
_INV = {"a": "A", "A": "a", "b": "B", "B": "b"}
_IDX = {c: i for i, c in enumerate(LETTERS)}


def inverse_letter(c: str) -> str:
    return _INV[c]


def invert_word(w: str) -> str:
    return "".join(_INV[c] for c in reversed(w))


def is_reduced(w: str) -> bool:
    return all(c in _IDX for c in w) and all(
        _INV[x] != y for x, y in zip(w, w[1:])
    )


def reduce_word(w: str) -> str:
    out: List[str] = []
    for c in w:
        if c not in _IDX:
            raise ValueError(f"unknown letter {c!r}")
        if out and out[-1] == _INV[c]:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


@dataclass(frozen=True)
class ReducedWordDFA:
    n_states: int
    start: int
    transitions: Tuple[Tuple[int, int, int, int], ...]
    accepting: FrozenSet[int]

    def accepts(self, w: str) -> bool:
        q = self.start
        for c in w:
            q = self.transitions[q][_IDX[c]]
        return q in self.accepting

    def is_empty(self) -> bool:
        return not self.accepting

    def enumerate(self, max_len: int) -> List[str]:
        """All accepted words of length <= max_len."""
        return [w for w in reduced_words_upto(max_len) if self.accepts(w)]

    def __str__(self) -> str:
        return f"dfa[{self.n_states} states, {len(self.accepting)} accepting]"


def reduced_words_upto(max_len: int) -> Iterator[str]:
    frontier = [""]
    yield ""
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for c in LETTERS:
                if not w or w[-1] != _INV[c]:
                    nxt.append(w + c)
                    yield w + c
        frontier = nxt


def _canonical(
    n_states: int,
    start: int,
    transitions: List[Tuple[int, int, int, int]],
    accepting: FrozenSet[int],
) -> ReducedWordDFA:
    """Restrict to reachable states, minimize, renumber breadth-first."""
    reach = [start]
    seen = {start}
    for q in reach:
        for t in transitions[q]:
            if t not in seen:
                seen.add(t)
                reach.append(t)
    # Moore refinement on the reachable part
    block: Dict[int, int] = {q: (1 if q in accepting else 0) for q in reach}
    while True:
        sig = {
            q: (block[q],) + tuple(block[transitions[q][i]] for i in range(4))
            for q in reach
        }
        relabel: Dict[Tuple[int, ...], int] = {}
        new_block = {}
        for q in reach:
            new_block[q] = relabel.setdefault(sig[q], len(relabel))
        if len(relabel) == len(set(block.values())):
            block = new_block
            break
        block = new_block
    # breadth-first renumbering of the quotient makes the form canonical
    rep: Dict[int, int] = {}
    order = [block[start]]
    rep[block[start]] = 0
    quotient_next: Dict[int, Tuple[int, ...]] = {}
    for q in reach:
        quotient_next.setdefault(block[q], tuple(block[transitions[q][i]] for i in range(4)))
    for b in order:
        for t in quotient_next[b]:
            if t not in rep:
                rep[t] = len(rep)
                order.append(t)
    trans = [None] * len(rep)
    for b in order:
        trans[rep[b]] = tuple(rep[t] for t in quotient_next[b])
    acc = frozenset(rep[block[q]] for q in reach if q in accepting)
    return ReducedWordDFA(len(rep), 0, tuple(trans), acc)


def _reduced_automaton_parts():
    # state 0: nothing read; states 1..4: last letter; state 5: dead
    trans = []
    trans.append(tuple(1 + i for i in range(4)))
    for last in range(4):
        row = []
        for i in range(4):
            bad = _INV[LETTERS[last]] == LETTERS[i]
            row.append(5 if bad else 1 + i)
        trans.append(tuple(row))
    trans.append((5, 5, 5, 5))
    return 6, 0, trans


def dfa_all() -> ReducedWordDFA:
    n, start, trans = _reduced_automaton_parts()
    return _canonical(n, start, trans, frozenset(range(5)))


def dfa_none() -> ReducedWordDFA:
    n, start, trans = _reduced_automaton_parts()
    return _canonical(n, start, trans, frozenset())


def dfa_word(w: str) -> ReducedWordDFA:
    """The singleton language {w}; w must be reduced."""
    if not is_reduced(w):
        raise ValueError(f"word {w!r} is not reduced")
    n = len(w) + 2
    dead = n - 1
    trans = []
    for pos in range(len(w)):
        trans.append(
            tuple(pos + 1 if LETTERS[i] == w[pos] else dead for i in range(4))
        )
    trans.append((dead,) * 4)
    trans.append((dead,) * 4)
    return _canonical(n, 0, trans, frozenset({len(w)}))


def dfa_first_letter(c: str) -> ReducedWordDFA:
    """All reduced words whose first letter is c."""
    if c not in _IDX:
        raise ValueError(f"unknown letter {c!r}")
    n, start, trans = _reduced_automaton_parts()
    # fresh start state admitting only c into the tracker
    trans = list(trans)
    trans.append(tuple(1 + i if LETTERS[i] == c else 5 for i in range(4)))
    return _canonical(n + 1, n, trans, frozenset(range(1, 5)))


def dfa_star(c: str) -> ReducedWordDFA:
    """The language {c^n : n >= 0} of powers of a single letter."""
    if c not in _IDX:
        raise ValueError(f"unknown letter {c!r}")
    trans = [
        tuple(0 if LETTERS[i] == c else 1 for i in range(4)),
        (1, 1, 1, 1),
    ]
    return _canonical(2, 0, trans, frozenset({0}))


def _product(x: ReducedWordDFA, y: ReducedWordDFA, accept) -> ReducedWordDFA:
    index: Dict[Tuple[int, int], int] = {}
    pairs: List[Tuple[int, int]] = []

    def key(p, q):
        if (p, q) not in index:
            index[(p, q)] = len(pairs)
            pairs.append((p, q))
        return index[(p, q)]

    key(x.start, y.start)
    trans: List[Tuple[int, ...]] = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        trans.append(tuple(key(x.transitions[p][k], y.transitions[q][k]) for k in range(4)))
        i += 1
    acc = frozenset(
        index[(p, q)]
        for (p, q) in pairs
        if accept(p in x.accepting, q in y.accepting)
    )
    return _canonical(len(pairs), 0, trans, acc)


def dfa_union(x: ReducedWordDFA, y: ReducedWordDFA) -> ReducedWordDFA:
    return _product(x, y, lambda a, b: a or b)


def dfa_intersect(x: ReducedWordDFA, y: ReducedWordDFA) -> ReducedWordDFA:
    return _product(x, y, lambda a, b: a and b)


def dfa_difference(x: ReducedWordDFA, y: ReducedWordDFA) -> ReducedWordDFA:
    return _product(x, y, lambda a, b: a and not b)


def dfa_complement(x: ReducedWordDFA) -> ReducedWordDFA:
    return dfa_difference(dfa_all(), x)


def dfa_equivalent(x: ReducedWordDFA, y: ReducedWordDFA) -> bool:
    """Equality by symmetric-difference emptiness, independent of the
    canonical-form route used by ==."""
    return _product(x, y, lambda a, b: a != b).is_empty()


def _prepend(c: str, x: ReducedWordDFA) -> ReducedWordDFA:
    # c . L for L whose words never start with the inverse of c
    n = x.n_states
    trans = [tuple(t for t in row) for row in x.transitions]
    dead = n + 1
    trans.append(tuple(x.start if LETTERS[i] == c else dead for i in range(4)))
    trans.append((dead,) * 4)
    return _canonical(n + 2, n, trans, x.accepting)


def _shift_start(x: ReducedWordDFA, c: str) -> ReducedWordDFA:
    # {v : cv in L}; the start state moves one letter into the automaton
    return _canonical(
        x.n_states, x.transitions[x.start][_IDX[c]], list(x.transitions), x.accepting
    )


def left_translate(x: ReducedWordDFA, w: str) -> ReducedWordDFA:
    """The language {reduce(w u) : u in x} for a reduced word w."""
    if not is_reduced(w):
        raise ValueError(f"mover {w!r} is not reduced")
    out = x
    for c in reversed(w):
        inv = _INV[c]
        stays = dfa_difference(out, dfa_first_letter(inv))
        cancels = _shift_start(out, inv)
        out = dfa_union(
            dfa_intersect(_prepend(c, stays), dfa_all()), cancels
        )
    return out


# ---------------------------------------------------------------------------
# Regex compilation for the certificate file format


class _Regex:
    """Recursive-descent parser for (), |, *, +, ?, literals a A b B,
    and % for the empty word.  Compiles via Thompson NFA and subset
    construction, then intersects with the reduced-word language."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self):
        node = self._alt()
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at {self.pos} in {self.text!r}")
        return node

    def _alt(self):
        branches = [self._cat()]
        while self._peek() == "|":
            self.pos += 1
            branches.append(self._cat())
        return ("alt", branches) if len(branches) > 1 else branches[0]

    def _cat(self):
        parts = []
        while self._peek() not in ("", "|", ")"):
            parts.append(self._post())
        if not parts:
            return ("eps",)
        return ("cat", parts) if len(parts) > 1 else parts[0]

    def _post(self):
        node = self._atom()
        while self._peek() in ("*", "+", "?"):
            op = self.text[self.pos]
            self.pos += 1
            if op == "*":
                node = ("star", node)
            elif op == "+":
                node = ("cat", [node, ("star", node)])
            else:
                node = ("alt", [node, ("eps",)])
        return node

    def _atom(self):
        c = self._peek()
        if c == "(":
            self.pos += 1
            node = self._alt()
            if self._peek() != ")":
                raise ValueError(f"unbalanced parens in {self.text!r}")
            self.pos += 1
            return node
        if c == "%":
            self.pos += 1
            return ("eps",)
        if c in _IDX:
            self.pos += 1
            return ("lit", c)
        raise ValueError(f"unexpected {c!r} at {self.pos} in {self.text!r}")

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""


def _nfa(node, fragments):
    # fragments: list of state transition dicts {letter: set, "": set}
    def new_state():
        fragments.append({})
        return len(fragments) - 1

    kind = node[0]
    if kind == "eps":
        s = new_state()
        return s, s
    if kind == "lit":
        s, t = new_state(), new_state()
        fragments[s].setdefault(node[1], set()).add(t)
        return s, t
    if kind == "cat":
        first, last = None, None
        for part in node[1]:
            s, t = _nfa(part, fragments)
            if first is None:
                first = s
            else:
                fragments[last].setdefault("", set()).add(s)
            last = t
        return first, last
    if kind == "alt":
        s, t = new_state(), new_state()
        for part in node[1]:
            ps, pt = _nfa(part, fragments)
            fragments[s].setdefault("", set()).add(ps)
            fragments[pt].setdefault("", set()).add(t)
        return s, t
    if kind == "star":
        s, t = new_state(), new_state()
        ps, pt = _nfa(node[1], fragments)
        fragments[s].setdefault("", set()).update({ps, t})
        fragments[pt].setdefault("", set()).update({ps, t})
        return s, t
    raise AssertionError(kind)


def compile_word_regex(text: str) -> ReducedWordDFA:
    """Compile a regex over a, A, b, B to a reduced-word language."""
    fragments: List[dict] = []
    start, final = _nfa(_Regex(text).parse(), fragments)

    def eclose(states):
        out = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for t in fragments[q].get("", ()):
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)

    start_set = eclose({start})
    index = {start_set: 0}
    sets = [start_set]
    trans: List[Tuple[int, ...]] = []
    i = 0
    while i < len(sets):
        cur = sets[i]
        row = []
        for c in LETTERS:
            nxt = eclose(
                {t for q in cur for t in fragments[q].get(c, ())}
            )
            if nxt not in index:
                index[nxt] = len(sets)
                sets.append(nxt)
            row.append(index[nxt])
        trans.append(tuple(row))
        i += 1
    acc = frozenset(i for i, s in enumerate(sets) if final in s)
    raw = _canonical(len(sets), 0, trans, acc)
    return dfa_intersect(raw, dfa_all())
