"""Free words over {a, b} and the two length-reducing rewriting systems.

Words are plain ``str`` objects over the alphabet ``"ab"``.  The C-system
{aab -> a, abb -> b} presents the Rédei semigroup; the B-system {ab -> ""}
presents the bicyclic monoid.  Both are terminating (every rule shortens the
word) and confluent, which :func:`critical_pairs_check` verifies directly.

The product in :func:`oracle_mul_c` goes through concatenation and rewriting
only, so it is independent of the closed-form multiplication in
:mod:`csgk.algebra` and serves as its ground truth.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Literal

from .elements import BicyclicNF, CanonC
from .errors import ConfluenceFailure, EmptyWord, InvalidCharacter, ShapeViolation, WordTooLong

ALPHABET = "ab"
A, B = "a", "b"
DEFAULT_MAX_LENGTH = 10**6

Strategy = Literal["stack", "leftmost", "rightmost"]

_NORMAL_C = re.compile(r"(b*)((?:ab)*)(a*)")
_WS = re.compile(r"\s+")


@dataclass(frozen=True)
class RewriteSystem:
    name: str
    rules: tuple[tuple[str, str], ...]
    _max_lhs: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for lhs, rhs in self.rules:
            if not lhs or len(rhs) >= len(lhs):
                raise ValueError(f"rule {lhs!r} -> {rhs!r} is not length-reducing")
            if set(lhs + rhs) - set(ALPHABET):
                raise ValueError(f"rule {lhs!r} -> {rhs!r} leaves the alphabet")
        object.__setattr__(self, "_max_lhs", max(len(lhs) for lhs, _ in self.rules))


C_SYSTEM = RewriteSystem("C", (("aab", "a"), ("abb", "b")))
B_SYSTEM = RewriteSystem("B", (("ab", ""),))


def parse_word(text: str, *, max_length: int = DEFAULT_MAX_LENGTH) -> str:
    word = _WS.sub("", text)
    bad = set(word) - set(ALPHABET)
    if bad:
        raise InvalidCharacter(f"invalid character(s) {''.join(sorted(bad))!r} in word")
    if len(word) > max_length:
        raise WordTooLong(f"word of length {len(word)} exceeds cap {max_length}")
    return word


def _reduce_stack(word: str, system: RewriteSystem) -> str:
    # The stack is always irreducible, so any new redex is a suffix of it.
    out: list[str] = []
    rules = system.rules
    width = system._max_lhs
    for letter in word:
        out.append(letter)
        changed = True
        while changed:
            changed = False
            tail = "".join(out[-width:])
            for lhs, rhs in rules:
                if tail.endswith(lhs):
                    del out[len(out) - len(lhs):]
                    out.extend(rhs)
                    changed = True
                    break
    return "".join(out)


def _find_redex(word: str, system: RewriteSystem, rightmost: bool) -> tuple[int, str, str] | None:
    best: tuple[int, str, str] | None = None
    for lhs, rhs in system.rules:
        pos = word.rfind(lhs) if rightmost else word.find(lhs)
        if pos < 0:
            continue
        if best is None or (pos > best[0] if rightmost else pos < best[0]):
            best = (pos, lhs, rhs)
    return best


def rewrite(word: str, system: RewriteSystem, strategy: Strategy = "stack") -> str:
    """Rewrite ``word`` to an irreducible word under ``system``.

    ``stack`` is the linear-time engine used everywhere else (it always
    contracts the redex whose right end comes first).  ``leftmost`` and
    ``rightmost`` rescan the whole word after each step and exist so that
    strategy independence can be tested rather than assumed.
    """
    if strategy == "stack":
        return _reduce_stack(word, system)
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rightmost = strategy == "rightmost"
    while True:
        hit = _find_redex(word, system, rightmost)
        if hit is None:
            return word
        pos, lhs, rhs = hit
        word = word[:pos] + rhs + word[pos + len(lhs):]


def rewrite_trace(word: str, system: RewriteSystem, strategy: Strategy = "leftmost") -> list[str]:
    """Every intermediate word of a leftmost or rightmost reduction, start and end included."""
    rightmost = strategy == "rightmost"
    trace = [word]
    while (hit := _find_redex(word, system, rightmost)) is not None:
        pos, lhs, rhs = hit
        word = word[:pos] + rhs + word[pos + len(lhs):]
        trace.append(word)
    return trace


def is_irreducible(word: str, system: RewriteSystem = C_SYSTEM) -> bool:
    return all(lhs not in word for lhs, _ in system.rules)


def reduce_c(word: str, strategy: Strategy = "stack") -> str:
    if not word:
        raise EmptyWord("the Rédei semigroup has no identity; empty word rejected")
    return rewrite(word, C_SYSTEM, strategy)


def match_normal_c(word: str) -> CanonC:
    """Read (k, l, m) off an irreducible word b^k (ab)^l a^m."""
    hit = _NORMAL_C.fullmatch(word)
    if hit is None or not word:
        raise ShapeViolation(f"irreducible word {word!r} is not of the form b^k(ab)^l a^m")
    bs, abs_, as_ = hit.groups()
    return CanonC(len(bs), len(abs_) // 2, len(as_))


def to_normal_c(word: str) -> CanonC:
    return match_normal_c(reduce_c(word))


def from_normal_c(x: CanonC) -> str:
    return B * x.k + "ab" * x.l + A * x.m


def to_normal_b(word: str) -> BicyclicNF:
    reduced = rewrite(word, B_SYSTEM)
    # ab -> 1 leaves no 'a' before any 'b'
    i = reduced.count(B)
    if reduced != B * i + A * (len(reduced) - i):
        raise ShapeViolation(f"irreducible bicyclic word {reduced!r} is not b^i a^j")
    return BicyclicNF(i, len(reduced) - i)


def from_normal_b(x: BicyclicNF) -> str:
    return B * x.i + A * x.j


def oracle_mul_c(x: CanonC, y: CanonC) -> CanonC:
    return to_normal_c(from_normal_c(x) + from_normal_c(y))


def oracle_mul_b(x: BicyclicNF, y: BicyclicNF) -> BicyclicNF:
    return to_normal_b(from_normal_b(x) + from_normal_b(y))


@dataclass(frozen=True)
class Superposition:
    word: str
    left_rule: tuple[str, str]
    right_rule: tuple[str, str]
    via_left: str
    via_right: str

    @property
    def joins(self) -> bool:
        return self.via_left == self.via_right


@dataclass
class ConfluenceReport:
    system: str
    superpositions: list[Superposition]

    @property
    def ok(self) -> bool:
        return all(s.joins for s in self.superpositions)

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "ok": self.ok,
            "superpositions": [
                {
                    "word": s.word,
                    "rules": [list(s.left_rule), list(s.right_rule)],
                    "reducts": [s.via_left, s.via_right],
                    "joins": s.joins,
                }
                for s in self.superpositions
            ],
        }


def _overlaps(system: RewriteSystem):
    rules = system.rules
    for r1 in rules:
        l1, rhs1 = r1
        for r2 in rules:
            l2, rhs2 = r2
            # suffix of l1 equal to a proper prefix of l2
            for t in range(1, min(len(l1), len(l2))):
                if l1[-t:] == l2[:t]:
                    word = l1 + l2[t:]
                    yield word, r1, r2, rhs1 + l2[t:], l1[:-t] + rhs2
            # l2 strictly inside l1
            if r1 != r2 and len(l2) < len(l1):
                start = l1.find(l2)
                while start >= 0:
                    yield l1, r1, r2, rhs1, l1[:start] + rhs2 + l1[start + len(l2):]
                    start = l1.find(l2, start + 1)


def critical_pairs_check(system: RewriteSystem = C_SYSTEM, *, raise_on_failure: bool = True) -> ConfluenceReport:
    """Enumerate every superposition of left-hand sides and test joinability."""
    found = []
    for word, r1, r2, one, two in _overlaps(system):
        s = Superposition(word, r1, r2, rewrite(one, system), rewrite(two, system))
        found.append(s)
        if raise_on_failure and not s.joins:
            raise ConfluenceFailure(
                f"{system.name}-system: {word!r} reduces to both {s.via_left!r} and {s.via_right!r}",
                witness=word,
            )
    return ConfluenceReport(system.name, found)
