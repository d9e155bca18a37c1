"""Deliberately naive reference implementations used only by the tests."""


def naive_reduce(word: str, rules) -> str:
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            if lhs in word:
                word = word.replace(lhs, rhs, 1)
                changed = True
    return word


def naive_c(word: str) -> tuple[int, int, int]:
    w = naive_reduce(word, [("aab", "a"), ("abb", "b")])
    k = len(w) - len(w.lstrip("b"))
    rest = w[k:]
    l = 0  # noqa: E741
    while rest.startswith("ab"):
        rest, l = rest[2:], l + 1  # noqa: E741
    assert set(rest) <= {"a"}, w
    return k, l, len(rest)


def naive_b(word: str) -> tuple[int, int]:
    w = naive_reduce(word, [("ab", "")])
    return w.count("b"), w.count("a")


def word_c(k, l, m):  # noqa: E741
    return "b" * k + "ab" * l + "a" * m
