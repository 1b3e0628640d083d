"""Porter's suffix-stripping stemmer (the original 1980 rule cascade).

Pure-Python, dependency-free implementation.  Only lowercase ASCII words
are meaningful input; callers are expected to filter anything else.
Words of length <= 2 are returned unchanged, as in the reference
implementation.

Within each step the longest matching suffix decides the rule; if that
rule's condition fails, the step leaves the word alone (shorter suffixes
are *not* retried).
"""

_VOWELS = frozenset("aeiou")


def _is_consonant(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return False
    if c == "y":
        # y is a vowel when preceded by a consonant
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Count VC sequences: the m in [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        if _is_consonant(stem, i):
            if prev_vowel:
                m += 1
            prev_vowel = False
        else:
            prev_vowel = True
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_consonant(word, len(word) - 1)
        and _is_consonant(word, len(word) - 2)
    )


def _ends_cvc(word: str) -> bool:
    # the *o condition: ...cvc with the final c not w, x or y
    if len(word) < 3:
        return False
    i = len(word) - 3
    return (
        _is_consonant(word, i)
        and not _is_consonant(word, i + 1)
        and _is_consonant(word, i + 2)
        and word[-1] not in "wxy"
    )


def _apply_rules(word: str, rules) -> str:
    """Apply the first rule whose suffix matches; rules are listed longest
    match first, so first match == longest match."""
    for suffix, condition, replacement in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if condition(stem):
                return stem + replacement
            return word
    return word


def _step_1a(word: str) -> str:
    return _apply_rules(
        word,
        [
            ("sses", lambda s: True, "ss"),
            ("ies", lambda s: True, "i"),
            ("ss", lambda s: True, "ss"),
            ("s", lambda s: True, ""),
        ],
    )


def _step_1b(word: str) -> str:
    if word.endswith("eed"):
        stem = word[:-3]
        return stem + "ee" if _measure(stem) > 0 else word
    removed = False
    if word.endswith("ed"):
        stem = word[:-2]
        if _has_vowel(stem):
            word, removed = stem, True
    elif word.endswith("ing"):
        stem = word[:-3]
        if _has_vowel(stem):
            word, removed = stem, True
    if not removed:
        return word
    # fix-ups after a successful -ed / -ing removal
    if word.endswith(("at", "bl", "iz")):
        return word + "e"
    if _ends_double_consonant(word) and word[-1] not in "lsz":
        return word[:-1]
    if _measure(word) == 1 and _ends_cvc(word):
        return word + "e"
    return word


def _step_1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


_M_GT_0 = lambda s: _measure(s) > 0  # noqa: E731
_M_GT_1 = lambda s: _measure(s) > 1  # noqa: E731

_STEP2_RULES = [
    ("ational", _M_GT_0, "ate"),
    ("tional", _M_GT_0, "tion"),
    ("enci", _M_GT_0, "ence"),
    ("anci", _M_GT_0, "ance"),
    ("izer", _M_GT_0, "ize"),
    ("abli", _M_GT_0, "able"),
    ("alli", _M_GT_0, "al"),
    ("entli", _M_GT_0, "ent"),
    ("eli", _M_GT_0, "e"),
    ("ousli", _M_GT_0, "ous"),
    ("ization", _M_GT_0, "ize"),
    ("ation", _M_GT_0, "ate"),
    ("ator", _M_GT_0, "ate"),
    ("alism", _M_GT_0, "al"),
    ("iveness", _M_GT_0, "ive"),
    ("fulness", _M_GT_0, "ful"),
    ("ousness", _M_GT_0, "ous"),
    ("aliti", _M_GT_0, "al"),
    ("iviti", _M_GT_0, "ive"),
    ("biliti", _M_GT_0, "ble"),
]

_STEP3_RULES = [
    ("icate", _M_GT_0, "ic"),
    ("ative", _M_GT_0, ""),
    ("alize", _M_GT_0, "al"),
    ("iciti", _M_GT_0, "ic"),
    ("ical", _M_GT_0, "ic"),
    ("ful", _M_GT_0, ""),
    ("ness", _M_GT_0, ""),
]

_STEP4_RULES = [
    ("al", _M_GT_1, ""),
    ("ance", _M_GT_1, ""),
    ("ence", _M_GT_1, ""),
    ("er", _M_GT_1, ""),
    ("ic", _M_GT_1, ""),
    ("able", _M_GT_1, ""),
    ("ible", _M_GT_1, ""),
    ("ant", _M_GT_1, ""),
    ("ement", _M_GT_1, ""),
    ("ment", _M_GT_1, ""),
    ("ent", _M_GT_1, ""),
    ("ion", lambda s: _M_GT_1(s) and s.endswith(("s", "t")), ""),
    ("ou", _M_GT_1, ""),
    ("ism", _M_GT_1, ""),
    ("ate", _M_GT_1, ""),
    ("iti", _M_GT_1, ""),
    ("ous", _M_GT_1, ""),
    ("ive", _M_GT_1, ""),
    ("ize", _M_GT_1, ""),
]


def _step_4(word: str) -> str:
    # "ement" / "ment" / "ent" and "ion" overlap; scan longest-first
    # explicitly to keep first-match == longest-match.
    candidates = [r for r in _STEP4_RULES if word.endswith(r[0])]
    if not candidates:
        return word
    suffix, condition, replacement = max(candidates, key=lambda r: len(r[0]))
    stem = word[: len(word) - len(suffix)]
    return stem + replacement if condition(stem) else word


def _step_5a(word: str) -> str:
    if word.endswith("e"):
        stem = word[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            return stem
    return word


def _step_5b(word: str) -> str:
    if _measure(word) > 1 and _ends_double_consonant(word) and word.endswith("l"):
        return word[:-1]
    return word


def stem(word: str) -> str:
    """Stem one lowercase word."""
    if len(word) <= 2:
        return word
    word = _step_1a(word)
    word = _step_1b(word)
    word = _step_1c(word)
    word = _apply_rules(word, _STEP2_RULES)
    word = _apply_rules(word, _STEP3_RULES)
    word = _step_4(word)
    word = _step_5a(word)
    word = _step_5b(word)
    return word
