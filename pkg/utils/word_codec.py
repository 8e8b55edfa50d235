"""
Word strings for chains of Ch(Q).

A word lists the letters of a chain with multiplicities, top-most letter
first, e.g. "2*l1+1*0" for the chain 1*0 + 2*l1 of Q_r. The trivial chain is
written as the top label "V".
"""

import re
from typing import List, Tuple

from exceptions import InputDomainError

_TERM = re.compile(r'^\s*(?:(\d+)\s*\*\s*)?([A-Za-z0-9_{},()]+)\s*$')


def format_word(poset, word: List[Tuple[int, int]]) -> str:
    """
    Render a word given in increasing letter order.

    Examples:
        >>> format_word(build_blowup_poset(2, 3), [(0, 1), (1, 2)])
        '2*l1+1*0'
    """
    if not word:
        return poset.label(poset.top)
    return "+".join(f"{m}*{poset.label(q)}" for q, m in reversed(word))


def parse_word(poset, text: str) -> List[Tuple[int, int]]:
    """
    Parse a word string into (element index, multiplicity) letters.

    Letters may appear in any order; a bare label means multiplicity 1.
    Returns the letters in increasing order of the poset's linear extension.
    """
    if text is None:
        raise InputDomainError("empty word")
    text = text.strip()
    if text == "" or text == poset.label(poset.top):
        return []
    letters = {}
    for term in text.split("+"):
        match = _TERM.match(term)
        if not match:
            raise InputDomainError(f"cannot parse word term {term!r}")
        multiplicity = int(match.group(1)) if match.group(1) else 1
        q = poset.index(match.group(2))
        if q == poset.top:
            raise InputDomainError("the top element cannot appear as a letter")
        if multiplicity < 1:
            raise InputDomainError(f"multiplicity must be positive in {term!r}")
        letters[q] = letters.get(q, 0) + multiplicity
    order = {q: k for k, q in enumerate(poset.linear_extension)}
    return sorted(letters.items(), key=lambda item: order[item[0]])
