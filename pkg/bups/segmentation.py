"""
Script-run segmentation: classify each codepoint by Unicode block and split text
into maximal single-class spans.
"""

import enum
import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple


class ScriptClass(enum.Enum):
    DEVANAGARI = 'Devanagari'
    BENGALI = 'Bengali'
    GUJARATI = 'Gujarati'
    TAMIL = 'Tamil'
    TELUGU = 'Telugu'
    KANNADA = 'Kannada'
    MALAYALAM = 'Malayalam'
    PASS_THROUGH = 'PassThrough'

    @property
    def is_brahmic(self) -> bool:
        return self is not ScriptClass.PASS_THROUGH


# Inclusive codepoint ranges.
BRAHMIC_BLOCKS: Dict[ScriptClass, Tuple[int, int]] = {
    ScriptClass.DEVANAGARI: (0x0900, 0x097F),
    ScriptClass.BENGALI: (0x0980, 0x09FF),
    ScriptClass.GUJARATI: (0x0A80, 0x0AFF),
    ScriptClass.TAMIL: (0x0B80, 0x0BFF),
    ScriptClass.TELUGU: (0x0C00, 0x0C7F),
    ScriptClass.KANNADA: (0x0C80, 0x0CFF),
    ScriptClass.MALAYALAM: (0x0D00, 0x0D7F),
}

ZWNJ = '\u200c'
ZWJ = '\u200d'
JOINERS = frozenset({ZWNJ, ZWJ})


@dataclass(frozen=True)
class ScriptRun:
    text: str
    script: ScriptClass
    start: int
    end: int

    def __post_init__(self):
        assert self.end > self.start
        assert len(self.text) == self.end - self.start

    def to_dict(self) -> Dict:
        return dict(text=self.text,
                    script=self.script.value,
                    start=self.start,
                    end=self.end)


def classify_char(c: str) -> Optional[ScriptClass]:
    """
    Returns the Brahmic class whose block contains c, PASS_THROUGH otherwise.

    ZWNJ/ZWJ return None, meaning "inherit the class of the surrounding text".
    """
    if c in JOINERS:
        return None
    codepoint = ord(c)
    # Blocks are contiguous from Devanagari to Malayalam, so a cheap bound
    # check rules out almost all non-Indic text.
    if codepoint < 0x0900 or codepoint > 0x0D7F:
        return ScriptClass.PASS_THROUGH
    for script, (first, last) in BRAHMIC_BLOCKS.items():
        if first <= codepoint <= last:
            return script
    # Gurmukhi and Oriya sit between the listed blocks.
    return ScriptClass.PASS_THROUGH


def _resolve_joiners(classes: List[Optional[ScriptClass]]) -> List[ScriptClass]:
    resolved = list(classes)
    idx = 0
    while idx < len(resolved):
        if resolved[idx] is not None:
            idx += 1
            continue

        # Find the maximal stretch of joiners [idx, stop).
        stop = idx
        while stop < len(resolved) and resolved[stop] is None:
            stop += 1

        left = resolved[idx - 1] if idx > 0 else None
        right = resolved[stop] if stop < len(resolved) else None
        if left is not None:
            # Same class on both sides, or no agreement: either way the joiner
            # joins the preceding run.
            inherited = left
        elif right is not None:
            inherited = right
        else:
            inherited = ScriptClass.PASS_THROUGH

        for joiner_idx in range(idx, stop):
            resolved[joiner_idx] = inherited
        idx = stop

    return resolved


def segment(text: str) -> List[ScriptRun]:
    """
    Partition text into maximal single-class runs. Concatenating the run texts
    reproduces the input exactly; adjacent runs never share a class.
    """
    classes = _resolve_joiners([classify_char(c) for c in text])

    runs = []
    start = 0
    for script, group in itertools.groupby(classes):
        length = sum(1 for _ in group)
        end = start + length
        runs.append(ScriptRun(text=text[start:end],
                              script=script,
                              start=start,
                              end=end))
        start = end
    return runs


def brahmic_codepoints(text: str) -> str:
    """The Brahmic-class codepoints of text, in order."""
    return ''.join(c for c in text
                   if (classify_char(c) or ScriptClass.PASS_THROUGH).is_brahmic)
