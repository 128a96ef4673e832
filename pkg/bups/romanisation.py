"""
ISO-15919 romanisation of Brahmic runs, and BUPS reassembly of mixed-script text:
Brahmic runs are transliterated, everything else passes through verbatim.
"""

import functools
import os
import unicodedata
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from bups.errors import NonBrahmicRun, UnmappedCodepoint
from bups.segmentation import BRAHMIC_BLOCKS, JOINERS, ScriptClass, ScriptRun, segment

TABLES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'tables')

CONSONANT = 'C'
VOWEL_SIGN = 'V'
VIRAMA = 'H'
DIGIT = 'D'
DROP = 'X'
OTHER = '-'
FLAGS = frozenset({CONSONANT, VOWEL_SIGN, VIRAMA, DIGIT, DROP, OTHER})

INHERENT_VOWEL = 'a'


@dataclass(frozen=True)
class TableEntry:
    output: str
    flag: str


@dataclass(frozen=True)
class TransliterationTable:
    script: ScriptClass
    entries: Dict[Tuple[int, ...], TableEntry]

    def lookup(self, codepoints: Tuple[int, ...]) -> TableEntry:
        return self.entries.get(codepoints)

    @property
    def single_codepoints(self) -> FrozenSet[int]:
        return frozenset(key[0] for key in self.entries if len(key) == 1)


def parse_table(lines: Iterable[str],
                script: ScriptClass) -> TransliterationTable:
    """
    Parse the auditable table format: one entry per line,
    "<hex codepoint>[ <hex codepoint>]<TAB><latin><TAB><flag>", '#' comments.
    """
    assert script.is_brahmic
    first, last = BRAHMIC_BLOCKS[script]

    entries = dict()
    for line_idx, line in enumerate(lines):
        line = line.rstrip('\n')
        if not line.strip() or line.startswith('#'):
            continue
        fields = line.split('\t')
        if len(fields) != 3:
            raise ValueError(f'{script.value} table line {line_idx + 1}: expected 3 fields, got {len(fields)}')
        codepoints_str, output, flag = fields
        if flag not in FLAGS:
            raise ValueError(f'{script.value} table line {line_idx + 1}: unknown flag {flag!r}')
        key = tuple(int(codepoint_str, 16) for codepoint_str in codepoints_str.split())
        # Pair entries start inside the block; the second codepoint is a
        # combining mark of the same block.
        assert all(first <= codepoint <= last for codepoint in key), line
        if key in entries:
            raise ValueError(f'{script.value} table line {line_idx + 1}: duplicate entry {codepoints_str}')
        entries[key] = TableEntry(output=unicodedata.normalize('NFC', output),
                                  flag=flag)

    return TransliterationTable(script=script, entries=entries)


@functools.lru_cache(maxsize=None)
def load_table(script: ScriptClass) -> TransliterationTable:
    if not script.is_brahmic:
        raise NonBrahmicRun(script.value)
    table_path = os.path.join(TABLES_DIR, f'translit_{script.value.lower()}.tsv')
    with open(table_path, encoding='utf-8') as table_file:
        return parse_table(table_file, script=script)


def supported_scripts() -> FrozenSet[ScriptClass]:
    return frozenset(BRAHMIC_BLOCKS)


def _transliterate_brahmic(text: str,
                           table: TransliterationTable) -> str:
    codepoints = [ord(c) for c in unicodedata.normalize('NFC', text)
                  if c not in JOINERS]

    pieces = []
    # True while a consonant's inherent vowel is still unresolved.
    pending_inherent = False
    idx = 0
    while idx < len(codepoints):
        entry = None
        if idx + 1 < len(codepoints):
            entry = table.lookup((codepoints[idx], codepoints[idx + 1]))
        if entry is not None:
            step = 2
        else:
            entry = table.lookup((codepoints[idx],))
            step = 1
        if entry is None:
            raise UnmappedCodepoint(codepoints[idx], table.script.value)

        if entry.flag == CONSONANT:
            if pending_inherent:
                pieces.append(INHERENT_VOWEL)
            pieces.append(entry.output)
            pending_inherent = True
        elif entry.flag in (VOWEL_SIGN, VIRAMA):
            # A sign with no consonant before it is written out as-is.
            pieces.append(entry.output)
            pending_inherent = False
        elif entry.flag == DROP:
            pass
        else:
            if pending_inherent:
                pieces.append(INHERENT_VOWEL)
            pieces.append(entry.output)
            pending_inherent = False

        idx += step

    if pending_inherent:
        pieces.append(INHERENT_VOWEL)

    return unicodedata.normalize('NFC', ''.join(pieces))


def transliterate_run(run: ScriptRun) -> str:
    """
    Strict orthographic ISO-15919: every consonant carries its inherent "a"
    unless a vowel sign or virama follows; no schwa deletion.
    """
    if not run.script.is_brahmic:
        raise NonBrahmicRun(run.script.value)
    return _transliterate_brahmic(run.text, load_table(run.script))


def romanise_runs(runs: List[ScriptRun]) -> List[str]:
    return [transliterate_run(run) if run.script.is_brahmic else run.text
            for run in runs]


def bups(text: str) -> str:
    """
    Brahmic runs go to Latin; Latin, digits, punctuation and anything else
    pass through unchanged.

    Example: "మా CEO" -> "mā CEO"
    """
    return ''.join(romanise_runs(segment(text)))
