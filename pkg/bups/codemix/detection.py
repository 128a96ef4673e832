"""
Code-mix detection and transliteration-output validation.

An utterance is code-mixed iff it contains a run of at least two Latin letters;
single letters and digits are left to the normaliser.
"""

from dataclasses import dataclass, field
from typing import Dict, List

import regex

from bups.segmentation import segment

LATIN_WORD = regex.compile(r'\p{Latin}{2,}')
ASCII_DIGIT = regex.compile(r'[0-9]')

CLAUSE_NATIVE_PRESERVED = 'a'
CLAUSE_NO_LATIN_WORDS = 'b'
CLAUSE_DIGITS_PRESERVED = 'c'


def detect_codemix(text: str) -> bool:
    return LATIN_WORD.search(text) is not None


def latin_words(text: str) -> List[str]:
    return LATIN_WORD.findall(text)


def english_token_density(text: str) -> float:
    """
    Share of whitespace-separated tokens that contain a Latin word; 0.0 for
    empty text.
    """
    tokens = text.split()
    if len(tokens) == 0:
        return 0.
    return sum(LATIN_WORD.search(token) is not None for token in tokens) / len(tokens)


@dataclass
class ValidationResult:
    violations: List[Dict[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return len(self.violations) == 0

    @property
    def failed_clauses(self) -> List[str]:
        return [violation['clause'] for violation in self.violations]

    def to_dict(self) -> Dict:
        return dict(ok=self.ok, violations=self.violations)


def _native_spans_preserved(input_text: str, output_text: str) -> List[str]:
    """
    Each native-script span of the input must appear verbatim in the output, in
    order. Returns the spans that could not be found.
    """
    missing = []
    position = 0
    for run in segment(input_text):
        if not run.script.is_brahmic:
            continue
        found_at = output_text.find(run.text, position)
        if found_at < 0:
            missing.append(run.text)
        else:
            position = found_at + len(run.text)
    return missing


def validate_translit(input_text: str, output_text: str) -> ValidationResult:
    """
    Checks the three transliteration clauses:
      (a) native-script text of the input survives verbatim and in order;
      (b) no Latin word of two or more letters remains;
      (c) the ASCII digits are unchanged.
    """
    result = ValidationResult()

    missing_spans = _native_spans_preserved(input_text, output_text)
    if len(missing_spans) > 0:
        result.violations.append(dict(
            clause=CLAUSE_NATIVE_PRESERVED,
            detail=f'native-script spans missing or reordered: {missing_spans}'))

    remaining_latin = latin_words(output_text)
    if len(remaining_latin) > 0:
        result.violations.append(dict(
            clause=CLAUSE_NO_LATIN_WORDS,
            detail=f'Latin words left untransliterated: {remaining_latin}'))

    input_digits = ''.join(ASCII_DIGIT.findall(input_text))
    output_digits = ''.join(ASCII_DIGIT.findall(output_text))
    if input_digits != output_digits:
        result.violations.append(dict(
            clause=CLAUSE_DIGITS_PRESERVED,
            detail=f'digits changed from {input_digits!r} to {output_digits!r}'))

    return result
