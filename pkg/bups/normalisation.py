"""
Indic number / date / currency normaliser.

Expands dates, currency, percentages, decimals, integers (ASCII or native-script
digits) and standalone Latin letters into native-script words for te, ta and hi.
Latin words of two or more letters are never touched, so code-mix detection
gives the same answer before and after normalisation.
"""

import functools
import logging
import os
import unicodedata
from dataclasses import dataclass, field
from typing import Dict, List, Union

import regex

from bups.errors import OutOfRange
from bups.languages import TargetLanguage

TABLES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'tables')

MAX_CARDINAL = 999_999_999

# (group value, slot name), largest first; Indian grouping.
GROUPS = [
    (10_000_000, 'crore'),
    (100_000, 'lakh'),
    (1_000, 'thousand'),
    (100, 'hundred'),
]

REQUIRED_SLOTS = (
    [str(n) for n in range(100)]
    + [slot for _, slot in GROUPS]
    + [f'month_{month}' for month in range(1, 13)]
    + ['rupee_singular', 'rupee_plural', 'paisa', 'percent', 'point']
    + [f'letter_{chr(letter)}' for letter in range(ord('a'), ord('z') + 1)]
)
OPTIONAL_SLOTS = [f'{slot}_one' for _, slot in GROUPS]


@dataclass(frozen=True)
class SpelloutTable:
    language: str
    slots: Dict[str, str]

    def cardinal_word(self, n: int) -> str:
        return self.slots[str(n)]

    def group_word(self, group: str, multiplier: int) -> str:
        if multiplier == 1 and f'{group}_one' in self.slots:
            return self.slots[f'{group}_one']
        return f'{self.cardinal_word(multiplier)} {self.slots[group]}'

    def month(self, month: int) -> str:
        return self.slots[f'month_{month}']

    def letter(self, letter: str) -> str:
        return self.slots[f'letter_{letter.lower()}']


def parse_spellout_table(lines, language: str) -> SpelloutTable:
    slots = dict()
    for line_idx, line in enumerate(lines):
        line = line.rstrip('\n')
        if not line.strip() or line.startswith('#'):
            continue
        fields = line.split('\t')
        if len(fields) != 2:
            raise ValueError(f'{language} spell-out line {line_idx + 1}: expected 2 fields, got {len(fields)}')
        slot, value = fields
        if slot not in REQUIRED_SLOTS and slot not in OPTIONAL_SLOTS:
            raise ValueError(f'{language} spell-out line {line_idx + 1}: unknown slot {slot!r}')
        slots[slot] = unicodedata.normalize('NFC', value)

    missing_slots = [slot for slot in REQUIRED_SLOTS if slot not in slots]
    if len(missing_slots) > 0:
        raise ValueError(f'{language} spell-out table missing slots: {missing_slots}')
    return SpelloutTable(language=language, slots=slots)


@functools.lru_cache(maxsize=None)
def load_spellout_table(lang: str) -> SpelloutTable:
    lang = TargetLanguage.parse(lang).value
    table_path = os.path.join(TABLES_DIR, f'spellout_{lang}.tsv')
    with open(table_path, encoding='utf-8') as table_file:
        return parse_spellout_table(table_file, language=lang)


def _check_range(name: str, value: int, lower: int, upper: int):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f'{name} must be an integer, got {value!r}')
    if not lower <= value <= upper:
        raise OutOfRange(name, value, lower, upper)


def spell_cardinal(n: int,
                   lang: Union[str, TargetLanguage]) -> str:
    """
    Native-script cardinal with Indian grouping, e.g. (100000, hi) -> "एक लाख".
    """
    _check_range('n', n, 0, MAX_CARDINAL)
    table = load_spellout_table(lang)
    if n < 100:
        return table.cardinal_word(n)

    words = []
    remainder = n
    for group_value, group in GROUPS:
        multiplier, remainder = divmod(remainder, group_value)
        if multiplier > 0:
            words.append(table.group_word(group, multiplier))
    if remainder > 0:
        words.append(table.cardinal_word(remainder))
    return ' '.join(words)


def spell_year(year: int,
               lang: Union[str, TargetLanguage]) -> str:
    """
    1100-1999 are read in hundreds ("उन्नीस सौ पचास"); other years as cardinals.
    """
    _check_range('year', year, 0, MAX_CARDINAL)
    if 1100 <= year <= 1999:
        table = load_spellout_table(lang)
        hundreds, remainder = divmod(year, 100)
        words = [table.cardinal_word(hundreds), table.slots['hundred']]
        if remainder > 0:
            words.append(table.cardinal_word(remainder))
        return ' '.join(words)
    return spell_cardinal(year, lang)


def spell_date(day: int,
               month: int,
               year: int,
               lang: Union[str, TargetLanguage]) -> str:
    _check_range('day', day, 1, 31)
    _check_range('month', month, 1, 12)
    table = load_spellout_table(lang)
    return ' '.join([spell_cardinal(day, lang),
                     table.month(month),
                     spell_year(year, lang)])


def spell_digits(digits: str,
                 lang: Union[str, TargetLanguage]) -> str:
    table = load_spellout_table(lang)
    return ' '.join(table.cardinal_word(int(digit)) for digit in digits)


def spell_decimal(integer_part: int,
                  fraction_digits: str,
                  lang: Union[str, TargetLanguage]) -> str:
    table = load_spellout_table(lang)
    return ' '.join([spell_cardinal(integer_part, lang),
                     table.slots['point'],
                     spell_digits(fraction_digits, lang)])


def spell_currency(rupees: int,
                   paise: int,
                   lang: Union[str, TargetLanguage]) -> str:
    _check_range('paise', paise, 0, 99)
    table = load_spellout_table(lang)
    rupee_word = table.slots['rupee_singular'] if rupees == 1 else table.slots['rupee_plural']
    words = [spell_cardinal(rupees, lang), rupee_word]
    if paise > 0:
        words.extend([spell_cardinal(paise, lang), table.slots['paisa']])
    return ' '.join(words)


# Western (1,000,000), Indian (10,00,000) or ungrouped digit strings. \d is
# Unicode-aware, so native-script digits match too.
_NUMBER = r'(?:\d{1,3}(?:,\d{3})+|\d{1,3}(?:,\d{2})+,\d{3}|\d+)(?!\d)'

_DATE = r'(?P<date>(?P<day>\d{1,2})(?P<sep>[/-])(?P<month>\d{1,2})(?P=sep)(?P<year>\d{4}))(?!\d)'
_CURRENCY = (r'(?P<currency>(?:₹|(?<!\p{L})Rs\.?)\s?(?P<rupees>' + _NUMBER + r')'
             r'(?:\.(?P<currency_frac>\d+))?)')
_PERCENT = (r'(?P<percent>(?P<percent_int>' + _NUMBER + r')'
            r'(?:\.(?P<percent_frac>\d+))?\s?%)')
_DECIMAL = r'(?P<decimal>(?P<decimal_int>' + _NUMBER + r')\.(?P<decimal_frac>\d+))'
_INTEGER = r'(?P<integer>' + _NUMBER + r')'
_LETTER = r"(?P<letter>(?<![\p{Latin}'’])[A-Za-z](?![\p{Latin}'’]))"

# Alternatives in precedence order; the regex engine takes the first that
# matches at each position, which gives longest-match-first here.
_NUMERIC = r'(?<!\d)(?:' + '|'.join([_DATE, _CURRENCY, _PERCENT, _DECIMAL, _INTEGER]) + r')'
PATTERN = regex.compile(_NUMERIC + '|' + _LETTER)
_WORD_CHAR = regex.compile(r'\w')
PATTERN_WITHOUT_DATES = regex.compile(
    r'(?<!\d)(?:' + '|'.join([_CURRENCY, _PERCENT, _DECIMAL, _INTEGER]) + r')|' + _LETTER)


@dataclass
class NormalisationResult:
    text: str
    warnings: List[Dict] = field(default_factory=list)


def _parse_number(number_str: str) -> int:
    return int(number_str.replace(',', ''))


class _Expander:

    def __init__(self, lang: str):
        self.lang = lang
        self.table = load_spellout_table(lang)
        self.warnings = []
        # end of the last expansion that already got a trailing space
        self._padded_until = -1

    def _out_of_range(self, match_text: str, value: int) -> str:
        logging.warning(f'Number {value} outside [0, {MAX_CARDINAL}]; left unchanged')
        self.warnings.append(dict(code='number_out_of_range',
                                  message=f'{match_text!r} is outside the spell-out range',
                                  details=dict(text=match_text, value=value, upper=MAX_CARDINAL)))
        return match_text

    def expand(self, match) -> str:
        match_text = match.group(0)
        kind = match.lastgroup

        if kind == 'date':
            day, month = int(match.group('day')), int(match.group('month'))
            if 1 <= day <= 31 and 1 <= month <= 12:
                return spell_date(day, month, int(match.group('year')), self.lang)
            # Not a date: expand the three numbers on their own.
            return PATTERN_WITHOUT_DATES.sub(self.expand, match_text)

        if kind == 'currency':
            rupees = _parse_number(match.group('rupees'))
            if rupees > MAX_CARDINAL:
                return self._out_of_range(match_text, rupees)
            fraction = match.group('currency_frac')
            if fraction is not None and len(fraction) > 2:
                # More precision than paise: read the amount as a decimal.
                return f"{spell_decimal(rupees, fraction, self.lang)} {self.table.slots['rupee_plural']}"
            paise = 0 if fraction is None else int(fraction.ljust(2, '0'))
            return spell_currency(rupees, paise, self.lang)

        if kind == 'percent':
            value = _parse_number(match.group('percent_int'))
            if value > MAX_CARDINAL:
                return self._out_of_range(match_text, value)
            fraction = match.group('percent_frac')
            if fraction is None:
                words = spell_cardinal(value, self.lang)
            else:
                words = spell_decimal(value, fraction, self.lang)
            return f"{words} {self.table.slots['percent']}"

        if kind == 'decimal':
            value = _parse_number(match.group('decimal_int'))
            if value > MAX_CARDINAL:
                return self._out_of_range(match_text, value)
            return spell_decimal(value, match.group('decimal_frac'), self.lang)

        if kind == 'integer':
            value = _parse_number(match_text)
            if value > MAX_CARDINAL:
                return self._out_of_range(match_text, value)
            return spell_cardinal(value, self.lang)

        if kind == 'letter':
            return self.table.letter(match_text)

        raise ValueError(f'Unknown match kind: {kind}')

    def __call__(self, match) -> str:
        """
        Expansion separated by a space from any letter or digit it touches,
        so "A1" reads as two words. Two touching expansions share one space.
        """
        expansion = self.expand(match)
        if expansion == match.group(0):
            return expansion
        text = match.string
        if match.start() > 0 and match.start() != self._padded_until \
                and _WORD_CHAR.match(text, match.start() - 1):
            expansion = ' ' + expansion
        if match.end() < len(text) and _WORD_CHAR.match(text, match.end()):
            expansion = expansion + ' '
            self._padded_until = match.end()
        return expansion


def normalise_with_report(text: str,
                          lang: Union[str, TargetLanguage]) -> NormalisationResult:
    lang = TargetLanguage.parse(lang).value
    expander = _Expander(lang)
    normalised_text = PATTERN.sub(expander, text)
    return NormalisationResult(text=normalised_text, warnings=expander.warnings)


def normalise(text: str,
              lang: Union[str, TargetLanguage]) -> str:
    """
    Example: ("₹50 दो", "hi") -> "पचास रुपये दो"
    """
    return normalise_with_report(text, lang).text
