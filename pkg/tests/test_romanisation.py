import os
import random
import unicodedata

from hypothesis import given, settings
from hypothesis import strategies as st
from indic_transliteration import sanscript
import pytest

from bups.errors import NonBrahmicRun, UnmappedCodepoint
from bups.romanisation import load_table, parse_table, romanise_runs, supported_scripts, \
    transliterate_run, bups
from bups.segmentation import BRAHMIC_BLOCKS, ZWJ, ZWNJ, ScriptClass, ScriptRun, brahmic_codepoints, \
    segment

from conftest import DATA_DIR, TELUGU_CODEMIX, nfc


def load_golden(script: ScriptClass):
    golden_path = os.path.join(DATA_DIR, f'golden_{script.value.lower()}.tsv')
    with open(golden_path, encoding='utf-8') as golden_file:
        rows = [line.rstrip('\n').split('\t') for line in golden_file
                if line.strip() and not line.startswith('#')]
    return [(script, word, expected) for word, expected in rows]


GOLDEN_CASES = [case for script in sorted(BRAHMIC_BLOCKS, key=lambda s: s.value)
                for case in load_golden(script)]


def run_of(text: str, script: ScriptClass) -> ScriptRun:
    return ScriptRun(text=text, script=script, start=0, end=len(text))


def test_worked_example():
    # Strict ISO keeps the geminate of ఇచ్చారు as "cc"; a looser reading
    # would give "icchāru".
    assert bups(TELUGU_CODEMIX) == nfc('mā CEO ī quarter ki maṁci presentation iccāru')


@pytest.mark.parametrize('script, word, expected', GOLDEN_CASES,
                         ids=[f'{case[0].value}-{case[2]}' for case in GOLDEN_CASES])
def test_golden_words(script, word, expected):
    runs = segment(word)
    assert len(runs) == 1
    assert runs[0].script == script
    assert transliterate_run(runs[0]) == nfc(expected)


def test_every_script_has_golden_words():
    assert {case[0] for case in GOLDEN_CASES} == set(BRAHMIC_BLOCKS)


# Block offsets where all seven scripts that assign the letter read it the same
# way, and where Devanagari ISO output from sanscript is unambiguous.
ORACLE_CONSONANTS = [*range(0x15, 0x29), *range(0x2a, 0x31), 0x32, *range(0x35, 0x3a)]
ORACLE_VOWEL_SIGNS = [0x3e, 0x3f, 0x40, 0x41, 0x42, 0x48, 0x4c]
ORACLE_INITIAL_VOWELS = [*range(0x05, 0x0b), 0x10, 0x14]
VIRAMA_OFFSET = 0x4d
HA_OFFSET = 0x39
ORACLE_WORDS_PER_SCRIPT = 250


def _assigned_offsets(script: ScriptClass, offsets):
    first, _ = BRAHMIC_BLOCKS[script]
    return [offset for offset in offsets
            if unicodedata.name(chr(first + offset), None) is not None
            and unicodedata.normalize('NFC', chr(first + offset)) == chr(first + offset)]


def oracle_words(script: ScriptClass):
    """Random block-offset words, rendered in `script` and in Devanagari."""
    consonants = _assigned_offsets(script, ORACLE_CONSONANTS)
    vowel_signs = _assigned_offsets(script, ORACLE_VOWEL_SIGNS)
    initial_vowels = _assigned_offsets(script, ORACLE_INITIAL_VOWELS)
    rng = random.Random(f'golden-{script.value}')

    words = []
    for _ in range(ORACLE_WORDS_PER_SCRIPT):
        offsets = []
        if rng.random() < 0.25:
            offsets.append(rng.choice(initial_vowels))
        for _ in range(rng.randint(1, 3)):
            offsets.append(rng.choice(consonants))
            if rng.random() < 0.3:
                offsets.extend([VIRAMA_OFFSET,
                                rng.choice([c for c in consonants if c != HA_OFFSET])])
            if rng.random() < 0.6:
                offsets.append(rng.choice(vowel_signs))
        if rng.random() < 0.15:
            offsets.append(VIRAMA_OFFSET)
        first, _ = BRAHMIC_BLOCKS[script]
        words.append((''.join(chr(first + offset) for offset in offsets),
                      ''.join(chr(0x0900 + offset) for offset in offsets)))
    return words


@pytest.mark.parametrize('script', sorted(BRAHMIC_BLOCKS, key=lambda s: s.value),
                         ids=lambda script: script.value)
def test_generated_words_match_sanscript(script):
    words = oracle_words(script)
    assert len({word for word, _ in words}) >= 200

    mismatches = []
    for word, devanagari_word in words:
        expected = nfc(sanscript.transliterate(devanagari_word, sanscript.DEVANAGARI, sanscript.ISO))
        runs = segment(word)
        actual = transliterate_run(runs[0]) if len(runs) == 1 else None
        if actual != expected:
            mismatches.append((word, expected, actual))
    assert mismatches == []


@pytest.mark.parametrize('text, script, expected', [
    ('\u09f3', ScriptClass.BENGALI, '₹'),
    ('\u0af1', ScriptClass.GUJARATI, '₹'),
    ('\u0bf9', ScriptClass.TAMIL, '₹'),
    ('\u0972', ScriptClass.DEVANAGARI, 'ê'),
    ('\u0979', ScriptClass.DEVANAGARI, 'ža'),
    ('\u097a', ScriptClass.DEVANAGARI, 'ẏa'),
    ('\u097b', ScriptClass.DEVANAGARI, 'g̤a'),
    ('\u097c', ScriptClass.DEVANAGARI, 'j̤a'),
    ('\u097d', ScriptClass.DEVANAGARI, 'ʔ'),
    ('\u097e', ScriptClass.DEVANAGARI, 'ḍ̤a'),
    ('\u097f', ScriptClass.DEVANAGARI, 'b̤a'),
    ('\u0c58', ScriptClass.TELUGU, 'ĉa'),
    ('\u0c59', ScriptClass.TELUGU, 'ẑa'),
    ('\u0c5a', ScriptClass.TELUGU, 'ṟ̱a'),
    ('\u0d15\u0d4e\u0d2e\u0d4d\u0d2e\u0d02', ScriptClass.MALAYALAM, 'karmmaṁ'),
])
def test_rarer_codepoints_are_mapped(text, script, expected):
    assert transliterate_run(run_of(text, script)) == nfc(expected)


@pytest.mark.parametrize('text, expected', [
    ('क', 'ka'),
    ('क्', 'k'),
    ('कि', 'ki'),
    ('अ', 'a'),
    ('कं', 'kaṁ'),
    ('कः', 'kaḥ'),
    ('कँ', 'kam̐'),
    ('ए', 'ē'),
    ('ओ', 'ō'),
    ('ा', 'ā'),
])
def test_inherent_vowel_and_signs(text, expected):
    assert transliterate_run(run_of(text, ScriptClass.DEVANAGARI)) == nfc(expected)


def test_nukta_decomposed_and_precomposed_agree():
    precomposed = transliterate_run(run_of('\u095b', ScriptClass.DEVANAGARI))
    decomposed = transliterate_run(run_of('\u091c\u093c', ScriptClass.DEVANAGARI))
    assert precomposed == decomposed == 'za'


def test_decomposed_vowel_sign_is_composed_first():
    # ె + ౖ is the canonical decomposition of ై
    assert transliterate_run(run_of('\u0c15\u0c46\u0c56', ScriptClass.TELUGU)) == 'kai'


def test_joiners_inside_run_produce_nothing():
    assert transliterate_run(run_of('क्\u200dष', ScriptClass.DEVANAGARI)) == 'kṣa'
    assert transliterate_run(run_of('ന്\u200c', ScriptClass.MALAYALAM)) == 'n'


def test_malayalam_chillu_closes_syllable():
    assert transliterate_run(run_of('അവൻ', ScriptClass.MALAYALAM)) == 'avan'


def test_native_digits():
    assert bups('౨౦౨౪') == '2024'


def test_pass_through_is_verbatim():
    text = 'Hello, World! 42 ₹ ਕ é'
    assert bups(text) == text


def test_output_is_nfc():
    output = bups('संस्कृत चाँद')
    assert unicodedata.is_normalized('NFC', output)


def test_transliterate_pass_through_run_raises():
    with pytest.raises(NonBrahmicRun):
        transliterate_run(run_of('abc', ScriptClass.PASS_THROUGH))


def test_unmapped_codepoint_raises():
    # U+0984 is unassigned in the Bengali block
    with pytest.raises(UnmappedCodepoint) as error_info:
        transliterate_run(run_of('\u0984', ScriptClass.BENGALI))
    assert error_info.value.codepoint == 0x0984
    assert error_info.value.to_dict()['codepoint'] == 'U+0984'


def test_romanise_runs():
    runs = segment('మా CEO')
    assert romanise_runs(runs) == ['mā', ' CEO']


def test_all_seven_tables_load():
    assert supported_scripts() == frozenset(BRAHMIC_BLOCKS)
    for script in supported_scripts():
        table = load_table(script)
        first, last = BRAHMIC_BLOCKS[script]
        assert all(first <= codepoint <= last for codepoint in table.single_codepoints)


def test_load_table_pass_through_raises():
    with pytest.raises(NonBrahmicRun):
        load_table(ScriptClass.PASS_THROUGH)


@pytest.mark.parametrize('lines, message', [
    (['0915\tk'], 'expected 3 fields'),
    (['0915\tk\tZ'], 'unknown flag'),
    (['0915\tk\tC', '0915\tk\tC'], 'duplicate entry'),
])
def test_parse_table_rejects_malformed_lines(lines, message):
    with pytest.raises(ValueError, match=message):
        parse_table(lines, ScriptClass.DEVANAGARI)


def test_parse_table_rejects_codepoints_outside_block():
    with pytest.raises(AssertionError):
        parse_table(['0C15\tk\tC'], ScriptClass.DEVANAGARI)


table_chars = st.sampled_from(sorted(
    chr(codepoint)
    for script in BRAHMIC_BLOCKS
    for codepoint in load_table(script).single_codepoints))
romanisable_text = st.text(
    alphabet=st.one_of(table_chars,
                       st.characters(min_codepoint=ord('A'), max_codepoint=ord('z')),
                       st.sampled_from('0123456789 .,!?-'),
                       st.sampled_from([ZWNJ, ZWJ])),
    max_size=40)


@settings(max_examples=10_000, deadline=None)
@given(romanisable_text)
def test_bups_output_has_no_brahmic_codepoints(text):
    assert brahmic_codepoints(bups(text)) == ''


@settings(max_examples=500, deadline=None)
@given(romanisable_text)
def test_pass_through_runs_survive_verbatim(text):
    runs = segment(text)
    outputs = romanise_runs(runs)
    for run, output in zip(runs, outputs):
        if not run.script.is_brahmic:
            assert output == run.text


@settings(max_examples=2_000, deadline=None)
@given(romanisable_text)
def test_bups_is_idempotent(text):
    once = bups(text)
    assert bups(once) == once
