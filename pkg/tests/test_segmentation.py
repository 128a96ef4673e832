from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from bups.segmentation import BRAHMIC_BLOCKS, ZWJ, ZWNJ, ScriptClass, brahmic_codepoints, \
    classify_char, segment

brahmic_chars = st.one_of(*[st.characters(min_codepoint=first, max_codepoint=last)
                            for first, last in BRAHMIC_BLOCKS.values()])
other_chars = st.one_of(
    st.characters(min_codepoint=ord('A'), max_codepoint=ord('z')),
    st.sampled_from('0123456789 .,;:!?-₹%\'"()\n\t'),
    st.sampled_from([ZWNJ, ZWJ]),
    # Gurmukhi and Oriya fall between the supported blocks
    st.characters(min_codepoint=0x0A00, max_codepoint=0x0A7F),
    st.characters(min_codepoint=0x0B00, max_codepoint=0x0B7F))
mixed_text = st.text(alphabet=st.one_of(brahmic_chars, other_chars), max_size=40)


@pytest.mark.parametrize('char, expected', [
    ('क', ScriptClass.DEVANAGARI),
    ('\u0900', ScriptClass.DEVANAGARI),
    ('\u097f', ScriptClass.DEVANAGARI),
    ('অ', ScriptClass.BENGALI),
    ('અ', ScriptClass.GUJARATI),
    ('த', ScriptClass.TAMIL),
    ('త', ScriptClass.TELUGU),
    ('ಕ', ScriptClass.KANNADA),
    ('മ', ScriptClass.MALAYALAM),
    ('\u0d7f', ScriptClass.MALAYALAM),
    ('\u0d80', ScriptClass.PASS_THROUGH),
    ('ਕ', ScriptClass.PASS_THROUGH),
    ('a', ScriptClass.PASS_THROUGH),
    ('7', ScriptClass.PASS_THROUGH),
    ('।', ScriptClass.DEVANAGARI),
    (ZWNJ, None),
    (ZWJ, None),
])
def test_classify_char(char, expected):
    assert classify_char(char) == expected


def test_segment_code_mixed_sentence():
    runs = segment('మా CEO ఈ')
    assert [(run.text, run.script) for run in runs] == [
        ('మా', ScriptClass.TELUGU),
        (' CEO ', ScriptClass.PASS_THROUGH),
        ('ఈ', ScriptClass.TELUGU),
    ]
    assert [(run.start, run.end) for run in runs] == [(0, 2), (2, 7), (7, 8)]


def test_segment_empty_string():
    assert segment('') == []


def test_segment_joiner_inside_run_stays_in_run():
    runs = segment('क्\u200dष')
    assert len(runs) == 1
    assert runs[0].script == ScriptClass.DEVANAGARI


def test_segment_joiner_between_scripts_joins_preceding_run():
    runs = segment('क\u200da')
    assert [(run.text, run.script) for run in runs] == [
        ('क\u200d', ScriptClass.DEVANAGARI),
        ('a', ScriptClass.PASS_THROUGH),
    ]


def test_segment_leading_joiner_joins_following_run():
    runs = segment('\u200cక')
    assert [(run.text, run.script) for run in runs] == [('\u200cక', ScriptClass.TELUGU)]


def test_segment_joiners_only():
    runs = segment(ZWNJ + ZWJ)
    assert [(run.text, run.script) for run in runs] == [(ZWNJ + ZWJ, ScriptClass.PASS_THROUGH)]


def test_adjacent_brahmic_scripts_split():
    runs = segment('नमస్తే')
    assert [run.script for run in runs] == [ScriptClass.DEVANAGARI, ScriptClass.TELUGU]


def test_run_to_dict():
    run = segment('ab')[0]
    assert run.to_dict() == {'text': 'ab', 'script': 'PassThrough', 'start': 0, 'end': 2}


def test_brahmic_codepoints():
    assert brahmic_codepoints('मैंने WhatsApp 42 పే') == 'मैंनेపే'
    assert brahmic_codepoints('hello\u200d') == ''


@settings(max_examples=10_000, deadline=None)
@given(mixed_text)
def test_segment_is_lossless_partition(text):
    runs = segment(text)
    assert ''.join(run.text for run in runs) == text
    for previous_run, next_run in zip(runs, runs[1:]):
        assert previous_run.script != next_run.script
        assert previous_run.end == next_run.start
    if runs:
        assert runs[0].start == 0
        assert runs[-1].end == len(text)
    for run in runs:
        assert text[run.start:run.end] == run.text
