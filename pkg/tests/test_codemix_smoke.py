import collections
import json
import os

import pytest

from bups.codemix.cache import TranslitCache
from bups.codemix.detection import english_token_density, latin_words, validate_translit
from bups.codemix.translit import TranslitRequest, transliterate_codemix

from conftest import TESTS_DIR

SMOKE_RECORDS_PATH = os.path.join(os.path.dirname(TESTS_DIR), '02_codemix_smoke', 'records.jsonl')
CATEGORIES = ('tech', 'office', 'food', 'travel', 'money')


def load_smoke_records():
    with open(SMOKE_RECORDS_PATH, encoding='utf-8') as records_file:
        return [json.loads(line) for line in records_file if line.strip()]


SMOKE_RECORDS = load_smoke_records()


@pytest.mark.parametrize('lang', ['hi', 'te', 'ta'])
def test_each_language_has_two_utterances_per_topic(lang):
    counts = collections.Counter(record['category'] for record in SMOKE_RECORDS
                                 if record['lang'] == lang)
    assert counts == {category: 2 for category in CATEGORIES}


def test_record_ids_are_unique():
    ids = [record['id'] for record in SMOKE_RECORDS]
    assert len(set(ids)) == len(ids)


@pytest.mark.parametrize('record', SMOKE_RECORDS, ids=[record['id'] for record in SMOKE_RECORDS])
def test_english_token_density_is_realistic(record):
    assert 0.25 <= english_token_density(record['text']) <= 0.35


@pytest.mark.parametrize('record', SMOKE_RECORDS, ids=[record['id'] for record in SMOKE_RECORDS])
def test_offline_dictionary_covers_smoke_sets(record, offline_provider):
    output = transliterate_codemix(TranslitRequest(record['text'], record['lang']), TranslitCache(),
                                   offline_provider)
    assert latin_words(output) == []
    assert validate_translit(record['text'], output).ok
