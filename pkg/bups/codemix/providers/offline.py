"""
Dictionary-backed transliteration provider: every Latin word found in the
dictionary for the request's language is replaced by its native spelling;
unknown words are left as they are, which validation then reports.
"""

import collections
import logging
import os
import unicodedata
from typing import Dict

from bups.codemix.detection import LATIN_WORD
from bups.codemix.providers.base import ProviderConfig, TranslitProvider

DEFAULT_DICT_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
    'tables',
    'codemix_dictionary.tsv')


def load_dictionary(dict_path: str) -> Dict[str, Dict[str, str]]:
    """
    TSV lines "<lang><TAB><latin word><TAB><native spelling>", '#' comments.
    Words are matched case-insensitively.
    """
    dictionary = collections.defaultdict(dict)
    with open(dict_path, encoding='utf-8') as dict_file:
        for line_idx, line in enumerate(dict_file):
            line = line.rstrip('\n')
            if not line.strip() or line.startswith('#'):
                continue
            fields = line.split('\t')
            if len(fields) != 3:
                raise ValueError(f'{dict_path} line {line_idx + 1}: expected 3 fields, got {len(fields)}')
            lang, word, native = fields
            dictionary[lang][word.lower()] = unicodedata.normalize('NFC', native)
    return dict(dictionary)


class OfflineDictionaryProvider(TranslitProvider):

    def __init__(self, config: ProviderConfig = None):
        if config is None:
            config = ProviderConfig(kind='offline')
        assert config.kind == 'offline'
        super().__init__(config=config)
        self.dict_path = config.dict_path or DEFAULT_DICT_PATH
        self.dictionary = load_dictionary(self.dict_path)
        logging.debug(f'Loaded offline transliteration dictionary {self.dict_path}')

    @property
    def provider_id(self) -> str:
        return f'offline:{os.path.basename(self.dict_path)}'

    def _complete(self,
                  request,
                  system_prompt: str) -> str:
        words = self.dictionary.get(request.lang, dict())

        def replace(match) -> str:
            return words.get(match.group(0).lower(), match.group(0))

        return LATIN_WORD.sub(replace, request.text)
