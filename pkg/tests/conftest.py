import os
import unicodedata
from typing import List

import pytest

from bups.codemix.providers.base import ProviderConfig, TranslitProvider
from bups.codemix.providers.offline import OfflineDictionaryProvider

TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.path.join(TESTS_DIR, 'data')

HINDI_CODEMIX = 'मैंने WhatsApp पे message किया but notification नहीं आया'
HINDI_CODEMIX_NATIVE = 'मैंने व्हाट्सऐप पे मैसेज किया बट नोटिफ़िकेशन नहीं आया'
TELUGU_CODEMIX = 'మా CEO ఈ quarter కి మంచి presentation ఇచ్చారు'


def nfc(text: str) -> str:
    return unicodedata.normalize('NFC', text)


class ScriptedProvider(TranslitProvider):
    """Returns the given outputs in turn and records every system prompt."""

    def __init__(self, outputs: List[str]):
        super().__init__(config=ProviderConfig(kind='offline'))
        self.outputs = list(outputs)
        self.system_prompts = []

    @property
    def provider_id(self) -> str:
        return 'scripted:test'

    def _complete(self, request, system_prompt: str) -> str:
        self.system_prompts.append(system_prompt)
        return self.outputs[min(len(self.system_prompts), len(self.outputs)) - 1]


class UnreachableProvider(TranslitProvider):

    def __init__(self):
        super().__init__(config=ProviderConfig(kind='offline'))

    @property
    def provider_id(self) -> str:
        return 'unreachable:test'

    def _complete(self, request, system_prompt: str) -> str:
        from bups.errors import ProviderUnreachable
        raise ProviderUnreachable(self.provider_id, 4, 'ConnectError()')


@pytest.fixture
def offline_provider() -> OfflineDictionaryProvider:
    return OfflineDictionaryProvider()


@pytest.fixture
def cache_path(tmp_path) -> str:
    return str(tmp_path / 'translit_cache.json')
