import functools
import logging
import os
from dataclasses import dataclass
from typing import Optional

from bups.codemix.cache import TranslitCache, TranslitCacheEntry, cache_key
from bups.codemix.detection import detect_codemix, validate_translit
from bups.codemix.providers.base import TranslitProvider
from bups.errors import CacheCorrupt, ValidationFailed
from bups.languages import LANGUAGE_NAMES, TargetLanguage

TABLES_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'tables')

DEFAULT_PROMPT_VERSION = 'translit_v1'

PROMPT_FILES = {
    'translit_v1': 'translit_prompt_v1.txt',
}


@dataclass(frozen=True)
class TranslitRequest:
    text: str
    lang: str
    provider: str = 'offline'
    prompt_version: str = DEFAULT_PROMPT_VERSION

    def __post_init__(self):
        if len(self.text) == 0:
            raise ValueError('Transliteration request text must be non-empty')
        # Store the plain code so that requests compare and serialise as strings.
        object.__setattr__(self, 'lang', TargetLanguage.parse(self.lang).value)
        if self.prompt_version not in PROMPT_FILES:
            raise ValueError(f'Unknown prompt version: {self.prompt_version}')


@functools.lru_cache(maxsize=None)
def load_system_prompt(version: str,
                       lang: str) -> str:
    if version not in PROMPT_FILES:
        raise ValueError(f'Unknown prompt version: {version}')
    prompt_path = os.path.join(TABLES_DIR, PROMPT_FILES[version])
    with open(prompt_path, encoding='utf-8') as prompt_file:
        template = prompt_file.read()
    return template.format(language_name=LANGUAGE_NAMES[lang]).strip()


def retry_prompt(system_prompt: str,
                 previous_output: str,
                 violations) -> str:
    lines = [system_prompt,
             '',
             'Your previous answer was rejected. It was:',
             previous_output,
             'It broke these rules:']
    lines.extend(f'- rule ({violation["clause"]}): {violation["detail"]}'
                 for violation in violations)
    lines.append('Answer again, following every rule.')
    return '\n'.join(lines)


def _lookup(req: TranslitRequest,
            cache: TranslitCache) -> Optional[TranslitCacheEntry]:
    key = cache_key(req.text)
    try:
        entry = cache.get(key)
    except CacheCorrupt as error:
        if error.key != key:
            raise
        logging.warning(f'{error.message}; evicting and recomputing')
        cache.evict(key)
        return None

    if entry is None:
        return None
    if entry.lang != req.lang or entry.prompt_version != req.prompt_version:
        logging.debug(f'Cache entry {key[:12]} was made for ({entry.lang}, {entry.prompt_version}); '
                      f'treating as a miss')
        return None
    return entry


def transliterate_codemix(req: TranslitRequest,
                          cache: TranslitCache,
                          provider: TranslitProvider) -> str:
    """
    Rewrites the Latin words of a code-mixed utterance into native-script
    spellings. Cached by the SHA-256 of the input; a cache hit makes no
    provider call. A rejected answer is retried once with the broken rules
    appended to the prompt, then ValidationFailed is raised.
    """
    if not detect_codemix(req.text):
        return req.text

    entry = _lookup(req=req, cache=cache)
    if entry is not None:
        return entry.output

    system_prompt = load_system_prompt(version=req.prompt_version, lang=req.lang)
    outputs, all_violations = [], []
    prompt = system_prompt
    for attempt_idx in range(2):
        output = provider.complete(request=req, system_prompt=prompt)
        validation = validate_translit(req.text, output)
        if validation.ok:
            cache.put(TranslitCacheEntry.create(
                input_text=req.text,
                output_text=output,
                provider_id=provider.provider_id,
                prompt_version=req.prompt_version,
                lang=req.lang))
            return output

        outputs.append(output)
        all_violations.append(validation.violations)
        logging.warning(f'Transliteration attempt {attempt_idx + 1} failed clauses '
                        f'{validation.failed_clauses}')
        prompt = retry_prompt(system_prompt=system_prompt,
                              previous_output=output,
                              violations=validation.violations)

    raise ValidationFailed(outputs=outputs, violations=all_violations)
