"""
HTTPS transliteration provider. One POST per attempt; the request and response
shapes are adapted per provider kind:

  http       {model, system, user, temperature, max_tokens} -> {"text": ...}
  anthropic  messages API                                    -> content[0].text
  openai     chat completions                                -> choices[0].message.content
"""

import logging
import os
import time
from typing import Dict, Optional, Tuple

import httpx

from bups.codemix.providers.base import TEMPERATURE, ProviderConfig, TranslitProvider
from bups.errors import ProviderUnreachable

ANTHROPIC_VERSION = '2023-06-01'

# Status codes worth another attempt.
RETRYABLE_STATUS_CODES = frozenset({408, 429, 500, 502, 503, 504})


def build_request(config: ProviderConfig,
                  system_prompt: str,
                  user_text: str,
                  api_key: Optional[str]) -> Tuple[Dict[str, str], Dict]:
    headers = {'content-type': 'application/json'}

    if config.kind == 'http':
        if api_key:
            headers['authorization'] = f'Bearer {api_key}'
        body = dict(model=config.model,
                    system=system_prompt,
                    user=user_text,
                    temperature=TEMPERATURE,
                    max_tokens=config.max_tokens)
    elif config.kind == 'anthropic':
        if api_key:
            headers['x-api-key'] = api_key
        headers['anthropic-version'] = ANTHROPIC_VERSION
        body = dict(model=config.model,
                    system=system_prompt,
                    messages=[dict(role='user', content=user_text)],
                    temperature=TEMPERATURE,
                    max_tokens=config.max_tokens)
    elif config.kind == 'openai':
        if api_key:
            headers['authorization'] = f'Bearer {api_key}'
        body = dict(model=config.model,
                    messages=[dict(role='system', content=system_prompt),
                              dict(role='user', content=user_text)],
                    temperature=TEMPERATURE,
                    max_tokens=config.max_tokens)
    else:
        raise ValueError(f'Unknown remote provider kind: {config.kind}')

    return headers, body


def parse_response(config: ProviderConfig,
                   response_json: Dict) -> str:
    if config.kind == 'http':
        text = response_json['text']
    elif config.kind == 'anthropic':
        text = response_json['content'][0]['text']
    elif config.kind == 'openai':
        text = response_json['choices'][0]['message']['content']
    else:
        raise ValueError(f'Unknown remote provider kind: {config.kind}')
    if not isinstance(text, str):
        raise TypeError(f'completion is {type(text).__name__}, not str')
    return text.strip()


class RemoteProvider(TranslitProvider):

    def __init__(self,
                 config: ProviderConfig,
                 transport: Optional[httpx.BaseTransport] = None):
        assert config.is_remote
        super().__init__(config=config)
        self.num_attempts = 0
        self._client = httpx.Client(timeout=config.timeout, transport=transport)
        if not os.environ.get(config.api_key_env):
            logging.warning(f'{config.api_key_env} is not set; requests go out without a credential')

    @property
    def provider_id(self) -> str:
        return f'{self.config.kind}:{self.config.model}'

    def close(self):
        self._client.close()

    def _complete(self,
                  request,
                  system_prompt: str) -> str:
        headers, body = build_request(
            config=self.config,
            system_prompt=system_prompt,
            user_text=request.text,
            api_key=os.environ.get(self.config.api_key_env))

        max_attempts = self.config.max_retries + 1
        last_error = None
        for attempt_idx in range(max_attempts):
            self.num_attempts += 1
            try:
                response = self._client.post(self.config.endpoint, headers=headers, json=body)
                if response.status_code in RETRYABLE_STATUS_CODES:
                    last_error = f'HTTP {response.status_code}'
                else:
                    response.raise_for_status()
                    return parse_response(self.config, response.json())
            except httpx.HTTPStatusError as error:
                # Client errors will not improve on retry.
                raise ProviderUnreachable(self.provider_id, attempt_idx + 1,
                                          f'HTTP {error.response.status_code}')
            except httpx.TransportError as error:
                last_error = repr(error)
            except (KeyError, IndexError, TypeError, ValueError) as error:
                raise ProviderUnreachable(self.provider_id, attempt_idx + 1,
                                          f'malformed response: {error!r}')

            if attempt_idx + 1 < max_attempts:
                delay = self.config.retry_base_delay * (2 ** attempt_idx)
                logging.warning(f'{self.provider_id} attempt {attempt_idx + 1}/{max_attempts} '
                                f'failed ({last_error}); retrying in {delay:.1f}s')
                time.sleep(delay)

        raise ProviderUnreachable(self.provider_id, max_attempts, last_error)
