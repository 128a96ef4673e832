import abc
import threading
from dataclasses import dataclass
from typing import Optional

# Transliteration must be reproducible, so temperature is not a knob.
TEMPERATURE = 0

PROVIDER_KINDS = ('offline', 'http', 'anthropic', 'openai')


@dataclass(frozen=True)
class ProviderConfig:
    kind: str = 'offline'
    endpoint: Optional[str] = None
    model: Optional[str] = None
    api_key_env: str = 'BUPS_TRANSLIT_API_KEY'
    dict_path: Optional[str] = None
    timeout: float = 30.0
    max_retries: int = 3
    max_tokens: int = 1024
    retry_base_delay: float = 1.0

    def __post_init__(self):
        if self.kind not in PROVIDER_KINDS:
            raise ValueError(f'Unknown provider kind: {self.kind} (expected one of {PROVIDER_KINDS})')
        if self.kind != 'offline':
            if not self.endpoint:
                raise ValueError(f'Provider kind {self.kind} needs an endpoint')
            if not self.model:
                raise ValueError(f'Provider kind {self.kind} needs a model')
        assert self.timeout > 0.
        assert 0 <= self.max_retries <= 10
        assert self.max_tokens > 0

    @property
    def is_remote(self) -> bool:
        return self.kind != 'offline'


class TranslitProvider(abc.ABC):

    def __init__(self, config: ProviderConfig):
        self.config = config
        self.num_calls = 0
        self._num_calls_lock = threading.Lock()

    @property
    @abc.abstractmethod
    def provider_id(self) -> str:
        pass

    @abc.abstractmethod
    def _complete(self,
                  request,
                  system_prompt: str) -> str:
        pass

    def complete(self,
                 request,
                 system_prompt: str) -> str:
        """
        One logical provider call: request.text as the user turn, system_prompt
        as the instructions, temperature 0.
        """
        with self._num_calls_lock:
            self.num_calls += 1
        return self._complete(request=request, system_prompt=system_prompt)

    def close(self):
        pass

    def __enter__(self) -> 'TranslitProvider':
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.close()
