import logging
import os
import sys
from typing import Dict, Optional

import httpx

from bups.codemix.cache import TranslitCache
from bups.codemix.providers import OfflineDictionaryProvider, ProviderConfig, RemoteProvider, \
    TranslitProvider

CONFIG_ENV_VAR = 'BUPS_CONFIG'

config_defaults = {
    'provider': 'offline',
    'endpoint': None,
    'model': None,
    'api_key_env': 'BUPS_TRANSLIT_API_KEY',
    'cache_file': None,
    'dict_path': None,
    'timeout': 30.,
    'max_retries': 3,
    'max_tokens': 1024,
    'prompt_version': 'translit_v1',
    'log_level': 'INFO',
    'jobs': 1,
}

# Keys whose default is None are strings when set.
_CONFIG_TYPES = {key: type(value) for key, value in config_defaults.items()
                 if value is not None}

_HANDLER_NAME = 'bups'


def create_logger(log_path: Optional[str] = None,
                  level: str = 'INFO'):

    root_logger = logging.getLogger()
    for handler in list(root_logger.handlers):
        if handler.get_name() == _HANDLER_NAME:
            root_logger.removeHandler(handler)
            handler.close()

    formatter = logging.Formatter('%(asctime)s %(levelname)s %(message)s')

    # stdout is reserved for data
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_path is not None:
        handlers.append(logging.FileHandler(log_path, encoding='utf-8'))
    for handler in handlers:
        handler.set_name(_HANDLER_NAME)
        handler.setFormatter(formatter)
        root_logger.addHandler(handler)
    root_logger.setLevel(level.upper())

    # httpx logs every request at INFO
    logging.getLogger('httpx').setLevel(logging.WARNING)

    logging.debug('Logger created successfully')


def parse_config_lines(lines, source: str = '<config>') -> Dict:
    """
    key=value lines; '#' starts a comment line. Values are coerced to the type
    of the default. Raises ValueError on unknown keys or bad values.
    """
    overrides = dict()
    for line_idx, line in enumerate(lines):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        if '=' not in line:
            raise ValueError(f'{source} line {line_idx + 1}: expected key=value, got {line!r}')
        key, value = (part.strip() for part in line.split('=', 1))
        if key not in config_defaults:
            raise ValueError(f'{source} line {line_idx + 1}: unknown key {key!r}')
        value_type = _CONFIG_TYPES.get(key, str)
        try:
            overrides[key] = value_type(value)
        except ValueError:
            raise ValueError(f'{source} line {line_idx + 1}: {key}={value!r} is not a {value_type.__name__}')
    return overrides


def load_config(config_path: Optional[str] = None,
                overrides: Optional[Dict] = None) -> Dict:
    """
    Precedence: overrides (command-line flags) > config file > config_defaults.
    The config file comes from config_path or the BUPS_CONFIG environment variable.
    """
    config = dict(config_defaults)

    if config_path is None:
        config_path = os.environ.get(CONFIG_ENV_VAR)
    if config_path is not None:
        with open(config_path, encoding='utf-8') as config_file:
            config.update(parse_config_lines(config_file, source=config_path))
        logging.debug(f'Loaded config file {config_path}')

    if overrides is not None:
        for key, value in overrides.items():
            if key not in config_defaults:
                raise ValueError(f'Unknown config key: {key}')
            if value is not None:
                config[key] = value

    return config


def build_provider(config: Dict,
                   transport: Optional[httpx.BaseTransport] = None) -> TranslitProvider:
    provider_config = ProviderConfig(
        kind=config['provider'],
        endpoint=config['endpoint'],
        model=config['model'],
        api_key_env=config['api_key_env'],
        dict_path=config['dict_path'],
        timeout=config['timeout'],
        max_retries=config['max_retries'],
        max_tokens=config['max_tokens'])

    if provider_config.is_remote:
        provider = RemoteProvider(config=provider_config, transport=transport)
    else:
        provider = OfflineDictionaryProvider(config=provider_config)
    logging.info(f'Transliteration provider: {provider.provider_id}')
    return provider


def build_cache(config: Dict) -> TranslitCache:
    return TranslitCache(path=config['cache_file'])
