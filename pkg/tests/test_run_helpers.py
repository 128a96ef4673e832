import logging

import httpx
import pytest

from bups.codemix.providers import OfflineDictionaryProvider, RemoteProvider
from bups.helpers.analyze import batch_results_to_df, summarise_batch_results
from bups.helpers.run import build_cache, build_provider, config_defaults, create_logger, load_config, \
    parse_config_lines


@pytest.fixture(autouse=True)
def no_config_env(monkeypatch):
    monkeypatch.delenv('BUPS_CONFIG', raising=False)


def test_defaults():
    assert load_config() == config_defaults


def test_precedence(tmp_path, monkeypatch):
    config_path = tmp_path / 'bups.cfg'
    config_path.write_text('# transliteration\nmax_retries = 5\ntimeout = 12.5\n')
    monkeypatch.setenv('BUPS_CONFIG', str(config_path))

    config = load_config(overrides={'max_retries': 7, 'timeout': None})
    assert config['max_retries'] == 7
    assert config['timeout'] == 12.5
    assert config['provider'] == 'offline'


def test_explicit_path_beats_environment(tmp_path, monkeypatch):
    env_path = tmp_path / 'env.cfg'
    env_path.write_text('jobs = 2\n')
    flag_path = tmp_path / 'flag.cfg'
    flag_path.write_text('jobs = 4\n')
    monkeypatch.setenv('BUPS_CONFIG', str(env_path))
    assert load_config(config_path=str(flag_path))['jobs'] == 4


@pytest.mark.parametrize('lines, message', [
    (['colour = blue'], 'unknown key'),
    (['max_retries = many'], 'is not a int'),
    (['provider'], 'expected key=value'),
])
def test_parse_config_errors(lines, message):
    with pytest.raises(ValueError, match=message):
        parse_config_lines(lines)


def test_unknown_override():
    with pytest.raises(ValueError):
        load_config(overrides={'colour': 'blue'})


def test_create_logger_writes_file(tmp_path):
    log_path = tmp_path / 'bups.log'
    create_logger(log_path=str(log_path), level='debug')
    logging.warning('cache warmed')
    create_logger()

    assert 'cache warmed' in log_path.read_text(encoding='utf-8')
    assert logging.getLogger().level == logging.INFO
    assert sum(handler.get_name() == 'bups' for handler in logging.getLogger().handlers) == 1


def test_build_offline_provider():
    provider = build_provider(load_config())
    assert isinstance(provider, OfflineDictionaryProvider)
    assert provider.provider_id == 'offline:codemix_dictionary.tsv'


def test_build_remote_provider():
    config = load_config(overrides={'provider': 'openai', 'endpoint': 'https://example.test/v1',
                                    'model': 'test-model'})
    provider = build_provider(config, transport=httpx.MockTransport(lambda request: httpx.Response(200)))
    assert isinstance(provider, RemoteProvider)
    assert provider.provider_id == 'openai:test-model'


def test_build_cache(tmp_path):
    assert build_cache(load_config()).path is None
    cache_file = str(tmp_path / 'cache.json')
    assert build_cache(load_config(overrides={'cache_file': cache_file})).path == cache_file


def test_summarise_batch_results():
    results = [
        {'id': 'a', 'plan': {'branch': 'vanilla', 'backend_id': 'chatterbox-vanilla',
                             'provenance': {'detected_language': 'hi'},
                             'warnings': [{'code': 'missing_voice_prompt'}]},
         'elapsed_s': 0.5},
        {'id': 'b', 'error': {'type': 'UnsupportedLanguage'}, 'elapsed_s': 1.5},
    ]
    summary = summarise_batch_results(batch_results_to_df(results))
    assert summary == {
        'num_records': 2,
        'num_errors': 1,
        'by_branch': {'vanilla': 1},
        'by_language': {'hi': 1},
        'by_error_type': {'UnsupportedLanguage': 1},
        'by_warning_code': {'missing_voice_prompt': 1},
        'mean_elapsed_s': 1.0,
    }
