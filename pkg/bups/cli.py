"""
Command-line surface of the frontend.

Example usage:

python -m bups.cli romanise "మా CEO ఈ quarter కి మంచి presentation ఇచ్చారు"
python -m bups.cli plan --lang te --preset b --voice-prompt ref.wav --voice-prompt-duration 9 --voice-prompt-lang te "నేను"
python -m bups.cli batch --input 01_smoke_batch/records.jsonl --output results.jsonl --stable

Exit codes: 0 success, 1 data error (any record in batch mode), 2 usage error,
3 provider unreachable.
"""

import argparse
import contextlib
import dataclasses
import json
import logging
import sys
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, TextIO

import joblib
from tqdm import tqdm

from bups.codemix.cache import utc_now
from bups.codemix.detection import detect_codemix
from bups.codemix.providers.base import TranslitProvider
from bups.codemix.translit import TranslitRequest, transliterate_codemix
from bups.errors import BupsError, InvalidRecord, ProviderUnreachable
from bups.helpers.analyze import batch_results_to_df, load_batch_results, summarise_batch_results
from bups.helpers.audio import read_wav_duration
from bups.helpers.run import build_cache, build_provider, create_logger, load_config
from bups.normalisation import normalise_with_report
from bups.romanisation import bups, romanise_runs
from bups.router import PlanDependencies, VoicePrompt, build_plan, detect_language
from bups.segmentation import segment

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2
EXIT_PROVIDER = 3

PRESET_CHOICES = ['default', 'a', 'b', 'c', 'config_a', 'config_b', 'config_c']

# flag dest -> config key
_CONFIG_FLAGS = {
    'provider': 'provider',
    'endpoint': 'endpoint',
    'model': 'model',
    'api_key_env': 'api_key_env',
    'cache_file': 'cache_file',
    'dict': 'dict_path',
    'timeout': 'timeout',
    'max_retries': 'max_retries',
    'max_tokens': 'max_tokens',
    'prompt_version': 'prompt_version',
    'log_level': 'log_level',
    'jobs': 'jobs',
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class BatchRecord:
    id: str
    text: str
    lang: Optional[str] = None
    voice_prompt_path: Optional[str] = None
    voice_prompt_duration: Optional[float] = None
    voice_prompt_lang: Optional[str] = None

    @classmethod
    def from_json_line(cls, line: str) -> 'BatchRecord':
        try:
            record_dict = json.loads(line)
        except json.JSONDecodeError as error:
            raise InvalidRecord(f'not JSON: {error}')
        if not isinstance(record_dict, dict):
            raise InvalidRecord('not a JSON object')
        unknown_fields = set(record_dict) - set(cls.__dataclass_fields__)
        if unknown_fields:
            raise InvalidRecord(f'unknown fields {sorted(unknown_fields)}')
        if not isinstance(record_dict.get('id'), str) or not record_dict['id']:
            raise InvalidRecord('id must be a non-empty string')
        if not isinstance(record_dict.get('text'), str) or not record_dict['text']:
            raise InvalidRecord('text must be a non-empty string')
        for name in ('lang', 'voice_prompt_path', 'voice_prompt_lang'):
            if record_dict.get(name) is not None and not isinstance(record_dict[name], str):
                raise InvalidRecord(f'{name} must be a string or null')
        duration = record_dict.get('voice_prompt_duration')
        if duration is not None:
            if isinstance(duration, bool) or not isinstance(duration, (int, float)):
                raise InvalidRecord('voice_prompt_duration must be a number')
            if record_dict.get('voice_prompt_path') is None:
                raise InvalidRecord('voice_prompt_duration given without voice_prompt_path')
        return cls(**record_dict)


def _add_common_args(parser: argparse.ArgumentParser):
    parser.add_argument('--config', default=None,
                        help='key=value config file (default: $BUPS_CONFIG)')
    parser.add_argument('--log-level', dest='log_level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--log-file', dest='log_file', default=None)


def _add_provider_args(parser: argparse.ArgumentParser):
    parser.add_argument('--provider', default=None,
                        choices=['offline', 'http', 'anthropic', 'openai'])
    parser.add_argument('--cache-file', dest='cache_file', default=None)
    parser.add_argument('--endpoint', default=None)
    parser.add_argument('--model', default=None)
    parser.add_argument('--dict', default=None,
                        help='offline transliteration dictionary (TSV)')
    parser.add_argument('--api-key-env', dest='api_key_env', default=None,
                        help='environment variable holding the provider credential')
    parser.add_argument('--timeout', type=float, default=None)
    parser.add_argument('--max-retries', dest='max_retries', type=int, default=None)
    parser.add_argument('--max-tokens', dest='max_tokens', type=int, default=None)
    parser.add_argument('--prompt-version', dest='prompt_version', default=None)


def _add_plan_args(parser: argparse.ArgumentParser):
    parser.add_argument('--lang', default=None)
    parser.add_argument('--preset', default='b', choices=PRESET_CHOICES)
    parser.add_argument('--voice-prompt', dest='voice_prompt', default=None)
    parser.add_argument('--voice-prompt-duration', dest='voice_prompt_duration', type=float, default=None)
    parser.add_argument('--voice-prompt-lang', dest='voice_prompt_lang', default=None)
    parser.add_argument('--no-strict', dest='strict', action='store_false',
                        help='allow Chatterbox plans without a voice prompt')
    parser.add_argument('--force-lora', dest='force_lora', action='store_true',
                        help='route bn/gu/kn/ml text down the LoRA branch')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='bups',
                                     description='Indic TTS text frontend.')
    subparsers = parser.add_subparsers(dest='command', required=True)

    segment_parser = subparsers.add_parser('segment', help='print script runs as JSON')
    segment_parser.add_argument('text', nargs='?')

    romanise_parser = subparsers.add_parser('romanise', help='ISO-15919 romanisation')
    romanise_parser.add_argument('text', nargs='?')
    romanise_parser.add_argument('--runs', action='store_true',
                                 help='print per-run outputs as JSON')

    normalise_parser = subparsers.add_parser('normalise', help='spell out numbers, dates, currency')
    normalise_parser.add_argument('text', nargs='?')
    normalise_parser.add_argument('--lang', required=True)
    normalise_parser.add_argument('--report', action='store_true',
                                  help='print text and warnings as JSON')

    detect_parser = subparsers.add_parser('detect', help='print {language, codemix}')
    detect_parser.add_argument('text', nargs='?')

    translit_parser = subparsers.add_parser('translit', help='code-mix transliteration')
    translit_parser.add_argument('text', nargs='?')
    translit_parser.add_argument('--lang', default=None)
    _add_provider_args(translit_parser)

    plan_parser = subparsers.add_parser('plan', help='print a SynthesisPlan')
    plan_parser.add_argument('text', nargs='?')
    _add_plan_args(plan_parser)
    _add_provider_args(plan_parser)

    batch_parser = subparsers.add_parser('batch', help='JSON-lines records in, JSON-lines results out')
    batch_parser.add_argument('--input', default=None, help='default: stdin')
    batch_parser.add_argument('--output', default=None, help='default: stdout')
    batch_parser.add_argument('--jobs', type=int, default=None)
    batch_parser.add_argument('--stable', action='store_true',
                              help='omit processed_at and elapsed_s')
    _add_plan_args(batch_parser)
    _add_provider_args(batch_parser)

    summarise_parser = subparsers.add_parser('summarise', help='summarise a batch output file')
    summarise_parser.add_argument('--input', required=True)

    for subparser in subparsers.choices.values():
        _add_common_args(subparser)

    return parser


def _settings(args: argparse.Namespace) -> Dict:
    overrides = {config_key: getattr(args, flag_dest)
                 for flag_dest, config_key in _CONFIG_FLAGS.items()
                 if hasattr(args, flag_dest)}
    try:
        return load_config(config_path=args.config, overrides=overrides)
    except (OSError, ValueError) as error:
        raise UsageError(str(error))


def _read_text(args: argparse.Namespace, stdin: TextIO) -> str:
    text = args.text if args.text is not None else stdin.read().rstrip('\n')
    if not text:
        raise UsageError('no input text')
    return text


def _print_json(value, stdout: TextIO):
    stdout.write(json.dumps(value, ensure_ascii=False) + '\n')


def _voice_prompt(path: Optional[str],
                  duration: Optional[float],
                  lang: Optional[str]) -> Optional[VoicePrompt]:
    if path is None:
        return None
    if duration is None:
        duration = read_wav_duration(path)
    # An unlabelled prompt is not assumed to match the target language.
    return VoicePrompt(audio_path=path,
                       duration=duration,
                       language=lang if lang is not None else 'other')


def _plan_for_record(record: BatchRecord,
                     args: argparse.Namespace,
                     deps: PlanDependencies) -> Dict:
    voice_prompt = _voice_prompt(path=record.voice_prompt_path,
                                 duration=record.voice_prompt_duration,
                                 lang=record.voice_prompt_lang)
    plan = build_plan(text=record.text,
                      lang=record.lang,
                      voice_prompt=voice_prompt,
                      preset=args.preset,
                      deps=deps,
                      strict=args.strict,
                      force_lora=args.force_lora)
    return plan.to_dict()


def process_batch_line(line: str,
                       args: argparse.Namespace,
                       deps: PlanDependencies,
                       line_idx: int) -> Dict:
    start_time = time.perf_counter()
    record_id = f'line-{line_idx + 1}'
    try:
        record = BatchRecord.from_json_line(line)
        record_id = record.id
        if record.lang is None and args.lang is not None:
            record = dataclasses.replace(record, lang=args.lang)
        result = {'id': record_id, 'plan': _plan_for_record(record=record, args=args, deps=deps)}
    except BupsError as error:
        logging.warning(f'Record {record_id} failed: {error.message}')
        result = {'id': record_id, 'error': error.to_dict()}
    except (ValueError, TypeError) as error:
        # e.g. an unknown language code on the record
        logging.warning(f'Record {record_id} failed: {error}')
        result = {'id': record_id, 'error': {'type': type(error).__name__, 'message': str(error)}}
    if not args.stable:
        result['processed_at'] = utc_now()
        result['elapsed_s'] = round(time.perf_counter() - start_time, 6)
    return result


def run_batch(args: argparse.Namespace,
              settings: Dict,
              stdin: TextIO,
              stdout: TextIO,
              provider: Optional[TranslitProvider] = None) -> int:

    if args.input is None:
        lines = stdin.read().splitlines()
    else:
        with open(args.input, encoding='utf-8') as input_file:
            lines = input_file.read().splitlines()
    lines = [line for line in lines if line.strip()]

    with contextlib.ExitStack() as exit_stack:
        if provider is None:
            provider = exit_stack.enter_context(build_provider(settings))
        deps = PlanDependencies(cache=build_cache(settings),
                                provider=provider,
                                prompt_version=settings['prompt_version'])

        # joblib returns results in input order, whatever the number of jobs.
        results = joblib.Parallel(n_jobs=settings['jobs'], prefer='threads')(
            joblib.delayed(process_batch_line)(line=line, args=args, deps=deps, line_idx=line_idx)
            for line_idx, line in tqdm(enumerate(lines), total=len(lines), file=sys.stderr,
                                       desc='batch', disable=None))

    seen_ids = set()
    for result_idx, result in enumerate(results):
        if 'plan' in result and result['id'] in seen_ids:
            results[result_idx] = {'id': result['id'],
                                   'error': InvalidRecord(f'duplicate id {result["id"]!r}').to_dict()}
        seen_ids.add(result['id'])

    output_lines = [json.dumps(result, ensure_ascii=False) + '\n' for result in results]
    if args.output is None:
        stdout.writelines(output_lines)
    else:
        with open(args.output, 'w', encoding='utf-8', newline='\n') as output_file:
            output_file.writelines(output_lines)

    error_types = [result['error']['type'] for result in results if 'error' in result]
    logging.info(f'Batch finished: {len(results)} records, {len(error_types)} errors, '
                 f'{deps.cache.hits} cache hits, {provider.num_calls} provider calls')
    if ProviderUnreachable.__name__ in error_types:
        return EXIT_PROVIDER
    if len(error_types) > 0:
        return EXIT_DATA_ERROR
    return EXIT_OK


def _run_command(args: argparse.Namespace,
                 settings: Dict,
                 stdin: TextIO,
                 stdout: TextIO) -> int:

    if args.command == 'segment':
        runs = segment(_read_text(args, stdin))
        _print_json([run.to_dict() for run in runs], stdout)

    elif args.command == 'romanise':
        text = _read_text(args, stdin)
        if args.runs:
            runs = segment(text)
            _print_json([dict(run.to_dict(), output=output)
                         for run, output in zip(runs, romanise_runs(runs))], stdout)
        else:
            stdout.write(bups(text) + '\n')

    elif args.command == 'normalise':
        result = normalise_with_report(_read_text(args, stdin), args.lang)
        if args.report:
            _print_json(dict(text=result.text, warnings=result.warnings), stdout)
        else:
            stdout.write(result.text + '\n')

    elif args.command == 'detect':
        text = _read_text(args, stdin)
        _print_json(dict(language=detect_language(text).value,
                         codemix=detect_codemix(text)), stdout)

    elif args.command == 'translit':
        text = _read_text(args, stdin)
        lang = args.lang if args.lang is not None else detect_language(text).value
        with build_provider(settings) as provider:
            request = TranslitRequest(text=text,
                                      lang=lang,
                                      provider=provider.provider_id,
                                      prompt_version=settings['prompt_version'])
            stdout.write(transliterate_codemix(request,
                                               build_cache(settings),
                                               provider) + '\n')

    elif args.command == 'plan':
        text = _read_text(args, stdin)
        with build_provider(settings) as provider:
            deps = PlanDependencies(cache=build_cache(settings),
                                    provider=provider,
                                    prompt_version=settings['prompt_version'])
            plan = build_plan(text=text,
                              lang=args.lang,
                              voice_prompt=_voice_prompt(path=args.voice_prompt,
                                                         duration=args.voice_prompt_duration,
                                                         lang=args.voice_prompt_lang),
                              preset=args.preset,
                              deps=deps,
                              strict=args.strict,
                              force_lora=args.force_lora)
        stdout.write(plan.to_json() + '\n')

    elif args.command == 'batch':
        return run_batch(args=args, settings=settings, stdin=stdin, stdout=stdout)

    elif args.command == 'summarise':
        batch_results_df = batch_results_to_df(load_batch_results(args.input))
        _print_json(summarise_batch_results(batch_results_df), stdout)

    else:
        raise ValueError(f'Unknown command: {args.command}')

    return EXIT_OK


def run_cli(argv: Optional[List[str]] = None,
            stdin: Optional[TextIO] = None,
            stdout: Optional[TextIO] = None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return EXIT_USAGE if exit_request.code else EXIT_OK

    try:
        settings = _settings(args)
        create_logger(log_path=args.log_file, level=settings['log_level'])
        return _run_command(args=args, settings=settings, stdin=stdin, stdout=stdout)
    except UsageError as error:
        sys.stderr.write(f'bups: error: {error}\n')
        return EXIT_USAGE
    except ProviderUnreachable as error:
        logging.error(error.message)
        _print_json({'error': error.to_dict()}, stdout)
        return EXIT_PROVIDER
    except BupsError as error:
        logging.error(error.message)
        _print_json({'error': error.to_dict()}, stdout)
        return EXIT_DATA_ERROR
    except ValueError as error:
        # unknown language codes, preset names and config values
        sys.stderr.write(f'bups: error: {error}\n')
        return EXIT_USAGE
    except OSError as error:
        # missing or unreadable --input, unwritable --output
        logging.error(f'bups: {error}')
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(run_cli())
