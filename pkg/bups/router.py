"""
Routes an utterance to one of three synthesis branches and emits the
backend-agnostic SynthesisPlan:

  LoraBups  te/ta pure script  -> normalise -> bups -> chatterbox-lora, language_id "hi"
  Vanilla   hi pure script     -> normalise         -> chatterbox-vanilla, language_id "hi"
  CodeMix   any code-mixed     -> normalise -> LM transliteration -> indicf5
"""

import collections
import dataclasses
import enum
import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Union

from bups.codemix.cache import TranslitCache
from bups.codemix.detection import detect_codemix
from bups.codemix.providers.base import TranslitProvider
from bups.codemix.providers.offline import OfflineDictionaryProvider
from bups.codemix.translit import DEFAULT_PROMPT_VERSION, TranslitRequest, transliterate_codemix
from bups.errors import DurationOutOfRange, InvalidSamplingConfig, InvalidVoicePrompt, \
    MissingVoicePrompt, NoBrahmicContent, UnsupportedLanguage
from bups.languages import LANGUAGE_NAMES, SCRIPT_LANGUAGE, TargetLanguage
from bups.normalisation import NormalisationResult, normalise_with_report
from bups.romanisation import bups
from bups.segmentation import ScriptClass, brahmic_codepoints, classify_char

PIPELINE_VERSION = 'bups-frontend-1.0'
PLAN_VERSION = 'plan_v1'

# The LoRA and vanilla backends only know Hindi; Telugu and Tamil ride on its tag.
HINDI_PROXY_LANGUAGE_ID = 'hi'

VOICE_PROMPT_MIN_DURATION = 8.
VOICE_PROMPT_MAX_DURATION = 20.
VOICE_PROMPT_RECOMMENDED_DURATION = (8., 11.)

# Languages BUPS can romanise but no deployment branch has been validated for.
FORCEABLE_LANGUAGES = ('bn', 'gu', 'kn', 'ml')


class Branch(str, enum.Enum):
    LORA_BUPS = 'lora_bups'
    VANILLA = 'vanilla'
    CODE_MIX = 'code_mix'

    @property
    def backend_id(self) -> str:
        return BACKENDS[self]

    @property
    def uses_chatterbox(self) -> bool:
        return self is not Branch.CODE_MIX


BACKENDS = {
    Branch.LORA_BUPS: 'chatterbox-lora',
    Branch.VANILLA: 'chatterbox-vanilla',
    Branch.CODE_MIX: 'indicf5',
}


PRESET_NAMES = ('default', 'config_a', 'config_b', 'config_c', 'custom')
PRESET_ALIASES = {
    'default': 'default',
    'a': 'config_a',
    'b': 'config_b',
    'c': 'config_c',
}


@dataclass(frozen=True)
class SamplingConfig:
    exaggeration: float
    temperature: float
    min_p: float
    cfg_weight: Optional[float] = None
    repetition_penalty: Optional[float] = None
    preset_name: str = 'custom'

    def __post_init__(self):
        if self.preset_name not in PRESET_NAMES:
            raise InvalidSamplingConfig(f'unknown preset name {self.preset_name!r}')
        for name in ('exaggeration', 'temperature', 'min_p', 'cfg_weight', 'repetition_penalty'):
            value = getattr(self, name)
            if value is None:
                if name in ('exaggeration', 'temperature', 'min_p'):
                    raise InvalidSamplingConfig(f'{name} is required')
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InvalidSamplingConfig(f'{name}={value!r} is not a real number')
            if not 0. <= value <= 2.:
                raise InvalidSamplingConfig(f'{name}={value} outside [0, 2]')
        if self.temperature <= 0.:
            raise InvalidSamplingConfig('temperature must be positive')

    @classmethod
    def custom(cls,
               exaggeration: float,
               temperature: float,
               min_p: float,
               cfg_weight: Optional[float] = None,
               repetition_penalty: Optional[float] = None) -> 'SamplingConfig':
        return cls(exaggeration=exaggeration,
                   temperature=temperature,
                   min_p=min_p,
                   cfg_weight=cfg_weight,
                   repetition_penalty=repetition_penalty,
                   preset_name='custom')

    def to_dict(self) -> Dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, sampling_dict: Dict) -> 'SamplingConfig':
        return cls(**sampling_dict)


_BASE_SAMPLING = dict(exaggeration=0.5, temperature=0.8, min_p=0.05)

PRESETS: Dict[str, SamplingConfig] = {
    'default': SamplingConfig(**_BASE_SAMPLING,
                              preset_name='default'),
    'config_a': SamplingConfig(**{**_BASE_SAMPLING, 'min_p': 0.03},
                               repetition_penalty=1.2,
                               preset_name='config_a'),
    'config_b': SamplingConfig(exaggeration=0.7, temperature=0.6, min_p=0.1,
                               preset_name='config_b'),
    'config_c': SamplingConfig(**{**_BASE_SAMPLING, 'temperature': 0.6},
                               cfg_weight=0.7,
                               preset_name='config_c'),
}

PRESET_DESCRIPTIONS = {
    'default': 'base sampling',
    'config_a': 'preserve endings',
    'config_b': 'stress + stability',
    'config_c': 'tight CFG',
}

DEFAULT_PRESET = 'config_b'


def sampling_preset(name: str) -> SamplingConfig:
    preset_name = PRESET_ALIASES.get(name, name)
    if preset_name not in PRESETS:
        raise ValueError(f'Unknown preset: {name} (expected one of default, a, b, c)')
    return PRESETS[preset_name]


@dataclass(frozen=True)
class VoicePrompt:
    audio_path: str
    duration: float
    language: str

    def __post_init__(self):
        if not self.audio_path:
            raise InvalidVoicePrompt('audio path is empty')
        if not 0. < self.duration < 600.:
            raise InvalidVoicePrompt(f'duration {self.duration}s outside (0, 600)')
        if self.language != 'other' and self.language not in LANGUAGE_NAMES:
            raise InvalidVoicePrompt(f'unknown language {self.language!r}')

    def to_dict(self) -> Dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, voice_prompt_dict: Dict) -> 'VoicePrompt':
        return cls(**voice_prompt_dict)


@dataclass(frozen=True)
class PlanWarning:
    code: str
    message: str
    details: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return dict(code=self.code, message=self.message, details=dict(self.details))

    @classmethod
    def from_dict(cls, warning_dict: Dict) -> 'PlanWarning':
        return cls(code=warning_dict['code'],
                   message=warning_dict['message'],
                   details=dict(warning_dict.get('details', dict())))


@dataclass(frozen=True)
class Provenance:
    source_text: str
    detected_language: str
    pipeline_version: str = PIPELINE_VERSION

    def to_dict(self) -> Dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class SynthesisPlan:
    branch: Branch
    backend_id: str
    processed_text: str
    language_id: Optional[str]
    sampling: Optional[SamplingConfig]
    voice_prompt: Optional[VoicePrompt]
    warnings: List[PlanWarning]
    provenance: Provenance

    def __post_init__(self):
        assert self.backend_id == self.branch.backend_id
        if self.branch is Branch.CODE_MIX:
            assert self.language_id is None
            assert self.sampling is None
        else:
            assert self.language_id == HINDI_PROXY_LANGUAGE_ID
            assert self.sampling is not None
        if self.branch is Branch.LORA_BUPS:
            assert brahmic_codepoints(self.processed_text) == ''

    def to_dict(self) -> Dict:
        return {
            'version': PLAN_VERSION,
            'branch': self.branch.value,
            'backend_id': self.backend_id,
            'processed_text': self.processed_text,
            'language_id': self.language_id,
            'sampling': None if self.sampling is None else self.sampling.to_dict(),
            'voice_prompt': None if self.voice_prompt is None else self.voice_prompt.to_dict(),
            'warnings': [warning.to_dict() for warning in self.warnings],
            'provenance': self.provenance.to_dict(),
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent)

    @classmethod
    def from_dict(cls, plan_dict: Dict) -> 'SynthesisPlan':
        if plan_dict.get('version') != PLAN_VERSION:
            raise ValueError(f'Unsupported plan version: {plan_dict.get("version")!r}')
        sampling_dict = plan_dict['sampling']
        voice_prompt_dict = plan_dict['voice_prompt']
        return cls(
            branch=Branch(plan_dict['branch']),
            backend_id=plan_dict['backend_id'],
            processed_text=plan_dict['processed_text'],
            language_id=plan_dict['language_id'],
            sampling=None if sampling_dict is None else SamplingConfig.from_dict(sampling_dict),
            voice_prompt=None if voice_prompt_dict is None else VoicePrompt.from_dict(voice_prompt_dict),
            warnings=[PlanWarning.from_dict(warning_dict) for warning_dict in plan_dict['warnings']],
            provenance=Provenance(**plan_dict['provenance']))

    @classmethod
    def from_json(cls, plan_json: str) -> 'SynthesisPlan':
        return cls.from_dict(json.loads(plan_json))


@dataclass
class PlanDependencies:
    """
    The preprocessing steps build_plan calls. Swappable so that tests can count
    calls or inject a failing provider.
    """
    normalise: Callable[[str, str], NormalisationResult] = normalise_with_report
    romanise: Callable[[str], str] = bups
    transliterate: Callable = transliterate_codemix
    cache: TranslitCache = field(default_factory=TranslitCache)
    provider: TranslitProvider = field(default_factory=OfflineDictionaryProvider)
    prompt_version: str = DEFAULT_PROMPT_VERSION


def majority_script(text: str) -> ScriptClass:
    """
    Most frequent Brahmic script among the text's codepoints; ties go to the
    script that occurs first.
    """
    counts = collections.Counter(classify_char(c) for c in brahmic_codepoints(text))
    if len(counts) == 0:
        raise NoBrahmicContent()
    # Counter keeps first-occurrence order and max() returns the first maximum.
    return max(counts, key=counts.get)


def detect_language(text: str) -> TargetLanguage:
    script = majority_script(text)
    lang = SCRIPT_LANGUAGE[script]
    if lang not in {target.value for target in TargetLanguage}:
        raise UnsupportedLanguage(script.value)
    return TargetLanguage(lang)


def route(text: str,
          lang: Union[str, TargetLanguage]) -> Branch:
    lang = TargetLanguage.parse(lang)
    if detect_codemix(text):
        return Branch.CODE_MIX
    if lang in (TargetLanguage.TE, TargetLanguage.TA):
        return Branch.LORA_BUPS
    return Branch.VANILLA


def validate_voice_prompt(voice_prompt: VoicePrompt,
                          lang: str) -> List[PlanWarning]:
    """
    Raises DurationOutOfRange outside [8, 20] s. Returns warnings for a prompt in
    another language or outside the recommended 8-11 s.
    """
    if not VOICE_PROMPT_MIN_DURATION <= voice_prompt.duration <= VOICE_PROMPT_MAX_DURATION:
        raise DurationOutOfRange(duration=voice_prompt.duration,
                                 lower=VOICE_PROMPT_MIN_DURATION,
                                 upper=VOICE_PROMPT_MAX_DURATION)

    lang = lang.value if isinstance(lang, TargetLanguage) else lang
    warnings = []
    if voice_prompt.language != lang:
        warnings.append(PlanWarning(
            code='cross_language_voice_prompt',
            message=f'Voice prompt is {voice_prompt.language}, target is {lang}',
            details=dict(voice_prompt_language=voice_prompt.language, target_language=lang)))

    lower, upper = VOICE_PROMPT_RECOMMENDED_DURATION
    if not lower <= voice_prompt.duration <= upper:
        warnings.append(PlanWarning(
            code='voice_prompt_outside_recommended_duration',
            message=f'Voice prompt of {voice_prompt.duration}s is outside the recommended {lower:g}-{upper:g} s',
            details=dict(duration=voice_prompt.duration, lower=lower, upper=upper)))
    return warnings


def _resolve_language(text: str,
                      lang: Optional[Union[str, TargetLanguage]],
                      force_lora: bool) -> str:
    if lang is None:
        script = majority_script(text)
        lang = SCRIPT_LANGUAGE[script]
        if lang in FORCEABLE_LANGUAGES and not force_lora:
            raise UnsupportedLanguage(script.value)
        return lang

    lang = lang.value if isinstance(lang, TargetLanguage) else lang
    if lang in FORCEABLE_LANGUAGES:
        if not force_lora:
            raise UnsupportedLanguage(LANGUAGE_NAMES[lang])
        return lang
    return TargetLanguage.parse(lang).value


def build_plan(text: str,
               lang: Optional[Union[str, TargetLanguage]] = None,
               voice_prompt: Optional[VoicePrompt] = None,
               preset: Union[str, SamplingConfig] = DEFAULT_PRESET,
               deps: Optional[PlanDependencies] = None,
               strict: bool = True,
               force_lora: bool = False) -> SynthesisPlan:

    if deps is None:
        deps = PlanDependencies()
    sampling = preset if isinstance(preset, SamplingConfig) else sampling_preset(preset)
    lang = _resolve_language(text=text, lang=lang, force_lora=force_lora)
    warnings = []

    if lang in FORCEABLE_LANGUAGES:
        if detect_codemix(text):
            # No transliteration prompt or spell-out table exists for these languages.
            raise UnsupportedLanguage(LANGUAGE_NAMES[lang])
        branch = Branch.LORA_BUPS
        normalised_text = text
        warnings.append(PlanWarning(
            code='unvalidated_language',
            message=f'{LANGUAGE_NAMES[lang]} forced down the LoRA branch without validation',
            details=dict(language=lang)))
        warnings.append(PlanWarning(
            code='numbers_not_normalised',
            message=f'No spell-out table for {LANGUAGE_NAMES[lang]}; numbers left as digits',
            details=dict(language=lang)))
    else:
        branch = route(text, lang)
        normalisation = deps.normalise(text, lang)
        normalised_text = normalisation.text
        warnings.extend(PlanWarning.from_dict(warning) for warning in normalisation.warnings)

    if branch is Branch.CODE_MIX:
        request = TranslitRequest(text=normalised_text,
                                  lang=lang,
                                  provider=deps.provider.provider_id,
                                  prompt_version=deps.prompt_version)
        processed_text = deps.transliterate(request, deps.cache, deps.provider)
        language_id, plan_sampling = None, None
    else:
        if branch is Branch.LORA_BUPS:
            processed_text = deps.romanise(normalised_text)
        else:
            processed_text = normalised_text
        language_id, plan_sampling = HINDI_PROXY_LANGUAGE_ID, sampling

        if voice_prompt is not None:
            warnings.extend(validate_voice_prompt(voice_prompt, lang))
        elif strict:
            raise MissingVoicePrompt(branch.value)
        else:
            warnings.append(PlanWarning(
                code='missing_voice_prompt',
                message=f'No voice prompt for branch {branch.value}; the backend will use its default voice',
                details=dict(branch=branch.value)))

    for warning in warnings:
        logging.debug(f'Plan warning {warning.code}: {warning.message}')

    return SynthesisPlan(
        branch=branch,
        backend_id=branch.backend_id,
        processed_text=processed_text,
        language_id=language_id,
        sampling=plan_sampling,
        voice_prompt=voice_prompt,
        warnings=warnings,
        provenance=Provenance(source_text=text, detected_language=lang))
