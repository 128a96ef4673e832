from typing import Dict, List, Optional


class BupsError(Exception):
    """
    Base class for every data error raised by the package. Subclasses carry
    structured attributes so that the CLI can emit them as JSON error records.
    """

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict:
        error_dict = {'type': type(self).__name__,
                      'message': self.message}
        error_dict.update(self.details)
        return error_dict


class NonBrahmicRun(BupsError, ValueError):

    def __init__(self, script: str):
        super().__init__(f'Cannot transliterate a run of class {script}',
                         script=script)


class UnmappedCodepoint(BupsError, ValueError):

    def __init__(self, codepoint: int, script: str):
        super().__init__(f'No {script} table entry for U+{codepoint:04X}',
                         codepoint=f'U+{codepoint:04X}',
                         script=script)
        self.codepoint = codepoint


class OutOfRange(BupsError, ValueError):

    def __init__(self, name: str, value, lower, upper):
        super().__init__(f'{name}={value} outside [{lower}, {upper}]',
                         name=name, value=value, lower=lower, upper=upper)


class NoBrahmicContent(BupsError, ValueError):

    def __init__(self):
        super().__init__('Text contains no Brahmic codepoints')


class UnsupportedLanguage(BupsError, ValueError):

    def __init__(self, script: str):
        super().__init__(f'No deployment branch for {script} text',
                         script=script)
        self.script = script


class DurationOutOfRange(BupsError, ValueError):

    def __init__(self, duration: float, lower: float, upper: float):
        super().__init__(f'Voice prompt of {duration}s outside [{lower}, {upper}] s',
                         duration=duration, lower=lower, upper=upper)


class MissingVoicePrompt(BupsError, ValueError):

    def __init__(self, branch: str):
        super().__init__(f'Branch {branch} requires a voice prompt in strict mode',
                         branch=branch)


class InvalidSamplingConfig(BupsError, ValueError):

    def __init__(self, reason: str):
        super().__init__(f'Invalid sampling config: {reason}')


class InvalidVoicePrompt(BupsError, ValueError):

    def __init__(self, reason: str):
        super().__init__(f'Invalid voice prompt: {reason}')


class ProviderUnreachable(BupsError, RuntimeError):

    def __init__(self, provider_id: str, attempts: int, last_error: str):
        super().__init__(f'{provider_id} unreachable after {attempts} attempts: {last_error}',
                         provider_id=provider_id,
                         attempts=attempts,
                         last_error=last_error)


class ValidationFailed(BupsError, RuntimeError):

    def __init__(self,
                 outputs: List[str],
                 violations: List[List[Dict[str, str]]]):
        super().__init__('Transliteration failed validation on every attempt',
                         outputs=outputs,
                         violations=violations)
        self.outputs = outputs
        self.violations = violations


class CacheCorrupt(BupsError, RuntimeError):

    def __init__(self, key: str, reason: str, path: Optional[str] = None):
        super().__init__(f'Cache entry {key} is corrupt: {reason}',
                         key=key, reason=reason, path=path)
        self.key = key


class InvalidRecord(BupsError, ValueError):

    def __init__(self, reason: str):
        super().__init__(f'Invalid batch record: {reason}')
