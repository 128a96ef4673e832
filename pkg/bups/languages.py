import enum
from typing import Dict, Union

from bups.segmentation import ScriptClass


class TargetLanguage(str, enum.Enum):
    TE = 'te'
    TA = 'ta'
    HI = 'hi'

    @classmethod
    def parse(cls, lang: Union[str, 'TargetLanguage']) -> 'TargetLanguage':
        try:
            return cls(lang)
        except ValueError:
            raise ValueError(f'Unknown target language: {lang!r} (expected one of te, ta, hi)')


LANGUAGE_NAMES: Dict[str, str] = {
    'te': 'Telugu',
    'ta': 'Tamil',
    'hi': 'Hindi',
    'bn': 'Bengali',
    'gu': 'Gujarati',
    'kn': 'Kannada',
    'ml': 'Malayalam',
}

# Language code for text written in each Brahmic script.
SCRIPT_LANGUAGE: Dict[ScriptClass, str] = {
    ScriptClass.DEVANAGARI: 'hi',
    ScriptClass.TELUGU: 'te',
    ScriptClass.TAMIL: 'ta',
    ScriptClass.BENGALI: 'bn',
    ScriptClass.GUJARATI: 'gu',
    ScriptClass.KANNADA: 'kn',
    ScriptClass.MALAYALAM: 'ml',
}
