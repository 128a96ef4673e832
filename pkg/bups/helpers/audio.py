import soundfile

from bups.errors import InvalidVoicePrompt


def read_wav_duration(audio_path: str) -> float:
    """
    Duration in seconds from the file header (frames / sample rate). Nothing is
    decoded.
    """
    try:
        info = soundfile.info(audio_path)
    except RuntimeError as error:
        raise InvalidVoicePrompt(f'cannot read header of {audio_path}: {error}')
    if info.samplerate <= 0:
        raise InvalidVoicePrompt(f'{audio_path} reports sample rate {info.samplerate}')
    return info.frames / info.samplerate
