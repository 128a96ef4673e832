"""
Content-addressed transliteration cache.

Keys are the SHA-256 of the raw input string (UTF-8, no normalisation). The
file form is a single UTF-8 JSON document mapping hex digest -> entry, rewritten
atomically (write temp, then rename) under an exclusive lock.
"""

import contextlib
import dataclasses
import datetime
import fcntl
import hashlib
import json
import logging
import os
import threading
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional

from bups.codemix.detection import validate_translit
from bups.errors import CacheCorrupt

ENTRY_FIELDS = ('key', 'input', 'output', 'provider_id', 'prompt_version', 'lang', 'created_at')


def cache_key(text: str) -> str:
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')


@dataclass(frozen=True)
class TranslitCacheEntry:
    key: str
    input: str
    output: str
    provider_id: str
    prompt_version: str
    lang: str
    created_at: str

    @classmethod
    def create(cls,
               input_text: str,
               output_text: str,
               provider_id: str,
               prompt_version: str,
               lang: str) -> 'TranslitCacheEntry':
        return cls(key=cache_key(input_text),
                   input=input_text,
                   output=output_text,
                   provider_id=provider_id,
                   prompt_version=prompt_version,
                   lang=lang,
                   created_at=utc_now())

    def to_dict(self) -> Dict[str, str]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, entry_dict: Dict[str, str]) -> 'TranslitCacheEntry':
        """
        Raises KeyError for a missing field and TypeError for anything that is
        not a string.
        """
        if not isinstance(entry_dict, dict):
            raise TypeError(f'entry is a {type(entry_dict).__name__}, not an object')
        for name in ENTRY_FIELDS:
            if not isinstance(entry_dict[name], str):
                raise TypeError(f'{name} is a {type(entry_dict[name]).__name__}, not a string')
        return cls(**{name: entry_dict[name] for name in ENTRY_FIELDS})

    def check(self) -> Optional[str]:
        """Returns the first broken invariant, or None."""
        if self.key != cache_key(self.input):
            return 'key is not the SHA-256 of the input'
        validation = validate_translit(self.input, self.output)
        if not validation.ok:
            return f'output fails validation clauses {validation.failed_clauses}'
        return None


class TranslitCache:
    """
    In-memory when path is None, otherwise backed by a JSON file. Readers use the
    in-memory copy; writers re-read the file under the lock before rewriting so
    that concurrent processes do not drop each other's entries.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._entries: Dict[str, Dict] = dict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        if path is not None and os.path.isfile(path):
            self._entries = self._read_file()
            logging.info(f'Loaded {len(self._entries)} transliteration cache entries from {path}')

    def _read_file(self) -> Dict[str, Dict]:
        with open(self.path, encoding='utf-8') as cache_file:
            try:
                entries = json.load(cache_file)
            except json.JSONDecodeError as error:
                raise CacheCorrupt('*', f'unreadable JSON: {error}', path=self.path)
        if not isinstance(entries, dict):
            raise CacheCorrupt('*', 'top-level JSON value is not an object', path=self.path)
        return entries

    def _write_file(self, entries: Dict[str, Dict]):
        directory = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(directory, exist_ok=True)
        tmp_path = self.path + '.tmp'
        with open(tmp_path, 'w', encoding='utf-8', newline='\n') as tmp_file:
            json.dump(entries, tmp_file, ensure_ascii=False, indent=2, sort_keys=True)
            tmp_file.write('\n')
        os.replace(tmp_path, self.path)

    @contextlib.contextmanager
    def _exclusive(self) -> Iterator[None]:
        with self._lock:
            if self.path is None:
                yield
                return
            lock_path = self.path + '.lock'
            os.makedirs(os.path.dirname(os.path.abspath(lock_path)), exist_ok=True)
            with open(lock_path, 'w') as lock_file:
                fcntl.flock(lock_file, fcntl.LOCK_EX)
                try:
                    yield
                finally:
                    fcntl.flock(lock_file, fcntl.LOCK_UN)

    def get(self, key: str) -> Optional[TranslitCacheEntry]:
        """
        Raises CacheCorrupt if the stored entry breaks its own invariants.
        """
        entry_dict = self._entries.get(key)
        if entry_dict is None:
            self.misses += 1
            return None

        try:
            entry = TranslitCacheEntry.from_dict(entry_dict)
        except (KeyError, TypeError) as error:
            raise CacheCorrupt(key, f'malformed entry: {error!r}', path=self.path)
        if entry.key != key:
            raise CacheCorrupt(key, f'stored under {key} but records key {entry.key}', path=self.path)
        problem = entry.check()
        if problem is not None:
            raise CacheCorrupt(key, problem, path=self.path)

        self.hits += 1
        return entry

    def put(self, entry: TranslitCacheEntry):
        problem = entry.check()
        assert problem is None, problem
        with self._exclusive():
            if self.path is not None:
                if os.path.isfile(self.path):
                    self._entries.update(self._read_file())
                self._entries[entry.key] = entry.to_dict()
                self._write_file(self._entries)
            else:
                self._entries[entry.key] = entry.to_dict()
        logging.debug(f'Cached transliteration {entry.key[:12]}')

    def evict(self, key: str):
        with self._exclusive():
            if self.path is not None and os.path.isfile(self.path):
                self._entries.update(self._read_file())
            self._entries.pop(key, None)
            if self.path is not None:
                self._write_file(self._entries)
        logging.warning(f'Evicted transliteration cache entry {key[:12]}')

    def entries(self) -> List[TranslitCacheEntry]:
        return [TranslitCacheEntry.from_dict(self._entries[key])
                for key in sorted(self._entries)]

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)
