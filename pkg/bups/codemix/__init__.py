from bups.codemix.cache import TranslitCache, TranslitCacheEntry, cache_key
from bups.codemix.detection import ValidationResult, detect_codemix, validate_translit
from bups.codemix.translit import TranslitRequest, transliterate_codemix
