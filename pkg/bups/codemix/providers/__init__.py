from bups.codemix.providers.base import ProviderConfig, TranslitProvider
from bups.codemix.providers.offline import OfflineDictionaryProvider
from bups.codemix.providers.remote import RemoteProvider
