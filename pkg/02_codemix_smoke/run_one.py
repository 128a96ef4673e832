"""
Transliterate the code-mix smoke sets (ten utterances per language, two per
topic) and report English-token density, validation outcomes, provider calls and
cache hits. The second pass over the records should be served from the cache.

Example usage:

02_codemix_smoke/run_one.py
"""

import joblib
import logging
import os
import pandas as pd
import wandb


import bups.helpers.run
from bups.codemix.detection import english_token_density, validate_translit
from bups.codemix.translit import TranslitRequest, transliterate_codemix
from bups.errors import ValidationFailed


config_defaults = {
    'records_path': '02_codemix_smoke/records.jsonl',
    'provider': 'offline',
    'n_passes': 2,
    'log_level': 'INFO',
}


wandb.init(project='bups-codemix-smoke',
           config=config_defaults,
           mode='offline')
config = wandb.config

run_config = bups.helpers.run.load_config(overrides={'provider': config['provider'],
                                                      'log_level': config['log_level']})
bups.helpers.run.create_logger(level=run_config['log_level'])

print(f'Running:')
for key, value in config.items():
    print(key, ' : ', value)

# determine paths
exp_dir = '02_codemix_smoke'
results_dir_path = os.path.join(exp_dir, 'results')
os.makedirs(results_dir_path, exist_ok=True)
smoke_results_path = os.path.join(
    results_dir_path, f'id={wandb.run.id}.joblib')

wandb.log({'smoke_results_path': smoke_results_path},
          step=0)

records_df = pd.read_json(config['records_path'], lines=True)
records_df['english_token_density'] = records_df['text'].map(english_token_density)

cache = bups.helpers.run.build_cache(run_config)
with bups.helpers.run.build_provider(run_config) as provider:
    outputs_by_pass = []
    for pass_idx in range(config['n_passes']):
        outputs = []
        for record in records_df.itertuples():
            try:
                output = transliterate_codemix(TranslitRequest(record.text, record.lang), cache, provider)
            except ValidationFailed as error:
                logging.warning(f'{record.id}: {error}')
                output = None
            outputs.append(output)
        outputs_by_pass.append(outputs)
        wandb.log({'provider_calls': provider.num_calls,
                   'cache_hits': cache.hits},
                  step=pass_idx)
    num_provider_calls = provider.num_calls

records_df['output'] = outputs_by_pass[0]
records_df['validation_ok'] = [
    output is not None and validate_translit(text, output).ok
    for text, output in zip(records_df['text'], records_df['output'])]

summary_df = records_df.groupby('lang').agg(
    n_utterances=('id', 'size'),
    mean_english_token_density=('english_token_density', 'mean'),
    min_english_token_density=('english_token_density', 'min'),
    max_english_token_density=('english_token_density', 'max'),
    n_validation_ok=('validation_ok', 'sum'))
print(summary_df.to_string())

for lang, lang_summary in summary_df.iterrows():
    wandb.log({f'{lang}_{key}': value for key, value in lang_summary.items()},
              step=config['n_passes'] - 1)

data_to_store = dict(
    config=dict(config),  # Need to convert WandB config to proper dict
    records_df=records_df,
    summary_df=summary_df,
    provider_calls=num_provider_calls,
    cache_hits=cache.hits)

joblib.dump(data_to_store,
            filename=smoke_results_path)

print(f'Provider calls: {num_provider_calls}, cache hits: {cache.hits}')
print(f'Finished code-mix smoke sets for run={wandb.run.id}.')
