"""
Run the Telugu and Hindi example utterances through every stage of the
frontend and store the intermediate outputs.

Example usage:

00_worked_example/run_one.py
"""

from collections import Counter
import joblib
import logging
import os
import wandb


import bups.helpers.run
from bups.codemix.detection import detect_codemix
from bups.normalisation import normalise_with_report
from bups.romanisation import bups as romanise
from bups.router import PRESET_DESCRIPTIONS, PlanDependencies, build_plan, detect_language
from bups.segmentation import segment


config_defaults = {
    'utterances': [
        'మా CEO ఈ quarter కి మంచి presentation ఇచ్చారు',
        'నేను బాగున్నాను',
        'मैंने WhatsApp पे message किया but notification नहीं आया',
        'नमस्ते, आज 15/08/1947 नहीं है',
        'நாளை meeting இருக்கிறது',
    ],
    'preset': 'config_b',
    'cache_file': None,
    'log_level': 'INFO',
}


wandb.init(project='bups-worked-example',
           config=config_defaults,
           mode='offline')
config = wandb.config

run_config = bups.helpers.run.load_config(overrides={'cache_file': config['cache_file'],
                                                      'log_level': config['log_level']})
bups.helpers.run.create_logger(level=run_config['log_level'])

print(f'Running:')
for key, value in config.items():
    print(key, ' : ', value)
print(f"preset {config['preset']}: {PRESET_DESCRIPTIONS[config['preset']]}")

# determine paths
exp_dir = '00_worked_example'
results_dir_path = os.path.join(exp_dir, 'results')
os.makedirs(results_dir_path, exist_ok=True)
worked_example_results_path = os.path.join(
    results_dir_path, f'id={wandb.run.id}.joblib')

wandb.log({'worked_example_results_path': worked_example_results_path},
          step=0)

deps = PlanDependencies(cache=bups.helpers.run.build_cache(run_config),
                        provider=bups.helpers.run.build_provider(run_config),
                        prompt_version=run_config['prompt_version'])

results = []
for text in config['utterances']:
    lang = detect_language(text).value
    normalisation = normalise_with_report(text, lang)
    # Chatterbox branches would need a voice prompt; plans here carry a warning instead.
    plan = build_plan(text=text,
                      lang=lang,
                      preset=config['preset'],
                      deps=deps,
                      strict=False)
    result = dict(
        text=text,
        runs=[run.to_dict() for run in segment(text)],
        romanised=romanise(text),
        language=lang,
        codemix=detect_codemix(text),
        normalised=normalisation.text,
        plan=plan.to_dict())
    results.append(result)
    logging.info(f'{lang} {plan.branch.value:>9}: {plan.processed_text}')

branch_counts = Counter(result['plan']['branch'] for result in results)
summary = {f'n_{branch}': count for branch, count in branch_counts.items()}
summary.update(n_utterances=len(results),
               n_codemix=sum(result['codemix'] for result in results),
               provider_calls=deps.provider.num_calls,
               cache_hits=deps.cache.hits)
wandb.log(summary, step=0)

data_to_store = dict(
    config=dict(config),  # Need to convert WandB config to proper dict
    results=results,
    summary=summary)

joblib.dump(data_to_store,
            filename=worked_example_results_path)

deps.provider.close()
print(f'Provider calls: {deps.provider.num_calls}, cache hits: {deps.cache.hits}')
print(f'Finished worked example for run={wandb.run.id}.')
