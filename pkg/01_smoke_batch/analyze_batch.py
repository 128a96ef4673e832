"""
Summarise a batch output file: branch, language, error and warning counts.

Example usage:

01_smoke_batch/analyze_batch.py
"""

import json
import os

from bups.helpers.analyze import batch_results_to_df, load_batch_results, summarise_batch_results

exp_dir_path = '01_smoke_batch'
results_dir = os.path.join(exp_dir_path, 'results')
os.makedirs(results_dir, exist_ok=True)
batch_results_path = os.path.join(results_dir, 'results.jsonl')

batch_results_df = batch_results_to_df(load_batch_results(batch_results_path))
print(f"Number of records: {batch_results_df.shape[0]} in {batch_results_path}")

batch_results_df.to_csv(os.path.join(results_dir, 'results.csv'), index=False)

summary = summarise_batch_results(batch_results_df)
with open(os.path.join(results_dir, 'summary.json'), 'w', encoding='utf-8') as summary_file:
    json.dump(summary, summary_file, ensure_ascii=False, indent=2)

print(batch_results_df[['id', 'status', 'branch', 'language', 'error_type', 'num_warnings']].to_string(index=False))
print(json.dumps(summary, ensure_ascii=False, indent=2))
