import json
from typing import Dict, Iterable, List

import pandas as pd


def load_batch_results(batch_results_path: str) -> List[Dict]:
    with open(batch_results_path, encoding='utf-8') as batch_results_file:
        return [json.loads(line) for line in batch_results_file if line.strip()]


def batch_results_to_df(batch_results: Iterable[Dict]) -> pd.DataFrame:
    """
    One row per batch output record with columns id, status, branch, backend_id,
    language, error_type, num_warnings, warning_codes, elapsed_s.
    """
    rows = []
    for result in batch_results:
        plan = result.get('plan')
        error = result.get('error')
        rows.append({
            'id': result['id'],
            'status': 'ok' if plan is not None else 'error',
            'branch': None if plan is None else plan['branch'],
            'backend_id': None if plan is None else plan['backend_id'],
            'language': None if plan is None else plan['provenance']['detected_language'],
            'error_type': None if error is None else error['type'],
            'num_warnings': 0 if plan is None else len(plan['warnings']),
            'warning_codes': [] if plan is None else [warning['code'] for warning in plan['warnings']],
            'elapsed_s': result.get('elapsed_s'),
        })
    columns = ['id', 'status', 'branch', 'backend_id', 'language', 'error_type',
               'num_warnings', 'warning_codes', 'elapsed_s']
    return pd.DataFrame(rows, columns=columns)


def summarise_batch_results(batch_results_df: pd.DataFrame) -> Dict:
    def value_counts(column: str) -> Dict[str, int]:
        counts = batch_results_df[column].dropna().value_counts().sort_index()
        return {str(key): int(value) for key, value in counts.items()}

    warning_codes = batch_results_df['warning_codes'].explode().dropna()
    elapsed_s = pd.to_numeric(batch_results_df['elapsed_s'], errors='coerce').dropna()

    return {
        'num_records': int(len(batch_results_df)),
        'num_errors': int((batch_results_df['status'] == 'error').sum()),
        'by_branch': value_counts('branch'),
        'by_language': value_counts('language'),
        'by_error_type': value_counts('error_type'),
        'by_warning_code': {str(key): int(value)
                            for key, value in warning_codes.value_counts().sort_index().items()},
        'mean_elapsed_s': None if len(elapsed_s) == 0 else round(float(elapsed_s.mean()), 4),
    }
