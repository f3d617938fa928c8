from .config import ExperimentConfig, apply_env, canonical_json, config_from_dict, load_config
from .experiments import (
    EXPERIMENTS,
    list_experiments,
    regime,
    run_cond_translation,
    run_coupling_count,
    run_experiment,
    run_independence,
    run_layers,
    run_lower_tail,
    run_sketch_accuracy,
    run_upper_tail,
)
from .keys import adversarial_prefix_keys, key_set, random_keys, sequential_keys
from .report import Check, Report, TailReport
from .runner import derive_seed, run_trials

__all__ = [
    "EXPERIMENTS",
    "Check",
    "ExperimentConfig",
    "Report",
    "TailReport",
    "adversarial_prefix_keys",
    "apply_env",
    "canonical_json",
    "config_from_dict",
    "derive_seed",
    "key_set",
    "list_experiments",
    "load_config",
    "random_keys",
    "regime",
    "run_cond_translation",
    "run_coupling_count",
    "run_experiment",
    "run_independence",
    "run_layers",
    "run_lower_tail",
    "run_sketch_accuracy",
    "run_trials",
    "run_upper_tail",
    "sequential_keys",
]
