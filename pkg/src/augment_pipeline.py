import argparse
import json
import logging
import math
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import yaml

from .algebra.bounds import corollary_factors
from .classifiers.checkpoint import save_checkpoint
from .classifiers.dataset import LabeledDataset
from .classifiers.metrics import ConfusionMatrix, Metrics, compute_metrics
from .classifiers.mlp import MlpConfig, Model, init_model, predict
from .classifiers.trainer import train
from .config_manager.config_manager import ConfigManager
from .config_manager.experiment_config import ExperimentConfig
from .extractors.csv_extractor import CsvExtractor
from .extractors.texture_extractor import TextureExtractor
from .generators.gpdm_generator import GeneratorConfig, GPDMGenerator, verify_def2_estimate
from .loaders.grid_loader import GridLoader
from .loaders.report_loader import ReportLoader
from .loaders.score_report import ScoreReport, cell_id
from .parsers.spectrum_parser import SpectrumParser
from .transformers.fold_splitter import FoldSplitter
from .transformers.label_sampler import LabelSampler
from .transformers.standardizer import FeatureStandardizer
from .transformers.synthesizer import Synthesizer
from .transport.wasserstein import DEFAULT_ASSIGNMENT_CAP, exact_w1
from .utils.errors import (
    AugmentationError,
    ConfigurationError,
    DataFormatError,
    DimensionError,
    DivergenceError,
    ExperimentError,
    SamplingError,
)
from .utils.logging_setup import setup_logging
from .utils.seeding import derive_seed

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_DIVERGENCE = 3

BOUNDS_MAX_PAIRS = 7

# seed roles inside derive_seed keys
SPLIT, DOWNSAMPLE, ORIGINAL_CLF, SAMPLE, REDUCED_CLF, GENERATOR, ALLOCATION, SYNTHETIC_CLF = range(1, 9)

SMOKE_CONFIG: Dict[str, Any] = {
    'pipeline': {'name': 'Smoke run', 'logging_level': 'INFO', 'jobs': 1},
    'source': {
        'type': 'texture',
        'texture': {'num_classes': 4, 'per_class': 60, 'side': 16, 'noise': 0.5, 'seed': 7},
    },
    'generator': {
        'finest_side': 16, 'coarsest_side': 12, 'scale_rate': 0.9, 'patch_side': 5,
        'num_projections': 64, 'learning_rate': 0.05, 'steps_per_scale': 40,
        'noise_sigma': 1.0, 'seed': 0, 'optimizer': 'adam',
    },
    'classifier': {
        'hidden': [128, 128, 128], 'learning_rate': 0.001, 'batch_size': 5,
        'patience_fraction': 0.05, 'patience_unit': 'epochs', 'max_epochs': 60, 'seed': 0,
    },
    'experiment': {
        'tasks': [4], 'reduction_ratios': [0.05], 'folds': 2, 'target_train_size': None,
        'downsample_size': None, 'seeds': [0], 'standardize': True,
    },
    'transport': {'assignment_cap': DEFAULT_ASSIGNMENT_CAP, 'bounds_pairs': 5},
    'output': {'dir': 'results/smoke', 'save_svg': True, 'save_checkpoints': False},
}


def exit_code_for(error: BaseException) -> int:
    """Process exit code of a failure: 1 usage/config, 2 data, 3 divergence."""
    if isinstance(error, ExperimentError) and error.cause is not None:
        return exit_code_for(error.cause)
    if isinstance(error, DivergenceError):
        return EXIT_DIVERGENCE
    if isinstance(error, (DataFormatError, DimensionError, SamplingError)):
        return EXIT_DATA
    return EXIT_USAGE


def load_dataset(path: str, task: int, expected_features: int = 2025,
                 token_map: Optional[Dict[str, int]] = None) -> LabeledDataset:
    """Read a spectrum CSV (features + class token per row) into a LabeledDataset."""
    with CsvExtractor({'path': path}) as extractor:
        records = extractor.extract()
    parser = SpectrumParser({'task': task, 'expected_features': expected_features, 'token_map': token_map})
    return parser.parse(records)


# ---------------------------------------------------------------- experiment jobs

def _classifier_config(clf_config: Dict[str, Any], data: LabeledDataset, seed: int) -> MlpConfig:
    config = dict(clf_config)
    config.update(input_dim=data.num_features, output_dim=data.num_classes, seed=seed)
    return MlpConfig.from_dict(config)


def _train_and_score(train_set: LabeledDataset, test_set: LabeledDataset,
                     clf_config: Dict[str, Any], seed: int,
                     standardize: bool) -> Tuple[Metrics, ConfusionMatrix, Model]:
    if standardize:
        scaler = FeatureStandardizer().fit(train_set)
        train_set, test_set = scaler.transform(train_set), scaler.transform(test_set)
    cfg = _classifier_config(clf_config, train_set, seed)
    result = train(init_model(cfg), train_set, cfg)
    predicted = predict(result.model, test_set.features)
    metrics, confusion = compute_metrics(test_set.classes, predicted, test_set.num_classes)
    return metrics, confusion, result.model


def _check_disjoint(test_set: LabeledDataset, train_set: LabeledDataset, what: str):
    if np.intersect1d(test_set.row_ids, train_set.row_ids).size:
        raise DataFormatError(f"Test fold shares rows with the {what} training set")


def _original_job(job: Dict[str, Any]) -> Dict[str, Any]:
    train_set, test_set = job['train'], job['test']
    _check_disjoint(test_set, train_set, 'original')
    metrics, confusion, model = _train_and_score(train_set, test_set, job['clf_config'],
                                                 job['seeds']['original'], job['standardize'])
    return {'original': (metrics, confusion, model)}


def _cell_job(job: Dict[str, Any]) -> Dict[str, Any]:
    train_set, test_set, seeds = job['train'], job['test'], job['seeds']

    reduced = LabelSampler({'seed': seeds['sample']}).transform(
        train_set, ratio=None if job['counts'] else job['ratio'], counts=job['counts'])
    _check_disjoint(test_set, reduced, 'reduced')
    results = {'reduced': _train_and_score(reduced, test_set, job['clf_config'],
                                           seeds['reduced'], job['standardize'])}

    gen_config = dict(job['gen_config'], seed=seeds['generator'])
    synthesizer = Synthesizer({'generator': gen_config, 'seed': seeds['allocation'], 'jobs': 1})
    target_size = job['target_size'] or train_set.num_samples
    synthetic = synthesizer.transform(reduced, target_size=target_size)
    _check_disjoint(test_set, synthetic, 'synthetic')
    results['synthetic'] = _train_and_score(synthetic, test_set, job['clf_config'],
                                            seeds['synthetic'], job['standardize'])
    return results


def _run_job(job: Dict[str, Any]) -> Dict[str, Any]:
    runner = _original_job if job['kind'] == 'original' else _cell_job
    try:
        return runner(job)
    except AugmentationError as e:
        raise ExperimentError(f"{job['label']}: {e}", context=job['context'], cause=e) from e


def _build_jobs(datasets: Dict[int, LabeledDataset], cfg: ExperimentConfig,
                gen_config: Dict[str, Any], clf_config: Dict[str, Any]) -> List[Dict[str, Any]]:
    jobs = []
    for task in cfg.tasks:
        data = datasets[task]
        for rep, seed in enumerate(cfg.seeds):
            if cfg.downsample_size:
                data_r = LabelSampler().downsample(data, cfg.downsample_size,
                                                   seed=derive_seed(seed, task, DOWNSAMPLE))
            else:
                data_r = data
            splitter = FoldSplitter({'folds': cfg.folds, 'seed': derive_seed(seed, task, SPLIT)})
            for fold, (train_set, test_set) in enumerate(splitter.split(data_r)):
                report_fold = rep * cfg.folds + fold
                common = {
                    'task': task, 'fold': report_fold, 'train': train_set, 'test': test_set,
                    'clf_config': clf_config, 'standardize': cfg.standardize,
                }
                jobs.append(dict(common, kind='original', ratio=None,
                                 label=f"C{task:02d} original fold {report_fold}",
                                 context={'task': task, 'ratio': None, 'fold': report_fold},
                                 seeds={'original': derive_seed(seed, task, fold, ORIGINAL_CLF)}))
                for ratio in cfg.reduction_ratios:
                    code = int(round(ratio * 10000))
                    jobs.append(dict(
                        common, kind='cell', ratio=ratio,
                        label=f"{cell_id(task, ratio)} fold {report_fold}",
                        context={'task': task, 'ratio': ratio, 'fold': report_fold},
                        counts=cfg.reduction_counts(task, ratio),
                        gen_config=gen_config,
                        target_size=cfg.target_train_size,
                        seeds={
                            'sample': derive_seed(seed, task, code, fold, SAMPLE),
                            'reduced': derive_seed(seed, task, code, fold, REDUCED_CLF),
                            'generator': derive_seed(seed, task, code, fold, GENERATOR),
                            'allocation': derive_seed(seed, task, code, fold, ALLOCATION),
                            'synthetic': derive_seed(seed, task, code, fold, SYNTHETIC_CLF),
                        },
                    ))
    return jobs


def run_experiment(cfg: ExperimentConfig, datasets: Dict[int, LabeledDataset],
                   gen_config: Dict[str, Any], clf_config: Dict[str, Any],
                   jobs: int = 1, report: Optional[ScoreReport] = None,
                   checkpoint_dir: Optional[Path] = None) -> ScoreReport:
    """
    Cross-validated original / reduced / synthetic comparison for every
    (task, ratio, fold) cell.

    Results are added to report in job order, so a report passed in holds
    every completed cell when a later one fails.

    Raises:
        ExperimentError: with (task, ratio, fold) context and the original cause
    """
    report = report if report is not None else ScoreReport(folds=cfg.folds * len(cfg.seeds))
    job_list = _build_jobs(datasets, cfg, gen_config, clf_config)
    logger.info(f"Running {len(job_list)} experiment jobs with {jobs} worker(s)")

    original: Dict[Tuple[int, int], Tuple[Metrics, ConfusionMatrix]] = {}

    def collect(job: Dict[str, Any], results: Dict[str, Any]):
        for kind, (metrics, confusion, model) in results.items():
            if checkpoint_dir is not None:
                suffix = f"C{job['task']:02d}" if job['ratio'] is None else cell_id(job['task'], job['ratio'])
                save_checkpoint(model, Path(checkpoint_dir) / f"{suffix}_{kind}_fold{job['fold']}.ckpt")
            if kind == 'original':
                original[(job['task'], job['fold'])] = (metrics, confusion)
                for ratio in cfg.reduction_ratios:
                    report.add_fold(job['task'], ratio, 'original', job['fold'], metrics, confusion)
            else:
                report.add_fold(job['task'], job['ratio'], kind, job['fold'], metrics, confusion)
        logger.info(f"Completed {job['label']}")

    if jobs > 1 and len(job_list) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_job, job) for job in job_list]
            try:
                for job, future in zip(job_list, futures):
                    collect(job, future.result())
            except BaseException:
                for future in futures:
                    future.cancel()
                raise
    else:
        for job in job_list:
            collect(job, _run_job(job))

    return report


def emit_report(report: ScoreReport, out_dir: str, save_svg: bool = True) -> Dict[str, Any]:
    """Write scores.csv, confusions.csv, summary.json, confusion CSVs and SVG charts."""
    with ReportLoader({'dir': out_dir, 'save_svg': save_svg}) as loader:
        return loader.load(report)


# ---------------------------------------------------------------- bounds

@dataclass
class BoundsTable:
    """Per-pair deterministic bound rows plus the dataset-level transport check."""

    rows: pd.DataFrame
    dataset: Dict[str, float]


def bounds_report(targets: Sequence[np.ndarray], generated: Sequence[np.ndarray], patch_side: int,
                  assignment_cap: int = DEFAULT_ASSIGNMENT_CAP,
                  max_pairs: int = BOUNDS_MAX_PAIRS) -> BoundsTable:
    """
    Check ||target - generated||_1 <= (n - n' + 1)^2 * delta for matched pairs.

    delta is the position-matched mean patch distance. The dataset-level row
    compares exact W1 between the first max_pairs targets and generated grids
    (as points of dimension n^2) with factor * mean delta.

    Raises:
        DimensionError: pair count or side mismatch
        AugmentationError: a row violates the bound
    """
    if len(targets) != len(generated):
        raise DimensionError(f"{len(targets)} targets but {len(generated)} generated grids")

    rows = []
    for i, (target, output) in enumerate(zip(targets, generated)):
        target = np.asarray(target, dtype=np.float64)
        output = np.asarray(output, dtype=np.float64)
        if target.shape != output.shape or target.ndim != 2 or target.shape[0] != target.shape[1]:
            raise DimensionError(f"Pair {i}: shapes {target.shape} and {output.shape} differ or are not square")
        n = target.shape[0]
        factor = corollary_factors(n * n, patch_side * patch_side, n, patch_side)[1]
        delta = verify_def2_estimate(target, output, patch_side)
        lhs = float(np.abs(target - output).sum())
        rhs = factor * delta
        slack = rhs - lhs
        if slack < -1e-9 * max(1.0, rhs):
            raise AugmentationError(f"Pair {i}: bound violated, lhs {lhs} > rhs {rhs}")
        rows.append({'pair': i, 'delta_hat': delta, 'lhs': lhs, 'factor': factor, 'rhs': rhs, 'slack': slack})

    table = pd.DataFrame(rows, columns=['pair', 'delta_hat', 'lhs', 'factor', 'rhs', 'slack'])
    dataset: Dict[str, float] = {}
    m = min(len(rows), max_pairs)
    if m:
        A = np.stack([np.asarray(t, dtype=np.float64).reshape(-1) for t in targets[:m]])
        B = np.stack([np.asarray(g, dtype=np.float64).reshape(-1) for g in generated[:m]])
        w1 = exact_w1(A, B, cap=assignment_cap)
        bound = float(table['factor'].iloc[0] * table['delta_hat'].iloc[:m].mean())
        dataset = {'pairs': m, 'exact_w1': w1, 'factor_times_mean_delta': bound, 'slack': bound - w1}
    return BoundsTable(rows=table, dataset=dataset)


# ---------------------------------------------------------------- pipeline

class AugmentationPipeline:
    """
    Orchestrates extraction, parsing, cross-validated training on original,
    reduced and synthetic sets, and report emission.
    """

    def __init__(self, config_path: Optional[str] = None,
                 config_data: Optional[Dict[str, Any]] = None,
                 overrides: Optional[Sequence[str]] = None):
        """
        Initialize the pipeline with configuration.

        Args:
            config_path: Path to configuration file or directory
            config_data: In-memory configuration used as the base instead of a file
            overrides: 'section.key=value' strings applied on top
        """
        self.config_path = config_path
        self.config_manager = ConfigManager()
        if config_data is not None:
            self.config_manager.load_dict(json.loads(json.dumps(config_data)))
        if config_path:
            self._merge(self.config_manager.config_data, ConfigManager().load_config(config_path))
            self.config_manager.config_loaded = True
        self.config_manager.apply_overrides(overrides or [])

        self.extractor = None
        self.parser = None
        self.pipeline_stats = {
            'start_time': None,
            'end_time': None,
            'duration_seconds': 0,
            'samples_loaded': 0,
            'jobs_total': 0,
            'cells_completed': 0,
            'errors': []
        }

        self._setup_logging()
        self._initialize_components()

    @staticmethod
    def _merge(base: Dict[str, Any], update: Dict[str, Any]):
        for key, value in update.items():
            if isinstance(value, dict) and isinstance(base.get(key), dict):
                AugmentationPipeline._merge(base[key], value)
            else:
                base[key] = value

    def _setup_logging(self):
        pipeline_config = self.config_manager.get_pipeline_config()
        self.logger = setup_logging(pipeline_config.get('logging_level', 'INFO'),
                                    pipeline_config.get('log_file'))
        self.logger.info("Augmentation pipeline logging initialized")

    def _initialize_components(self):
        """Build typed configs, extractor and parser from the configuration."""
        try:
            self.experiment_config = ExperimentConfig.from_dict(self.config_manager.get_experiment_config())
            self.generator_config = dict(self.config_manager.get_generator_config())
            self.classifier_config = dict(self.config_manager.get_classifier_config())
            GeneratorConfig.from_dict(self.generator_config)
            MlpConfig.from_dict({k: v for k, v in self.classifier_config.items()
                                 if k not in ('input_dim', 'output_dim')})
            self.jobs = int(self.config_manager.get_config_section('pipeline.jobs', 1))
            self.output_config = self.config_manager.get_output_config()
            self.transport_config = self.config_manager.get_transport_config()
            self._initialize_extractor_and_parser()
        except AugmentationError as e:
            self.logger.error(f"Failed to initialize pipeline components: {e}")
            raise

    def _initialize_extractor_and_parser(self):
        source_type = str(self.config_manager.get_source_config().get('type', 'csv')).lower()
        extractor_config = self.config_manager.get_extractor_config()
        self.parser_config = self.config_manager.get_parser_config()

        if source_type == 'csv':
            if self.experiment_config.input_path and not extractor_config.get('path'):
                extractor_config['path'] = self.experiment_config.input_path
            self.extractor = CsvExtractor(extractor_config)
        elif source_type == 'texture':
            self.extractor = TextureExtractor(extractor_config)
            self.parser_config['expected_features'] = self.extractor.side ** 2
        else:
            raise ConfigurationError(f"Unsupported source type: {source_type}")
        self.parser = SpectrumParser(self.parser_config)
        self.logger.info(f"Initialized {self.extractor.__class__.__name__} and SpectrumParser")

    @property
    def out_dir(self) -> str:
        return str(self.output_config.get('dir', self.experiment_config.output_dir))

    def _generator_config_for(self, side: int) -> Dict[str, Any]:
        config = dict(self.generator_config)
        config.setdefault('finest_side', side)
        return config

    def load_datasets(self) -> Dict[int, LabeledDataset]:
        """Extract once and parse the rows for every configured task."""
        self.logger.info("Starting data extraction...")
        try:
            with self.extractor as extractor:
                records = extractor.extract()
        except AugmentationError:
            raise
        except OSError as e:
            raise DataFormatError(f"Data extraction failed: {e}") from e

        datasets = {}
        for task in self.experiment_config.tasks:
            config = dict(self.parser_config, task=task)
            datasets[task] = SpectrumParser(config).parse(records)
        self.pipeline_stats['samples_loaded'] = len(records)
        return datasets

    def run(self) -> Dict[str, Any]:
        """
        Execute the full evaluation and write the report.

        Returns:
            Dictionary with success flag, exit code, statistics and load result
        """
        self.logger.info("Starting augmentation pipeline execution...")
        self.pipeline_stats['start_time'] = datetime.now()
        cfg = self.experiment_config
        report = ScoreReport(folds=cfg.folds * len(cfg.seeds))

        try:
            datasets = self.load_datasets()
            side = math.isqrt(next(iter(datasets.values())).num_features)
            checkpoint_dir = Path(self.out_dir) / 'checkpoints' if self.output_config.get('save_checkpoints') else None
            run_experiment(cfg, datasets, self._generator_config_for(side), self.classifier_config,
                           jobs=self.jobs, report=report, checkpoint_dir=checkpoint_dir)
            load_result = emit_report(report, self.out_dir, self.output_config.get('save_svg', True))
            self._finalize_stats(success=True, report=report)
            self.logger.info("Augmentation pipeline completed successfully")
            return {
                'success': True,
                'exit_code': EXIT_OK,
                'pipeline_stats': self.pipeline_stats,
                'load_result': load_result,
                'report': report,
                'message': 'Augmentation pipeline completed successfully'
            }

        except (AugmentationError, OSError) as e:
            self.logger.error(f"Augmentation pipeline failed: {e}")
            self.logger.debug(f"Error details: {traceback.format_exc()}")
            self.pipeline_stats['errors'].append(str(e))
            if not report.is_empty:
                report.partial = True
                try:
                    emit_report(report, self.out_dir, self.output_config.get('save_svg', True))
                    self.logger.warning(f"Partial results written to {self.out_dir}")
                except OSError as write_error:
                    self.logger.error(f"Could not persist partial results: {write_error}")
            self._finalize_stats(success=False, report=report)
            return {
                'success': False,
                'exit_code': exit_code_for(e),
                'pipeline_stats': self.pipeline_stats,
                'report': report,
                'error': str(e),
                'message': 'Augmentation pipeline failed'
            }

    def _finalize_stats(self, success: bool, report: ScoreReport):
        self.pipeline_stats['end_time'] = datetime.now()
        if self.pipeline_stats['start_time']:
            duration = self.pipeline_stats['end_time'] - self.pipeline_stats['start_time']
            self.pipeline_stats['duration_seconds'] = duration.total_seconds()
        self.pipeline_stats['cells_completed'] = len(
            {(r['task'], r['ratio'], r['fold']) for r in report.scores if r['kind'] != 'original'}
        )
        self.pipeline_stats['success'] = success

    def augment(self, count: int = 1, out_dir: Optional[str] = None,
                pgm_previews: int = 0) -> Dict[str, Any]:
        """Generate count grids per input sample and write them with their labels."""
        datasets = self.load_datasets()
        data = datasets[self.experiment_config.tasks[0]]
        side = math.isqrt(data.num_features)
        generator = GPDMGenerator(self._generator_config_for(side))
        grids = [row.reshape(side, side) for row in data.features]
        outputs = generator.augment_dataset(grids, count, jobs=self.jobs, show_progress=True)
        labels = [str(c) for c in np.repeat(data.classes, count)]
        with GridLoader({'dir': out_dir or self.out_dir, 'pgm_previews': pgm_previews}) as loader:
            return loader.load(outputs, labels)

    def bounds_check(self, pairs: Optional[int] = None, out_dir: Optional[str] = None) -> BoundsTable:
        """Generate one grid for each of the first pairs samples and tabulate the bound."""
        pairs = int(pairs or self.transport_config.get('bounds_pairs', 5))
        data = next(iter(self.load_datasets().values()))
        side = math.isqrt(data.num_features)
        gen_config = GeneratorConfig.from_dict(self._generator_config_for(side))
        generator = GPDMGenerator(gen_config.to_dict())
        targets = [row.reshape(side, side) for row in data.features[:pairs]]
        generated = generator.augment_dataset(targets, 1, jobs=self.jobs)
        table = bounds_report(targets, generated, gen_config.patch_side,
                              self.transport_config.get('assignment_cap', DEFAULT_ASSIGNMENT_CAP))

        out = Path(out_dir or self.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        table.rows.to_csv(out / 'bounds.csv', index=False, float_format='%.12g', lineterminator='\n')
        (out / 'bounds.json').write_text(json.dumps(table.dataset, indent=2, sort_keys=True) + '\n',
                                         encoding='utf-8')
        self.logger.info(f"Bound holds for {len(table.rows)} pairs; min slack {table.rows['slack'].min():.6g}")
        return table

    def validate_configuration(self) -> Dict[str, Any]:
        """
        Validate the pipeline configuration.

        Returns:
            Dictionary with validation results
        """
        self.logger.info("Validating pipeline configuration...")
        validation_results = {'valid': True, 'errors': [], 'warnings': []}

        for check in (self.config_manager.validate_source_config,
                      self.config_manager.validate_experiment_config):
            result = check()
            if not result['valid']:
                validation_results['valid'] = False
                validation_results['errors'].extend(result['errors'])
            validation_results['warnings'].extend(result.get('warnings', []))

        try:
            self.extractor.connect()
            self.extractor.disconnect()
        except (OSError, ValueError) as e:
            validation_results['valid'] = False
            validation_results['errors'].append(f"Source check failed: {e}")

        return validation_results

    def get_pipeline_info(self) -> Dict[str, Any]:
        cfg = self.experiment_config
        return {
            'pipeline_name': self.config_manager.get_config_section('pipeline.name', 'Augmentation Pipeline'),
            'config_path': self.config_path,
            'extractor_class': self.extractor.__class__.__name__ if self.extractor else None,
            'tasks': list(cfg.tasks),
            'cells': [cell_id(t, r) for t in cfg.tasks for r in cfg.reduction_ratios],
            'folds': cfg.folds,
            'jobs': self.jobs,
        }

    def get_stats(self) -> Dict[str, Any]:
        return dict(self.pipeline_stats)


# ---------------------------------------------------------------- CLI

class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common_flags(parser: argparse.ArgumentParser):
    parser.add_argument('--config', help='Path to configuration file or directory')
    parser.add_argument('--task', type=int, choices=[2, 4, 10], help='Classification task')
    parser.add_argument('--ratios', help='Comma-separated reduction ratios, e.g. 0.05,0.1')
    parser.add_argument('--folds', type=int, help='Cross-validation folds')
    parser.add_argument('--seed', type=int, help='Base seed')
    parser.add_argument('--out', help='Output directory')
    parser.add_argument('--jobs', type=int, help='Worker processes')
    parser.add_argument('--input', help='Spectrum CSV file (features + class token per row)')
    parser.add_argument('--set', action='append', default=[], metavar='SECTION.KEY=VALUE',
                        help='Override any configuration value')
    parser.add_argument('--validate', action='store_true', help='Validate configuration only')
    for f in fields(GeneratorConfig):
        parser.add_argument(f"--gen-{f.name.replace('_', '-')}", dest=f"gen__{f.name}",
                            metavar='VALUE', help=f"generator.{f.name}")
    for f in fields(MlpConfig):
        if f.name in ('input_dim', 'output_dim'):
            continue
        parser.add_argument(f"--clf-{f.name.replace('_', '-')}", dest=f"clf__{f.name}",
                            metavar='VALUE', help=f"classifier.{f.name}")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog='augment_pipeline',
                             description='One-shot spectrum augmentation and evaluation harness')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

    augment = sub.add_parser('augment', help='Generate grids from a file of grids')
    _add_common_flags(augment)
    augment.add_argument('--count', type=int, default=1, help='Grids generated per input sample')
    augment.add_argument('--pgm-previews', type=int, default=0, help='Write PGM files for the first N outputs')

    bounds = sub.add_parser('bounds-check', help='Tabulate the deterministic bound on generated pairs')
    _add_common_flags(bounds)
    bounds.add_argument('--pairs', type=int, help='Number of target/generated pairs')

    evaluate = sub.add_parser('evaluate', help='Full cross-validated evaluation')
    _add_common_flags(evaluate)

    report = sub.add_parser('report', help='Re-render summary and charts from scores.csv')
    report.add_argument('--out', required=True, help='Directory holding scores.csv')
    report.add_argument('--no-svg', action='store_true', help='Skip SVG charts')

    smoke = sub.add_parser('smoke', help='Built-in texture task end to end')
    _add_common_flags(smoke)
    return parser


def _overrides_from_args(args: argparse.Namespace) -> List[str]:
    overrides = list(args.set)
    if args.task is not None:
        overrides.append(f"experiment.tasks=[{args.task}]")
    if args.ratios:
        overrides.append(f"experiment.reduction_ratios=[{args.ratios}]")
    if args.folds is not None:
        overrides.append(f"experiment.folds={args.folds}")
    if args.seed is not None:
        overrides.append(f"experiment.seeds=[{args.seed}]")
    if args.out:
        overrides.append(f"output.dir={args.out}")
    if args.jobs is not None:
        overrides.append(f"pipeline.jobs={args.jobs}")
    if args.input:
        overrides.extend(["source.type=csv", f"source.csv.path={args.input}"])
    for name, value in vars(args).items():
        if value is None:
            continue
        if name.startswith('gen__'):
            overrides.append(f"generator.{name[5:]}={value}")
        elif name.startswith('clf__'):
            overrides.append(f"classifier.{name[5:]}={value}")
    return overrides


def _print_validation(validation: Dict[str, Any]):
    print("\n=== Configuration Validation ===")
    print(f"Valid: {validation['valid']}")
    if validation['errors']:
        print("Errors:")
        for error in validation['errors']:
            print(f"  - {error}")
    if validation['warnings']:
        print("Warnings:")
        for warning in validation['warnings']:
            print(f"  - {warning}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Command line entry point.

    Returns:
        Process exit code: 0 success, 1 usage/configuration, 2 data, 3 divergence
    """
    args = build_arg_parser().parse_args(argv)

    try:
        if args.command == 'report':
            out = Path(args.out)
            report = ScoreReport.from_files(out / 'scores.csv', out / 'confusions.csv')
            emit_report(report, str(out), save_svg=not args.no_svg)
            print(f"Report re-rendered in {out}")
            return EXIT_OK

        base = SMOKE_CONFIG if args.command == 'smoke' else None
        pipeline = AugmentationPipeline(args.config, config_data=base, overrides=_overrides_from_args(args))

        if args.validate:
            validation = pipeline.validate_configuration()
            _print_validation(validation)
            return EXIT_OK if validation['valid'] else EXIT_USAGE

        if args.command == 'augment':
            result = pipeline.augment(count=args.count, pgm_previews=args.pgm_previews)
            print(f"Wrote {', '.join(result['files_written'])}")
            return EXIT_OK

        if args.command == 'bounds-check':
            table = pipeline.bounds_check(pairs=args.pairs)
            print(table.rows.to_string(index=False))
            print(json.dumps(table.dataset, indent=2, sort_keys=True))
            return EXIT_OK

        result = pipeline.run()
        print("\n=== Pipeline Execution Results ===")
        print(f"Success: {result['success']}")
        stats = result['pipeline_stats']
        print(f"Duration: {stats['duration_seconds']:.2f} seconds")
        print(f"Cells completed: {stats['cells_completed']}")
        if result['success']:
            summary = result['report'].aggregate()
            accuracy = summary[summary['metric'] == 'accuracy']
            print(accuracy.to_string(index=False))
        else:
            print(f"Error: {result['error']}")
        return result['exit_code']

    except (AugmentationError, OSError, ValueError, yaml.YAMLError) as e:
        logger.error(f"Failed to run augmentation pipeline: {e}")
        code = exit_code_for(e)
        if isinstance(e, FileNotFoundError) and args.command == 'report':
            code = EXIT_DATA
        return code


if __name__ == "__main__":
    sys.exit(main())
