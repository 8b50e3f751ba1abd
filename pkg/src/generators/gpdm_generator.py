import logging
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..classifiers.adam import Adam
from ..transport.distributions import ProjectionSet
from ..transport.wasserstein import sliced_w, sliced_w_with_gradient
from ..utils.errors import ConfigurationError, DimensionError, DivergenceError
from ..utils.seeding import make_rng
from .base_generator import BaseGenerator
from .patches import extract_patch_array, scatter_add_patches
from .pyramid import ScalePyramid, pyramid_sides, resize_grid

logger = logging.getLogger(__name__)

OPTIMIZERS = ('sgd', 'adam')

# direction streams: 0 is the initial loss, 1.. the optimisation steps,
# EVAL_STREAM + scale index the end-of-scale evaluations
NOISE_STREAM = 2 ** 40
EVAL_STREAM = 2 ** 41


@dataclass(frozen=True)
class GeneratorConfig:
    """Hyperparameters of the coarse-to-fine patch distribution matching generator."""

    finest_side: int = 45
    coarsest_side: int = 21
    scale_rate: float = 0.95
    patch_side: int = 11
    num_projections: int = 128
    learning_rate: float = 0.02
    steps_per_scale: int = 300
    noise_sigma: float = 1.0
    seed: int = 0
    optimizer: str = 'adam'

    def __post_init__(self):
        if self.coarsest_side > self.finest_side:
            raise ConfigurationError(
                f"coarsest_side ({self.coarsest_side}) must not exceed finest_side ({self.finest_side})"
            )
        if not 0.0 < self.scale_rate < 1.0:
            raise ConfigurationError(f"scale_rate must lie in (0, 1), got {self.scale_rate}")
        if self.patch_side > self.coarsest_side:
            raise ConfigurationError(
                f"patch_side ({self.patch_side}) must not exceed coarsest_side ({self.coarsest_side})"
            )
        for name in ('finest_side', 'coarsest_side', 'patch_side', 'num_projections'):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.steps_per_scale < 0:
            raise ConfigurationError(f"steps_per_scale must be non-negative, got {self.steps_per_scale}")
        if self.learning_rate <= 0:
            raise ConfigurationError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.noise_sigma < 0:
            raise ConfigurationError(f"noise_sigma must be non-negative, got {self.noise_sigma}")
        if self.optimizer not in OPTIMIZERS:
            raise ConfigurationError(f"optimizer must be one of {OPTIMIZERS}, got {self.optimizer!r}")

    @classmethod
    def from_dict(cls, config: Optional[Dict[str, Any]] = None) -> 'GeneratorConfig':
        config = dict(config or {})
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(config) - known)
        if unknown:
            logger.warning(f"Ignoring unknown generator keys: {unknown}")
        return cls(**{k: v for k, v in config.items() if k in known})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class GenerationResult:
    """Output grid at the finest scale plus the loss monitor of the run."""

    output: np.ndarray
    per_scale_final_loss: List[float]
    initial_loss: float
    seed: int
    loss_trace: List[List[float]] = field(default_factory=list)


def build_pyramid(target: np.ndarray, cfg: GeneratorConfig) -> ScalePyramid:
    """Resample the target at every pyramid side, finest first."""
    target = np.asarray(target, dtype=np.float64)
    if target.shape != (cfg.finest_side, cfg.finest_side):
        raise DimensionError(
            f"Target must be {cfg.finest_side}x{cfg.finest_side}, got shape {target.shape}"
        )
    sides = pyramid_sides(cfg.finest_side, cfg.coarsest_side, cfg.scale_rate)
    return ScalePyramid(
        sides=tuple(sides),
        targets=tuple(resize_grid(target, side) for side in sides),
    )


def _directions(cfg: GeneratorConfig, rng_state: Union[int, ProjectionSet]) -> ProjectionSet:
    if isinstance(rng_state, ProjectionSet):
        return rng_state
    return ProjectionSet.sample(cfg.patch_side ** 2, cfg.num_projections, cfg.seed, int(rng_state))


def patch_swd_step(current: np.ndarray, target_patches: np.ndarray, cfg: GeneratorConfig,
                   rng_state: Union[int, ProjectionSet],
                   optimizer: Optional[Adam] = None) -> Tuple[np.ndarray, float]:
    """
    One pixel-space descent step on the sliced W1 between patch sets.

    Args:
        current: Current grid
        target_patches: Patch array (or distribution points) of the target at this scale
        cfg: Generator configuration
        rng_state: Stream id for fresh directions, or a fixed ProjectionSet
        optimizer: Adam state when cfg.optimizer is 'adam'

    Returns:
        (updated grid, loss before the step)
    """
    current = np.asarray(current, dtype=np.float64)
    target_patches = getattr(target_patches, 'points', target_patches)
    current_patches = extract_patch_array(current, cfg.patch_side)
    if current_patches.shape != np.shape(target_patches):
        raise DimensionError(
            f"Patch sets differ: {current_patches.shape} vs {np.shape(target_patches)}"
        )

    loss, patch_gradient = sliced_w_with_gradient(current_patches, target_patches,
                                                  _directions(cfg, rng_state))
    pixel_gradient = scatter_add_patches(patch_gradient, current.shape[0], cfg.patch_side)

    if optimizer is not None:
        params = {'grid': current.copy()}
        optimizer.step(params, {'grid': pixel_gradient})
        return params['grid'], loss
    return current - cfg.learning_rate * pixel_gradient, loss


def _evaluate(grid: np.ndarray, target_patches: np.ndarray, cfg: GeneratorConfig, stream: int) -> float:
    return sliced_w(extract_patch_array(grid, cfg.patch_side), target_patches, _directions(cfg, stream))


def gpdm_generate(target: np.ndarray, cfg: GeneratorConfig) -> GenerationResult:
    """
    Coarse-to-fine patch distribution matching from a single target grid.

    The coarsest target plus seeded Gaussian noise (sigma = noise_sigma *
    std(target)) is optimised for steps_per_scale steps against that scale's
    target patches, upsampled bilinearly to the next side, and so on up to the
    finest side.
    """
    target = np.asarray(target, dtype=np.float64)
    if not np.all(np.isfinite(target)):
        raise ValueError("Target grid must be finite")
    pyramid = build_pyramid(target, cfg)

    noise_rng = make_rng(cfg.seed, NOISE_STREAM)
    coarsest = pyramid.targets[-1]
    sigma = cfg.noise_sigma * float(np.std(target))
    current = coarsest + sigma * noise_rng.standard_normal(coarsest.shape)

    initial_loss = _evaluate(current, extract_patch_array(coarsest, cfg.patch_side), cfg, 0)
    per_scale_final_loss: List[float] = []
    loss_trace: List[List[float]] = []
    stream = 1

    for scale_index in range(len(pyramid) - 1, -1, -1):
        side = pyramid.sides[scale_index]
        if current.shape[0] != side:
            current = resize_grid(current, side)
        target_patches = extract_patch_array(pyramid.targets[scale_index], cfg.patch_side)
        optimizer = Adam(lr=cfg.learning_rate) if cfg.optimizer == 'adam' else None

        scale_losses = []
        for _ in range(cfg.steps_per_scale):
            current, loss = patch_swd_step(current, target_patches, cfg, stream, optimizer)
            stream += 1
            if not np.isfinite(loss) or not np.all(np.isfinite(current)):
                raise DivergenceError(f"Non-finite loss at scale {scale_index} (side {side})",
                                      scale_index=scale_index)
            scale_losses.append(loss)

        final_loss = _evaluate(current, target_patches, cfg, EVAL_STREAM + scale_index)
        if not np.isfinite(final_loss):
            raise DivergenceError(f"Non-finite loss at scale {scale_index} (side {side})",
                                  scale_index=scale_index)
        per_scale_final_loss.append(final_loss)
        loss_trace.append(scale_losses)
        logger.debug(f"scale {scale_index} side {side}: final loss {final_loss:.6f}")

    return GenerationResult(
        output=current,
        per_scale_final_loss=per_scale_final_loss,
        initial_loss=initial_loss,
        seed=cfg.seed,
        loss_trace=loss_trace,
    )


def verify_def2_estimate(target: np.ndarray, generated: np.ndarray, patch_side: int) -> float:
    """
    Mean L1 distance between position-matched patches of two grids.

    This is the identity-permutation estimate of the subsequence distance and
    upper-bounds its infimum over permutations.
    """
    target = np.asarray(target, dtype=np.float64)
    generated = np.asarray(generated, dtype=np.float64)
    if target.shape != generated.shape:
        raise DimensionError(f"Grid shapes differ: {target.shape} vs {generated.shape}")
    diff = extract_patch_array(target, patch_side) - extract_patch_array(generated, patch_side)
    return float(np.abs(diff).sum(axis=1).mean())


class GPDMGenerator(BaseGenerator):
    """
    Generating by patch distribution matching.

    Expected config format (every key optional, see GeneratorConfig):
    {
        "finest_side": 45,
        "coarsest_side": 21,
        "scale_rate": 0.95,
        "patch_side": 11,
        "num_projections": 128,
        "learning_rate": 0.02,
        "steps_per_scale": 300,
        "noise_sigma": 1.0,
        "seed": 0,
        "optimizer": "adam"
    }
    """

    def __init__(self, config: Dict[str, Any] = None):
        super().__init__(config)
        self.generator_config = GeneratorConfig.from_dict(self.config)

    @property
    def base_seed(self) -> int:
        return self.generator_config.seed

    def run(self, target: np.ndarray, seed: Optional[int] = None) -> GenerationResult:
        cfg = self.generator_config if seed is None else replace(self.generator_config, seed=int(seed))
        return gpdm_generate(target, cfg)

    def generate(self, target: np.ndarray, seed: Optional[int] = None) -> np.ndarray:
        return self.run(target, seed).output

    def get_generator_info(self) -> Dict[str, str]:
        cfg = self.generator_config
        return {
            "generator_type": "GPDMGenerator",
            "description": "Coarse-to-fine sliced Wasserstein patch distribution matching",
            "pyramid_sides": str(pyramid_sides(cfg.finest_side, cfg.coarsest_side, cfg.scale_rate)),
            "patch_side": str(cfg.patch_side),
            "optimizer": cfg.optimizer,
        }


def augment_dataset(samples: Sequence[np.ndarray], per_sample_count: Union[int, Sequence[int]],
                    cfg: GeneratorConfig, jobs: int = 1) -> List[np.ndarray]:
    """Functional front end of GPDMGenerator.augment_dataset."""
    generator = GPDMGenerator(cfg.to_dict())
    return generator.augment_dataset(samples, per_sample_count, jobs=jobs)
