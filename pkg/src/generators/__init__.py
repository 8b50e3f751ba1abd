"""
Generators Module

One-shot generators that synthesise new grids from a single target grid.

Available Generators:
- BaseGenerator: Abstract base class for all generators
- GPDMGenerator: Coarse-to-fine sliced Wasserstein patch distribution matching
"""

from .base_generator import BaseGenerator
from .patches import extract_patch_array, extract_patches, scatter_add_patches
from .pyramid import ScalePyramid, pyramid_sides, resize_grid
from .gpdm_generator import (
    GeneratorConfig,
    GenerationResult,
    GPDMGenerator,
    build_pyramid,
    patch_swd_step,
    gpdm_generate,
    augment_dataset,
    verify_def2_estimate,
)

__all__ = [
    'BaseGenerator',
    'GPDMGenerator',
    'GeneratorConfig',
    'GenerationResult',
    'ScalePyramid',
    'build_pyramid',
    'pyramid_sides',
    'resize_grid',
    'extract_patch_array',
    'extract_patches',
    'scatter_add_patches',
    'patch_swd_step',
    'gpdm_generate',
    'augment_dataset',
    'verify_def2_estimate',
]
