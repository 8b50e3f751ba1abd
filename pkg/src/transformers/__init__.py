"""
Transformers Module

Dataset transformers between parsing and training.

Available Transformers:
- BaseTransformer: Abstract base class for all transformers
- LabelSampler: Label-weighted reduction and exact-size down-sampling
- FeatureStandardizer: Per-feature z-score fitted on a training split
- Synthesizer: Fixed-size synthetic set from a one-shot generator
- FoldSplitter: Stratified k-fold partition
"""

from .base_transformer import BaseTransformer
from .label_sampler import LabelSampler, label_weighted_sample, proportional_counts
from .standardizer import FeatureStandardizer
from .synthesizer import Synthesizer, allocate_counts
from .fold_splitter import FoldSplitter, make_split

__all__ = [
    'BaseTransformer',
    'LabelSampler',
    'label_weighted_sample',
    'proportional_counts',
    'FeatureStandardizer',
    'Synthesizer',
    'allocate_counts',
    'FoldSplitter',
    'make_split',
]
