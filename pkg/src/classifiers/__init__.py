"""
Classifiers Module

Dense ReLU classifier with sigmoid outputs, trained from scratch with Adam,
plus one-vs-rest metrics and confusion matrices.
"""

from .adam import Adam
from .dataset import LabeledDataset
from .mlp import (
    MlpConfig,
    Model,
    init_model,
    forward,
    predict,
    bce_loss,
    loss_and_gradients,
    gradient_check,
)
from .trainer import TrainingResult, patience_for, train
from .metrics import METRIC_NAMES, ConfusionMatrix, Metrics, compute_metrics
from .checkpoint import save_checkpoint, load_checkpoint

__all__ = [
    'Adam',
    'LabeledDataset',
    'MlpConfig',
    'Model',
    'init_model',
    'forward',
    'predict',
    'bce_loss',
    'loss_and_gradients',
    'gradient_check',
    'TrainingResult',
    'patience_for',
    'train',
    'METRIC_NAMES',
    'ConfusionMatrix',
    'Metrics',
    'compute_metrics',
    'save_checkpoint',
    'load_checkpoint',
]
