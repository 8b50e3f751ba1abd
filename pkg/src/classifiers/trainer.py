import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..utils.errors import DimensionError, DivergenceError, EmptyDatasetError
from ..utils.seeding import make_rng
from .adam import Adam
from .dataset import LabeledDataset
from .mlp import SHUFFLE_STREAM, MlpConfig, Model, loss_and_gradients

logger = logging.getLogger(__name__)

IMPROVEMENT_THRESHOLD = 1e-6


@dataclass
class TrainingResult:
    """Best-loss snapshot of a training run and its loss monitor."""

    model: Model
    loss_trace: List[float] = field(default_factory=list)
    best_loss: float = float('inf')
    epochs_run: int = 0
    updates: int = 0
    stopped_early: bool = False


def patience_for(cfg: MlpConfig, num_samples: int) -> int:
    """ceil(patience_fraction * N), at least 1."""
    return max(1, math.ceil(cfg.patience_fraction * num_samples - 1e-12))


def train(model: Model, data: LabeledDataset, cfg: MlpConfig) -> TrainingResult:
    """
    Minimise mean binary cross-entropy with Adam and early stopping.

    With patience_unit "updates" every mini-batch loss is monitored and training
    stops after patience_for(cfg, N) consecutive updates without an improvement
    of more than IMPROVEMENT_THRESHOLD. With "epochs" the full training loss is
    measured after every epoch and patience is counted in epochs. The returned
    model is the parameter state that produced the smallest monitored loss.
    """
    if data.num_samples < 1:
        raise EmptyDatasetError("Cannot train on an empty dataset")
    if data.num_features != model.layer_dims[0] or data.num_classes != model.layer_dims[-1]:
        raise DimensionError(
            f"Dataset shape ({data.num_features} features, {data.num_classes} classes) does not "
            f"match model dims {model.layer_dims}"
        )

    model = model.copy()
    result = TrainingResult(model=model.copy())
    if cfg.max_epochs == 0:
        return result

    optimizer = Adam(lr=cfg.learning_rate)
    patience = patience_for(cfg, data.num_samples)
    features, labels = data.features, data.labels
    params = model.params()

    best_monitored = float('inf')
    waited = 0
    per_update = cfg.patience_unit == 'updates'

    for epoch in range(cfg.max_epochs):
        order = make_rng(cfg.seed, SHUFFLE_STREAM, epoch).permutation(data.num_samples)
        for start in range(0, data.num_samples, cfg.batch_size):
            batch = order[start:start + cfg.batch_size]
            loss, grads = loss_and_gradients(model, features[batch], labels[batch])
            if not np.isfinite(loss):
                raise DivergenceError(f"Non-finite training loss in epoch {epoch}", epoch=epoch)

            if per_update:
                result.loss_trace.append(loss)
                if loss < result.best_loss:
                    result.best_loss = loss
                    result.model = model.copy()
                if loss < best_monitored - IMPROVEMENT_THRESHOLD:
                    best_monitored = loss
                    waited = 0
                else:
                    waited += 1

            optimizer.step(params, grads)
            result.updates += 1

            if per_update and waited >= patience:
                result.epochs_run = epoch + 1
                result.stopped_early = True
                logger.debug(f"Early stop after {result.updates} updates (patience {patience})")
                return result

        result.epochs_run = epoch + 1
        if not per_update:
            loss, _ = loss_and_gradients(model, features, labels)
            if not np.isfinite(loss):
                raise DivergenceError(f"Non-finite training loss in epoch {epoch}", epoch=epoch)
            result.loss_trace.append(loss)
            if loss < result.best_loss:
                result.best_loss = loss
                result.model = model.copy()
            if loss < best_monitored - IMPROVEMENT_THRESHOLD:
                best_monitored = loss
                waited = 0
            else:
                waited += 1
            if waited >= patience:
                result.stopped_early = True
                logger.debug(f"Early stop after {result.epochs_run} epochs (patience {patience})")
                return result

    return result
