import logging
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..utils.errors import ConfigurationError, DimensionError
from ..utils.seeding import make_rng

logger = logging.getLogger(__name__)

PATIENCE_UNITS = ('updates', 'epochs')

# seed streams
INIT_STREAM = 0
SHUFFLE_STREAM = 1
CHECK_STREAM = 2


@dataclass(frozen=True)
class MlpConfig:
    """Architecture and training hyperparameters of the spectrum classifier."""

    input_dim: int = 2025
    hidden: Tuple[int, ...] = (128, 128, 128)
    output_dim: int = 4
    learning_rate: float = 1e-4
    batch_size: int = 5
    patience_fraction: float = 0.02
    max_epochs: int = 500
    seed: int = 0
    patience_unit: str = 'updates'

    def __post_init__(self):
        object.__setattr__(self, 'hidden', tuple(int(h) for h in self.hidden))
        for name in ('input_dim', 'output_dim', 'batch_size'):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if any(h < 1 for h in self.hidden):
            raise ConfigurationError(f"hidden layer widths must be positive, got {list(self.hidden)}")
        if not 0.0 < self.patience_fraction <= 1.0:
            raise ConfigurationError(f"patience_fraction must lie in (0, 1], got {self.patience_fraction}")
        if self.max_epochs < 0:
            raise ConfigurationError(f"max_epochs must be non-negative, got {self.max_epochs}")
        if self.learning_rate <= 0:
            raise ConfigurationError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.patience_unit not in PATIENCE_UNITS:
            raise ConfigurationError(
                f"patience_unit must be one of {PATIENCE_UNITS}, got {self.patience_unit!r}"
            )

    @property
    def layer_dims(self) -> List[int]:
        return [self.input_dim, *self.hidden, self.output_dim]

    @classmethod
    def from_dict(cls, config: Optional[Dict[str, Any]] = None) -> 'MlpConfig':
        config = dict(config or {})
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(config) - known)
        if unknown:
            logger.warning(f"Ignoring unknown classifier keys: {unknown}")
        return cls(**{k: v for k, v in config.items() if k in known})

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['hidden'] = list(self.hidden)
        return data


@dataclass
class Model:
    """Dense ReLU network with a sigmoid output layer; weights are (fan_in, fan_out)."""

    weights: List[np.ndarray]
    biases: List[np.ndarray]
    seed: int = 0
    _dims: List[int] = field(init=False, repr=False, default_factory=list)

    def __post_init__(self):
        if len(self.weights) != len(self.biases) or not self.weights:
            raise DimensionError("Model needs one bias vector per weight matrix")
        dims = [self.weights[0].shape[0]]
        for w, b in zip(self.weights, self.biases):
            if w.shape[0] != dims[-1] or b.shape != (w.shape[1],):
                raise DimensionError(f"Inconsistent layer shapes {w.shape} / {b.shape}")
            dims.append(w.shape[1])
        self._dims = dims

    @property
    def layer_dims(self) -> List[int]:
        return list(self._dims)

    @property
    def parameter_count(self) -> int:
        return int(sum(w.size + b.size for w, b in zip(self.weights, self.biases)))

    def params(self) -> Dict[str, np.ndarray]:
        """Named views of the parameters, in the layout Adam.step updates in place."""
        named = {}
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            named[f"W{i}"] = w
            named[f"b{i}"] = b
        return named

    def copy(self) -> 'Model':
        return Model([w.copy() for w in self.weights], [b.copy() for b in self.biases], self.seed)

    def equals(self, other: 'Model') -> bool:
        if self.layer_dims != other.layer_dims:
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.params().values(), other.params().values()))


def init_model(cfg: MlpConfig) -> Model:
    """Glorot-uniform weights, zero biases, drawn from the seed's init stream."""
    rng = make_rng(cfg.seed, INIT_STREAM)
    dims = cfg.layer_dims
    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return Model(weights, biases, cfg.seed)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    # split by sign so exp never overflows
    out = np.empty_like(z)
    positive = z >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-z[positive]))
    exp_z = np.exp(z[~positive])
    out[~positive] = exp_z / (1.0 + exp_z)
    return out


def _check_batch(model: Model, batch: np.ndarray) -> np.ndarray:
    batch = np.asarray(batch, dtype=np.float64)
    if batch.ndim == 1:
        batch = batch[None, :]
    if batch.ndim != 2 or batch.shape[1] != model.layer_dims[0]:
        raise DimensionError(
            f"Expected batch of width {model.layer_dims[0]}, got shape {batch.shape}"
        )
    return batch


def _forward_cache(model: Model, batch: np.ndarray) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    activations = [batch]
    pre_activations = []
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = activations[-1] @ w + b
        pre_activations.append(z)
        if i < len(model.weights) - 1:
            activations.append(np.maximum(z, 0.0))
    return activations, pre_activations


def forward(model: Model, batch: np.ndarray) -> np.ndarray:
    """Elementwise sigmoid output probabilities, one row per input row."""
    batch = _check_batch(model, batch)
    _, pre_activations = _forward_cache(model, batch)
    return _sigmoid(pre_activations[-1])


def predict(model: Model, features: np.ndarray) -> np.ndarray:
    """Class index per row: argmax over the output units."""
    return np.argmax(forward(model, features), axis=1)


def bce_loss(logits: np.ndarray, targets: np.ndarray) -> float:
    """Mean binary cross-entropy over every output unit, computed from logits."""
    return float(np.mean(np.logaddexp(0.0, logits) - targets * logits))


def loss_and_gradients(model: Model, batch: np.ndarray,
                       targets: np.ndarray) -> Tuple[float, Dict[str, np.ndarray]]:
    """
    Mean binary cross-entropy of a batch and its gradient for every parameter.

    Returns:
        (loss, gradients keyed like Model.params())
    """
    batch = _check_batch(model, batch)
    targets = np.asarray(targets, dtype=np.float64)
    if targets.shape != (batch.shape[0], model.layer_dims[-1]):
        raise DimensionError(
            f"Expected targets of shape {(batch.shape[0], model.layer_dims[-1])}, got {targets.shape}"
        )

    activations, pre_activations = _forward_cache(model, batch)
    logits = pre_activations[-1]
    loss = bce_loss(logits, targets)

    grads: Dict[str, np.ndarray] = {}
    delta = (_sigmoid(logits) - targets) / targets.size
    for i in range(len(model.weights) - 1, -1, -1):
        grads[f"W{i}"] = activations[i].T @ delta
        grads[f"b{i}"] = delta.sum(axis=0)
        if i > 0:
            delta = (delta @ model.weights[i].T) * (pre_activations[i - 1] > 0)
    return loss, grads


def _nudge_kinks(model: Model, batch: np.ndarray, margin: float, rng: np.random.Generator,
                 max_rounds: int = 100) -> Model:
    """Shift hidden biases until no pre-activation sits within margin of the ReLU kink."""
    model = model.copy()
    for _ in range(max_rounds):
        _, pre_activations = _forward_cache(model, batch)
        tied = False
        for i, z in enumerate(pre_activations[:-1]):
            units = np.any(np.abs(z) < margin, axis=0)
            if np.any(units):
                tied = True
                shift = rng.uniform(5 * margin, 10 * margin, size=int(units.sum()))
                model.biases[i][units] += shift * rng.choice([-1.0, 1.0], size=shift.size)
        if not tied:
            return model
    logger.warning("Could not move every pre-activation away from the ReLU kink")
    return model


def gradient_check(model: Model, batch: np.ndarray, targets: Optional[np.ndarray] = None,
                   h: float = 1e-5, seed: int = 0) -> float:
    """
    Compare backprop gradients with central finite differences.

    Hidden pre-activations closer than 10*h to zero are nudged away first, and
    for an all-zero batch only bias gradients are measured.

    Returns:
        Maximum relative error |analytic - numeric| / max(|analytic| + |numeric|, 1e-6)
    """
    batch = _check_batch(model, batch)
    rng = make_rng(seed, CHECK_STREAM)
    if targets is None:
        classes = rng.integers(0, model.layer_dims[-1], size=batch.shape[0])
        targets = np.eye(model.layer_dims[-1])[classes]

    model = _nudge_kinks(model, batch, margin=10 * h, rng=rng)
    _, analytic = loss_and_gradients(model, batch, targets)
    zero_input = not np.any(batch)

    worst = 0.0
    for name, param in model.params().items():
        if zero_input and name.startswith('W'):
            continue
        flat = param.reshape(-1)
        numeric = np.empty_like(flat)
        for j in range(flat.size):
            original = flat[j]
            flat[j] = original + h
            plus, _ = loss_and_gradients(model, batch, targets)
            flat[j] = original - h
            minus, _ = loss_and_gradients(model, batch, targets)
            flat[j] = original
            numeric[j] = (plus - minus) / (2 * h)
        exact = analytic[name].reshape(-1)
        error = np.abs(exact - numeric) / np.maximum(np.abs(exact) + np.abs(numeric), 1e-6)
        worst = max(worst, float(error.max(initial=0.0)))
    return worst
