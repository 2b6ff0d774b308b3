from .core import (
    Adam,
    Dense,
    LayerNorm,
    LeakyRelu,
    Relu,
    SelfAttention,
    Sigmoid,
    Tanh,
    load_checkpoint,
    mse_loss,
    positional_encoding,
    save_checkpoint,
    softmax_xent,
)
from .rvq import Codebook, RvqAutoencoder, gather_neighbors, rvq_quantize, rvq_train_step

__all__ = [
    "Adam",
    "Codebook",
    "Dense",
    "LayerNorm",
    "LeakyRelu",
    "Relu",
    "RvqAutoencoder",
    "SelfAttention",
    "Sigmoid",
    "Tanh",
    "gather_neighbors",
    "load_checkpoint",
    "mse_loss",
    "positional_encoding",
    "rvq_quantize",
    "rvq_train_step",
    "save_checkpoint",
    "softmax_xent",
]
