"""Minimal double-precision neural kernel with hand-written backprop.

Layers cache their forward inputs and expose params()/grads() in a stable
order; backward(dout) returns the input gradient and fills the parameter
gradients. Everything is float64 numpy so analytic gradients can be verified
against central finite differences tightly.
"""

from __future__ import annotations

import json
import struct

import numpy as np


class Dense:
    """Affine map y = x W + b on the last axis."""

    def __init__(self, d_in: int, d_out: int, rng, scale: float | None = None):
        if scale is None:
            scale = 1.0 / np.sqrt(d_in)
        self.W = rng.normal(0.0, scale, size=(d_in, d_out))
        self.b = np.zeros(d_out)
        self.dW = np.zeros_like(self.W)
        self.db = np.zeros_like(self.b)
        self._x = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._x = x
        return x @ self.W + self.b

    def backward(self, dout: np.ndarray) -> np.ndarray:
        x2 = self._x.reshape(-1, self._x.shape[-1])
        d2 = dout.reshape(-1, dout.shape[-1])
        self.dW += x2.T @ d2
        self.db += d2.sum(axis=0)
        return dout @ self.W.T

    def params(self):
        return [self.W, self.b]

    def grads(self):
        return [self.dW, self.db]


class LayerNorm:
    """Per-row normalization with learned gain and shift."""

    def __init__(self, dim: int, eps: float = 1e-6):
        self.gamma = np.ones(dim)
        self.beta = np.zeros(dim)
        self.dgamma = np.zeros_like(self.gamma)
        self.dbeta = np.zeros_like(self.beta)
        self.eps = eps
        self._cache = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        mu = x.mean(axis=-1, keepdims=True)
        var = x.var(axis=-1, keepdims=True)
        inv = 1.0 / np.sqrt(var + self.eps)
        xhat = (x - mu) * inv
        self._cache = (xhat, inv)
        return xhat * self.gamma + self.beta

    def backward(self, dout: np.ndarray) -> np.ndarray:
        xhat, inv = self._cache
        d = xhat.shape[-1]
        flat_x = xhat.reshape(-1, d)
        flat_d = dout.reshape(-1, d)
        self.dgamma += (flat_d * flat_x).sum(axis=0)
        self.dbeta += flat_d.sum(axis=0)
        dxhat = dout * self.gamma
        mean_d = dxhat.mean(axis=-1, keepdims=True)
        mean_dx = (dxhat * xhat).mean(axis=-1, keepdims=True)
        return inv * (dxhat - mean_d - xhat * mean_dx)

    def params(self):
        return [self.gamma, self.beta]

    def grads(self):
        return [self.dgamma, self.dbeta]


class _Activation:
    def params(self):
        return []

    def grads(self):
        return []


class Tanh(_Activation):
    def forward(self, x):
        self._y = np.tanh(x)
        return self._y

    def backward(self, dout):
        return dout * (1.0 - self._y**2)


class Relu(_Activation):
    def forward(self, x):
        self._mask = x > 0
        return np.where(self._mask, x, 0.0)

    def backward(self, dout):
        return np.where(self._mask, dout, 0.0)


class LeakyRelu(_Activation):
    def __init__(self, slope: float = 0.01):
        self.slope = slope

    def forward(self, x):
        self._mask = x > 0
        return np.where(self._mask, x, self.slope * x)

    def backward(self, dout):
        return np.where(self._mask, dout, self.slope * dout)


class Sigmoid(_Activation):
    def forward(self, x):
        self._y = 1.0 / (1.0 + np.exp(-x))
        return self._y

    def backward(self, dout):
        return dout * self._y * (1.0 - self._y)


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


class SelfAttention:
    """Single-head scaled dot-product self-attention over a token sequence."""

    def __init__(self, dim: int, rng):
        scale = 1.0 / np.sqrt(dim)
        self.Wq = rng.normal(0.0, scale, size=(dim, dim))
        self.Wk = rng.normal(0.0, scale, size=(dim, dim))
        self.Wv = rng.normal(0.0, scale, size=(dim, dim))
        self.Wo = rng.normal(0.0, scale, size=(dim, dim))
        self.dWq = np.zeros_like(self.Wq)
        self.dWk = np.zeros_like(self.Wk)
        self.dWv = np.zeros_like(self.Wv)
        self.dWo = np.zeros_like(self.Wo)
        self.dim = dim
        self._cache = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        # x: (l, d) or (B, l, d)
        q = x @ self.Wq
        k = x @ self.Wk
        v = x @ self.Wv
        scores = q @ np.swapaxes(k, -1, -2) / np.sqrt(self.dim)
        attn = _softmax(scores)
        ctx = attn @ v
        out = ctx @ self.Wo
        self._cache = (x, q, k, v, attn, ctx)
        return out

    def backward(self, dout: np.ndarray) -> np.ndarray:
        x, q, k, v, attn, ctx = self._cache
        d = self.dim

        ctx2 = ctx.reshape(-1, d)
        dout2 = dout.reshape(-1, d)
        self.dWo += ctx2.T @ dout2
        dctx = dout @ self.Wo.T

        dattn = dctx @ np.swapaxes(v, -1, -2)
        dv = np.swapaxes(attn, -1, -2) @ dctx
        # softmax rows: ds = attn * (dattn - sum(dattn * attn))
        dscores = attn * (dattn - np.sum(dattn * attn, axis=-1, keepdims=True))
        dscores = dscores / np.sqrt(d)
        dq = dscores @ k
        dk = np.swapaxes(dscores, -1, -2) @ q

        x2 = x.reshape(-1, d)
        self.dWq += x2.T @ dq.reshape(-1, d)
        self.dWk += x2.T @ dk.reshape(-1, d)
        self.dWv += x2.T @ dv.reshape(-1, d)
        return dq @ self.Wq.T + dk @ self.Wk.T + dv @ self.Wv.T

    def params(self):
        return [self.Wq, self.Wk, self.Wv, self.Wo]

    def grads(self):
        return [self.dWq, self.dWk, self.dWv, self.dWo]


def softmax_xent(logits: np.ndarray, targets: np.ndarray):
    """Mean cross-entropy over rows; returns (loss, dlogits)."""
    if logits.ndim != 2 or targets.shape[0] != logits.shape[0]:
        raise ValueError("logits must be (rows, classes) with one target per row")
    probs = _softmax(logits)
    rows = np.arange(logits.shape[0])
    picked = np.clip(probs[rows, targets], 1e-300, None)
    loss = -np.log(picked).mean()
    dlogits = probs.copy()
    dlogits[rows, targets] -= 1.0
    dlogits /= logits.shape[0]
    return loss, dlogits


def mse_loss(pred: np.ndarray, target: np.ndarray):
    """Mean squared error; returns (loss, dpred)."""
    if pred.shape != target.shape:
        raise ValueError(f"shape mismatch {pred.shape} vs {target.shape}")
    diff = pred - target
    loss = float(np.mean(diff**2))
    return loss, 2.0 * diff / diff.size


class Adam:
    """Bias-corrected Adam over a fixed list of parameter arrays (in place)."""

    def __init__(self, params: list, lr: float = 1e-3, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, grads: list) -> None:
        if len(grads) != len(self.params):
            raise ValueError("gradient list does not match parameter list")
        self.t += 1
        b1t = 1.0 - self.beta1**self.t
        b2t = 1.0 - self.beta2**self.t
        for p, g, m, v in zip(self.params, grads, self.m, self.v):
            if p.shape != g.shape:
                raise ValueError(f"shape mismatch {p.shape} vs {g.shape}")
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= self.lr * (m / b1t) / (np.sqrt(v / b2t) + self.eps)


def positional_encoding(length: int, dim: int) -> np.ndarray:
    """Interleaved sine/cosine table of shape (length, dim)."""
    if dim % 2 != 0:
        raise ValueError("positional encoding dimension must be even")
    pos = np.arange(length)[:, None]
    i = np.arange(dim // 2)[None, :]
    angles = pos / np.power(10000.0, 2.0 * i / dim)
    table = np.empty((length, dim))
    table[:, 0::2] = np.sin(angles)
    table[:, 1::2] = np.cos(angles)
    return table


# ---------------------------------------------------------------------------
# Checkpoints: magic, version, JSON manifest of (name, shape), float64 blob.
# ---------------------------------------------------------------------------

_MAGIC = b"FFNN"
_VERSION = 1


def save_checkpoint(path, named_params: dict) -> None:
    manifest = [[name, list(arr.shape)] for name, arr in named_params.items()]
    manifest_bytes = json.dumps(manifest, sort_keys=False).encode("utf-8")
    with open(path, "wb") as f:
        f.write(_MAGIC)
        f.write(struct.pack("<I", _VERSION))
        f.write(struct.pack("<I", len(manifest_bytes)))
        f.write(manifest_bytes)
        for _, arr in named_params.items():
            f.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def load_checkpoint(path) -> dict:
    with open(path, "rb") as f:
        if f.read(4) != _MAGIC:
            raise ValueError(f"{path}: not a checkpoint file")
        (version,) = struct.unpack("<I", f.read(4))
        if version != _VERSION:
            raise ValueError(f"{path}: unsupported checkpoint version {version}")
        (mlen,) = struct.unpack("<I", f.read(4))
        manifest = json.loads(f.read(mlen).decode("utf-8"))
        out = {}
        for name, shape in manifest:
            count = int(np.prod(shape)) if shape else 1
            data = np.frombuffer(f.read(8 * count), dtype="<f8").reshape(shape)
            out[name] = data.astype(float)
        return out
