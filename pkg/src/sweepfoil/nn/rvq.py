"""Residual vector quantization of local boundary neighborhoods.

Each point's neighborhood vector is projected to the code dimension and
quantized layer by layer: the first codebook layer picks the nearest code,
every deeper layer quantizes the remaining residual, and the quantized
embedding is the sum of the picked codes. Layers past the first reserve a
frozen zero code so adding depth can never increase the residual. Training
reconstructs the neighborhoods through a small residual decoder with a
straight-through gradient into the projection.
"""

from __future__ import annotations

import numpy as np

from .core import Adam, Dense, Tanh, mse_loss

RECON_WEIGHT = 1.00
CODEBOOK_WEIGHT = 0.01
COMMITMENT_BETA = 0.25


def gather_neighbors(points: np.ndarray, k: int) -> np.ndarray:
    """Cyclic k-point neighborhoods, flattened to (l, 2k)."""
    if k % 2 != 1:
        raise ValueError("neighborhood size k must be odd")
    pts = np.asarray(points, dtype=float)
    l = pts.shape[0]
    half = k // 2
    idx = (np.arange(l)[:, None] + np.arange(-half, half + 1)[None, :]) % l
    return pts[idx].reshape(l, 2 * k)


class Codebook:
    """Stacked code tables with per-code usage counters."""

    def __init__(self, depth: int, codes: int, dim: int, rng, init_scale: float = 0.1):
        if depth < 1 or codes < 2:
            raise ValueError("codebook needs depth >= 1 and at least 2 codes")
        self.tables = [rng.normal(0.0, init_scale, size=(codes, dim)) for _ in range(depth)]
        for table in self.tables[1:]:
            table[0] = 0.0  # frozen zero code: depth never hurts
        self.usage = [np.zeros(codes, dtype=np.int64) for _ in range(depth)]

    @property
    def depth(self) -> int:
        return len(self.tables)

    @property
    def codes(self) -> int:
        return self.tables[0].shape[0]

    @property
    def dim(self) -> int:
        return self.tables[0].shape[1]

    def reset_usage(self) -> None:
        for u in self.usage:
            u[:] = 0

    def reseed_dead_codes(self, residual_pool: np.ndarray, rng) -> int:
        """Replace unused codes with random pool vectors; returns the count."""
        reseeded = 0
        for layer, (table, usage) in enumerate(zip(self.tables, self.usage)):
            dead = np.nonzero(usage == 0)[0]
            for idx in dead:
                if layer > 0 and idx == 0:
                    continue  # keep the frozen zero code
                pick = residual_pool[rng.integers(0, residual_pool.shape[0])]
                table[idx] = pick + rng.normal(0.0, 1e-4, size=table.shape[1])
                reseeded += 1
        return reseeded


def rvq_quantize(o: np.ndarray, codebook: Codebook, count_usage: bool = False):
    """Hierarchical nearest-code quantization.

    Returns (codes (B, depth), quantized (B, dim), codebook_loss,
    commitment_loss, residual_inputs, chosen); the quantized embedding equals
    the sum of the chosen codes exactly. The straight-through contract is the
    caller's: gradients w.r.t. the quantized output apply to o unchanged.
    """
    o = np.asarray(o, dtype=float)
    squeeze = o.ndim == 1
    if squeeze:
        o = o[None, :]
    if codebook.depth < 1 or codebook.codes < 1:
        raise ValueError("empty codebook")
    batch = o.shape[0]
    residual = o.copy()
    quantized = np.zeros_like(o)
    codes = np.empty((batch, codebook.depth), dtype=np.int64)
    residual_inputs = []
    chosen_list = []
    cb_loss = 0.0
    commit_loss = 0.0
    for layer, table in enumerate(codebook.tables):
        d2 = np.sum(residual**2, axis=1, keepdims=True) - 2 * residual @ table.T + np.sum(
            table**2, axis=1
        )
        idx = np.argmin(d2, axis=1)
        chosen = table[idx]
        residual_inputs.append(residual.copy())
        chosen_list.append(chosen)
        codes[:, layer] = idx
        quantized += chosen
        cb_loss += float(np.mean((residual - chosen) ** 2))
        commit_loss += float(np.mean((residual - chosen) ** 2))
        residual = residual - chosen
        if count_usage:
            np.add.at(codebook.usage[layer], idx, 1)
    if squeeze:
        return codes[0], quantized[0], cb_loss, commit_loss, residual_inputs, chosen_list
    return codes, quantized, cb_loss, commit_loss, residual_inputs, chosen_list


class _ResBlock:
    """y = x + W2 tanh(W1 x), the residual unit of the reconstruction decoder."""

    def __init__(self, dim: int, rng):
        self.fc1 = Dense(dim, dim, rng)
        self.act = Tanh()
        self.fc2 = Dense(dim, dim, rng)

    def forward(self, x):
        return x + self.fc2.forward(self.act.forward(self.fc1.forward(x)))

    def backward(self, dout):
        return dout + self.fc1.backward(self.act.backward(self.fc2.backward(dout)))

    def params(self):
        return self.fc1.params() + self.fc2.params()

    def grads(self):
        return self.fc1.grads() + self.fc2.grads()


class RvqAutoencoder:
    """Projection, stacked codebooks, and the neighborhood reconstruction net."""

    def __init__(self, k: int, d_code: int, codes: int, depth: int, hidden: int, rng):
        self.k = k
        self.proj = Dense(2 * k, d_code, rng)
        self.codebook = Codebook(depth, codes, d_code, rng)
        self.dec_in = Dense(d_code, hidden, rng)
        self.dec_act = Tanh()
        self.blocks = [_ResBlock(hidden, rng), _ResBlock(hidden, rng)]
        self.dec_out = Dense(hidden, 2 * k, rng)

    def encode(self, o: np.ndarray, count_usage: bool = False):
        e = self.proj.forward(o)
        return rvq_quantize(e, self.codebook, count_usage=count_usage)

    def embed(self, o: np.ndarray) -> np.ndarray:
        """Quantized point embeddings for downstream use (no gradients)."""
        _, quantized, *_ = self.encode(o)
        return quantized

    def decode(self, quantized: np.ndarray) -> np.ndarray:
        h = self.dec_act.forward(self.dec_in.forward(quantized))
        for blk in self.blocks:
            h = blk.forward(h)
        return self.dec_out.forward(h)

    def layers(self):
        return [self.proj, self.dec_in, *self.blocks, self.dec_out]

    def params(self):
        out = []
        for layer in self.layers():
            out.extend(layer.params())
        out.extend(self.codebook.tables)
        return out

    def grads_template(self):
        return [np.zeros_like(p) for p in self.params()]

    def named_params(self) -> dict:
        names = {}
        for i, layer in enumerate(self.layers()):
            for j, p in enumerate(layer.params()):
                names[f"layer{i}.p{j}"] = p
        for l, table in enumerate(self.codebook.tables):
            names[f"codebook.{l}"] = table
        return names


def rvq_train_step(
    model: RvqAutoencoder,
    batch_o: np.ndarray,
    adam: Adam,
    weights: tuple = (RECON_WEIGHT, CODEBOOK_WEIGHT),
    commitment: float = COMMITMENT_BETA,
) -> dict:
    """One optimization step; returns the loss terms.

    total = weights[0] * reconstruction + weights[1] * (codebook + beta * commitment)
    with the straight-through estimator carrying reconstruction gradients
    through the quantizer into the projection.
    """
    if batch_o.size == 0:
        raise ValueError("empty batch")
    w_recon, w_cb = weights
    e = model.proj.forward(batch_o)
    codes, quantized, cb_loss, commit_loss, residual_inputs, chosen_list = rvq_quantize(
        e, model.codebook, count_usage=True
    )
    recon = model.decode(quantized)
    recon_loss, drecon = mse_loss(recon, batch_o)

    # Decoder backward.
    d = model.dec_out.backward(w_recon * drecon)
    for blk in reversed(model.blocks):
        d = blk.backward(d)
    dquant = model.dec_in.backward(model.dec_act.backward(d))

    # Straight-through into the projection, plus the commitment pull.
    de = dquant.copy()
    numel = e.size
    for res_in, chosen in zip(residual_inputs, chosen_list):
        de += w_cb * commitment * 2.0 * (res_in - chosen) / numel

    # Codebook rows move toward their assigned residuals.
    table_grads = []
    for layer, (table, res_in, chosen) in enumerate(
        zip(model.codebook.tables, residual_inputs, chosen_list)
    ):
        grad_table = np.zeros_like(table)
        np.add.at(grad_table, codes[:, layer], w_cb * 2.0 * (chosen - res_in) / numel)
        if layer > 0:
            grad_table[0] = 0.0
        table_grads.append(grad_table)

    model.proj.backward(de)

    grads = []
    for layer in model.layers():
        grads.extend(layer.grads())
    grads.extend(table_grads)
    adam.step(grads)
    for layer in model.layers():
        for g in layer.grads():
            g[:] = 0.0
    for table in model.codebook.tables[1:]:
        table[0] = 0.0  # re-pin the frozen zero code against numeric drift
    total = w_recon * recon_loss + w_cb * (cb_loss + commitment * commit_loss)
    return {
        "total": total,
        "recon": recon_loss,
        "codebook": cb_loss,
        "commitment": commit_loss,
    }
