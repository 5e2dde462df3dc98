#!/usr/bin/env python3
"""Materialize the bundled 28x28 digit corpus as MNIST-style IDX files.

Source: the classic 8x8 handwritten-digit set shipped with scikit-learn
(1797 samples, 10 classes, gray levels 0..16), bilinearly upsampled to
28x28 and quantized to uint8. First 1437 samples form the train split,
the remaining 360 the test split. Output files follow the MNIST naming
scheme so any loader pointed at this directory works unchanged.
"""
import struct
import sys

import numpy as np
from sklearn.datasets import load_digits


def upsample28(img8: np.ndarray) -> np.ndarray:
    # bilinear resize 8x8 -> 28x28 on the pixel-center grid
    src = img8.astype(np.float64) * (255.0 / 16.0)
    ys = (np.arange(28) + 0.5) * (8.0 / 28.0) - 0.5
    xs = ys
    y0 = np.clip(np.floor(ys).astype(int), 0, 7)
    x0 = np.clip(np.floor(xs).astype(int), 0, 7)
    y1 = np.clip(y0 + 1, 0, 7)
    x1 = np.clip(x0 + 1, 0, 7)
    wy = np.clip(ys - y0, 0.0, 1.0)[:, None]
    wx = np.clip(xs - x0, 0.0, 1.0)[None, :]
    out = (src[np.ix_(y0, x0)] * (1 - wy) * (1 - wx)
           + src[np.ix_(y0, x1)] * (1 - wy) * wx
           + src[np.ix_(y1, x0)] * wy * (1 - wx)
           + src[np.ix_(y1, x1)] * wy * wx)
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def write_idx_images(path: str, images: np.ndarray) -> None:
    n, rows, cols = images.shape
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, n, rows, cols))
        f.write(images.tobytes())


def write_idx_labels(path: str, labels: np.ndarray) -> None:
    with open(path, "wb") as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(labels.astype(np.uint8).tobytes())


def main(out_dir: str) -> None:
    x, y = load_digits(return_X_y=True)
    imgs = np.stack([upsample28(v.reshape(8, 8)) for v in x])
    split = 1437
    write_idx_images(f"{out_dir}/train-images-idx3-ubyte", imgs[:split])
    write_idx_labels(f"{out_dir}/train-labels-idx1-ubyte", y[:split])
    write_idx_images(f"{out_dir}/t10k-images-idx3-ubyte", imgs[split:])
    write_idx_labels(f"{out_dir}/t10k-labels-idx1-ubyte", y[split:])
    print(f"wrote {split} train / {len(y) - split} test images to {out_dir}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
