"""Regenerates the scikit-image SSIM values frozen in oracles.hpp.

The image pairs come from the same splitmix64 hash as ssim_pair() in
oracles.hpp, so both sides see bit-identical float32 inputs.
"""

import numpy as np
from skimage.metrics import structural_similarity

MASK64 = (1 << 64) - 1


def splitmix64(x):
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def hash_plane(seed, count):
    vals = [(splitmix64((seed << 32) | i) >> 40) for i in range(count)]
    return (np.array(vals, dtype=np.float64) * 2.0**-24).astype(np.float32)


def ssim_pair(k):
    w = 11 + (k * 7) % 23
    h = 11 + (k * 5) % 19
    c = 1 + k % 3
    n = w * h * c
    a = hash_plane(2 * k, n)
    u = hash_plane(2 * k + 1, n)
    kind = k % 4
    if kind == 0:
        b = u
    elif kind == 1:
        b = np.float32(1.0) - a
    elif kind == 2:
        b = a + np.float32(0.05)
    else:
        b = (a + u) * np.float32(0.5)
    return a.reshape(h, w, c), b.reshape(h, w, c)


def main():
    for k in range(20):
        a, b = ssim_pair(k)
        value = structural_similarity(
            a.astype(np.float64), b.astype(np.float64), data_range=1.0, channel_axis=2,
            gaussian_weights=True, sigma=1.5, use_sample_covariance=False)
        print(f"    {float(value)!r},  // pair {k}: {a.shape[1]}x{a.shape[0]}x{a.shape[2]}")


if __name__ == "__main__":
    main()
