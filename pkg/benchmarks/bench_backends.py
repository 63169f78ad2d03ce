"""Compare the numba and numpy convolution backends on realistic workloads.

Run from the repository root:

    python3 benchmarks/bench_backends.py [--batch-size 128] [--repeats 5]

Times the raw convolution kernels plus one full VAE and classifier training
step per backend. The numba kernels are explicit parallel loops and win when
many cores are available; the numpy path leans on BLAS and tends to win on
boxes with few cores. Numbers are medians over --repeats runs after a warmup
pass (which also absorbs JIT compilation for numba).
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from latentlens.nn import backend  # noqa: E402


def timed(fn, repeats):
    fn()  # warmup / JIT
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def bench_kernels(batch_size, repeats):
    from latentlens.nn.backend import (
        conv2d_backward_data,
        conv2d_backward_weights,
        conv2d_forward,
    )

    rng = np.random.default_rng(0)
    x = rng.standard_normal((batch_size, 16, 14, 14)).astype(np.float32)
    w = rng.standard_normal((32, 16, 3, 3)).astype(np.float32)
    y = conv2d_forward(x, w, 2, 1)
    dy = rng.standard_normal(y.shape).astype(np.float32)

    return {
        "conv2d_forward": timed(lambda: conv2d_forward(x, w, 2, 1), repeats),
        "conv2d_backward_weights": timed(
            lambda: conv2d_backward_weights(x, dy, 2, 1, 3), repeats),
        "conv2d_backward_data": timed(
            lambda: conv2d_backward_data(dy, w, 2, 1, (14, 14)), repeats),
    }


def bench_training_steps(batch_size, repeats):
    from latentlens.classifier import CnnClassifier
    from latentlens.nn import softmax
    from latentlens.vae import ConvVae

    rng = np.random.default_rng(1)
    images = rng.random((batch_size, 28, 28)).astype(np.float32)
    labels = rng.integers(0, 10, batch_size)

    vae = ConvVae(latent_dim=10)
    eps = rng.standard_normal((batch_size, 10))

    def vae_step():
        vae.loss_and_grads(images, eps)

    clf = CnnClassifier()
    onehot = np.eye(10, dtype=np.float32)[labels]

    def clf_step():
        logits = clf.logits(images)
        probs = softmax(logits.astype(np.float64))
        clf.backward(((probs - onehot) / batch_size).astype(np.float32))

    return {
        "vae_train_step": timed(vae_step, repeats),
        "classifier_train_step": timed(clf_step, repeats),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--batch-size", type=int, default=128)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    results = {}
    for name in backend.available_backends():
        backend.set_backend(name)
        results[name] = bench_kernels(args.batch_size, args.repeats)
        results[name].update(bench_training_steps(args.batch_size, args.repeats))

    backends = list(results)
    workloads = list(next(iter(results.values())))
    width = max(len(w) for w in workloads) + 2
    header = f"{'workload':<{width}}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'ratio':>10}"
    print(f"batch size {args.batch_size}, median of {args.repeats} runs, seconds")
    print(header)
    print("-" * len(header))
    for workload in workloads:
        row = f"{workload:<{width}}"
        for b in backends:
            row += f"{results[b][workload]:>12.4f}"
        if len(backends) == 2:
            a, b = (results[x][workload] for x in backends)
            row += f"{a / b:>10.2f}"
        print(row)


if __name__ == "__main__":
    main()
