#!/usr/bin/env python3
"""Build the bundled MNIST subset used by the acceptance suite.

Source: the `mnist` npm package (MIT, github.com/cazala/mnist), which ships
10,000 MNIST digits as JSON arrays of byte/255 pixels rounded to 3 decimals.
Pixels are mapped back to bytes with round(p * 255), the digits are shuffled
with a fixed seed, and the first N are written as gzipped IDX files.

Usage: npm pack mnist && tar xzf mnist-*.tgz
       python3 scripts/make_mnist_subset.py package/src/digits data 4000
"""
import gzip
import json
import struct
import sys

import numpy as np


def main(src, out, n):
    images, labels = [], []
    for digit in range(10):
        with open(f"{src}/{digit}.json") as fh:
            flat = np.asarray(json.load(fh)["data"], dtype=np.float64)
        pix = np.rint(flat * 255.0).astype(np.uint8).reshape(-1, 784)
        images.append(pix)
        labels.append(np.full(len(pix), digit, dtype=np.uint8))
    images = np.concatenate(images)
    labels = np.concatenate(labels)
    order = np.random.default_rng(20160101).permutation(len(labels))[:n]
    images, labels = images[order], labels[order]
    with gzip.GzipFile(f"{out}/mnist-subset-images-idx3-ubyte.gz", "wb", mtime=0) as fh:
        fh.write(struct.pack(">IIII", 0x803, n, 28, 28))
        fh.write(images.tobytes())
    with gzip.GzipFile(f"{out}/mnist-subset-labels-idx1-ubyte.gz", "wb", mtime=0) as fh:
        fh.write(struct.pack(">II", 0x801, n))
        fh.write(labels.tobytes())


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2], int(sys.argv[3]))
