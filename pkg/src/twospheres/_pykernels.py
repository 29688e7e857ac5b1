"""Numpy implementations of the Lloyd kernels, used when the extension is absent."""
import numpy as np


def assign_accumulate(points, c1, c2):
    d1 = np.einsum("ij,ij->i", points - c1, points - c1)
    d2 = np.einsum("ij,ij->i", points - c2, points - c2)
    labels = (d1 > d2).astype(np.int8)
    second = labels.astype(bool)
    sums = np.stack([points[~second].sum(axis=0), points[second].sum(axis=0)])
    n1 = int(second.sum())
    counts = np.array([len(points) - n1, n1], dtype=np.int64)
    return labels, sums, counts


def cluster_sse(points, labels, c1, c2):
    centers = np.where(labels[:, None] == 0, c1, c2)
    diff = points - centers
    return float(np.einsum("ij,ij->", diff, diff))
