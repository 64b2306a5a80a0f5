"""Vertex partitions with exceptional class, and density certificates.

A partition holds classes V1..Vq plus an exceptional set V0. Equitable
means all classes have equal size and |V0| < q. Certificates record per
class the measured internal edge count against sparse/dense thresholds
and are recomputable from the graph bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .exact import as_fraction
from .graph import Graph, edge_count_within


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    n: int
    classes: tuple[frozenset[int], ...]
    exceptional: frozenset[int]

    @property
    def q(self) -> int:
        return len(self.classes)

    @property
    def class_size(self) -> int | None:
        sizes = {len(c) for c in self.classes}
        return sizes.pop() if len(sizes) == 1 else None

    def is_equitable(self) -> bool:
        return self.class_size is not None and len(self.exceptional) < max(self.q, 1)

    def covered(self) -> frozenset[int]:
        out = set(self.exceptional)
        for c in self.classes:
            out |= c
        return frozenset(out)

    def validate(self, require_cover: bool = True, require_equitable: bool = False) -> None:
        total = len(self.exceptional) + sum(len(c) for c in self.classes)
        cov = self.covered()
        if len(cov) != total:
            raise PartitionError("classes and exceptional set are not pairwise disjoint")
        if any(not 0 <= v < self.n for v in cov):
            raise PartitionError("partition contains out-of-range vertices")
        if require_cover and len(cov) != self.n:
            raise PartitionError(f"partition covers {len(cov)} of {self.n} vertices")
        if require_equitable and not self.is_equitable():
            raise PartitionError("partition is not equitable")

    def labels(self) -> list[int]:
        """Per-vertex class index; the exceptional set gets -1."""
        out = [-1] * self.n
        for i, c in enumerate(self.classes):
            for v in c:
                out[v] = i
        return out

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        n = len(labels)
        ids = sorted({int(x) for x in labels if int(x) >= 0})
        classes = tuple(
            frozenset(v for v in range(n) if int(labels[v]) == i) for i in ids
        )
        exc = frozenset(v for v in range(n) if int(labels[v]) < 0)
        return cls(n, classes, exc)


TAGS = ("sparse", "dense", "untagged")


@dataclass(frozen=True)
class ClassCertificate:
    tag: str
    edges: int
    size: int
    threshold: Fraction  # the epsilon the class actually met; 0 when untagged

    @property
    def possible(self) -> int:
        return self.size * (self.size - 1) // 2

    @property
    def density(self) -> Fraction:
        return Fraction(self.edges, self.possible) if self.possible else Fraction(0)

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "density_num": self.density.numerator,
            "density_den": self.density.denominator,
            "threshold": str(self.threshold),
        }


@dataclass(frozen=True)
class Certificate:
    epsilon: Fraction
    mode: str  # sparse | dense | sparse_or_dense
    classes: tuple[ClassCertificate, ...]

    @property
    def complete(self) -> bool:
        return all(c.tag != "untagged" for c in self.classes)

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.classes]


def _tag_class(edges: int, size: int, eps: Fraction, mode: str, allow_relaxed: bool) -> ClassCertificate:
    possible = size * (size - 1) // 2
    thresholds = [eps, 2 * eps] if allow_relaxed else [eps]
    want = {"sparse": ("sparse",), "dense": ("dense",), "sparse_or_dense": ("sparse", "dense")}[mode]
    for thr in thresholds:
        if "sparse" in want and Fraction(edges) < thr * possible:
            return ClassCertificate("sparse", edges, size, thr)
        if "dense" in want and Fraction(edges) > (1 - thr) * possible:
            return ClassCertificate("dense", edges, size, thr)
    return ClassCertificate("untagged", edges, size, Fraction(0))


def certify(
    g: Graph,
    partition: Partition,
    epsilon,
    mode: str = "sparse",
    allow_relaxed: bool = False,
) -> Certificate:
    """Measure every class of the partition against the thresholds.

    Sparse means e(Vi) < eps * C(size, 2); dense means
    e(Vi) > (1 - eps) * C(size, 2). With allow_relaxed, classes that
    miss eps but meet 2*eps are tagged at the recorded relaxed
    threshold (the price of evening out the exceptional set).
    """
    eps = as_fraction(epsilon)
    if mode not in ("sparse", "dense", "sparse_or_dense"):
        raise PartitionError(f"unknown certificate mode {mode!r}")
    certs = tuple(
        _tag_class(edge_count_within(g, c), len(c), eps, mode, allow_relaxed)
        for c in partition.classes
    )
    return Certificate(eps, mode, certs)


def recheck_certificate(g: Graph, partition: Partition, cert: Certificate) -> bool:
    """Re-derive the certificate from the graph; True iff it matches bit-exactly."""
    fresh = certify(
        g,
        partition,
        cert.epsilon,
        cert.mode,
        allow_relaxed=any(c.threshold == 2 * cert.epsilon for c in cert.classes),
    )
    return fresh == cert


def partition_to_json(
    partition: Partition,
    certificate: Certificate | None = None,
    status: str = "complete",
    seed: int | None = None,
) -> dict:
    return {
        "n": partition.n,
        "q": partition.q,
        "class_size": partition.class_size,
        "exceptional": sorted(partition.exceptional),
        "classes": [sorted(c) for c in partition.classes],
        "certificate": certificate.to_json() if certificate else None,
        "status": status.capitalize(),
        "seed": seed,
    }


def partition_from_json(data: dict) -> Partition:
    return Partition(
        data["n"],
        tuple(frozenset(c) for c in data["classes"]),
        frozenset(data["exceptional"]),
    )


def save_partition(path: str | Path, partition: Partition, certificate=None,
                   status: str = "complete", seed: int | None = None) -> None:
    Path(path).write_text(
        json.dumps(partition_to_json(partition, certificate, status, seed), indent=2)
    )


def load_partition(path: str | Path) -> Partition:
    return partition_from_json(json.loads(Path(path).read_text()))
