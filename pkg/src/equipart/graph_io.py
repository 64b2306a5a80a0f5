"""Edge-list text format.

First line ``p <n> <m>``, then one ``e <u> <v>`` line per edge,
0-indexed, whitespace separated. Lines starting with ``c`` are comments.
Duplicate and inverted-duplicate edges are dropped silently; the load
report carries the dropped count and any header/size mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .graph import Graph, GraphError, build_graph


@dataclass
class LoadReport:
    path: str
    declared_m: int
    loaded_m: int
    duplicates_dropped: int

    @property
    def header_mismatch(self) -> bool:
        return self.declared_m != self.loaded_m

    def to_json(self) -> dict:
        return {
            "path": self.path,
            "declared_m": self.declared_m,
            "loaded_m": self.loaded_m,
            "duplicates_dropped": self.duplicates_dropped,
            "header_mismatch": self.header_mismatch,
        }


def load_edge_list(path: str | Path) -> tuple[Graph, LoadReport]:
    path = Path(path)
    n = None
    declared_m = 0
    seen: set[tuple[int, int]] = set()
    dropped = 0
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if n is not None:
                    raise GraphError(f"{path}:{lineno}: duplicate header line")
                if len(parts) != 3:
                    raise GraphError(f"{path}:{lineno}: malformed header {line!r}")
                n, declared_m = int(parts[1]), int(parts[2])
            elif parts[0] == "e":
                if n is None:
                    raise GraphError(f"{path}:{lineno}: edge before header")
                if len(parts) != 3:
                    raise GraphError(f"{path}:{lineno}: malformed edge {line!r}")
                u, v = int(parts[1]), int(parts[2])
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphError(f"{path}:{lineno}: endpoint out of range")
                if u == v:
                    raise GraphError(f"{path}:{lineno}: self-loop at {u}")
                key = (min(u, v), max(u, v))
                if key in seen:
                    dropped += 1
                else:
                    seen.add(key)
            else:
                raise GraphError(f"{path}:{lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphError(f"{path}: missing header line")
    g = build_graph(n, sorted(seen))
    return g, LoadReport(str(path), declared_m, g.m, dropped)


def save_edge_list(g: Graph, path: str | Path) -> None:
    path = Path(path)
    with path.open("w") as fh:
        fh.write(f"p {g.n} {g.m}\n")
        for u, v in g.edges():
            fh.write(f"e {u} {v}\n")
