"""Serializable description of a computed graph, with text, JSON and DOT renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from .modgraph import ELLIPTIC, PARABOLIC, ModularGraph, canonical_signature, cycles
from .xicore import classify_edges


@dataclass(frozen=True)
class VertexDoc:
    id: int
    kind: str
    label: Optional[str]


@dataclass(frozen=True)
class EdgeDoc:
    id: int
    endpoints: tuple[int, int]
    weight: int


@dataclass(frozen=True)
class GraphDocument:
    level: int
    group: str
    conjugation: str
    vertices: tuple[VertexDoc, ...]
    edges: tuple[EdgeDoc, ...]
    components: tuple[tuple[int, ...], ...]
    edge_types: dict[int, str] = field(default_factory=dict)

    @classmethod
    def from_graph(cls, g: ModularGraph, level: int, group: str, conjugation: str,
                   with_types: bool = True) -> "GraphDocument":
        vertices = tuple(VertexDoc(v, g.kinds[v], g.labels[v]) for v in range(g.num_vertices))
        edges = tuple(EdgeDoc(i, (u, v), w) for i, (u, v, w) in enumerate(g.edges()))
        comps = tuple(tuple(v for v, _ in cyc) for cyc in cycles(g))
        types = classify_edges(g) if with_types else {}
        return cls(level, group, conjugation, vertices, edges, comps, types)

    def to_graph(self) -> ModularGraph:
        return ModularGraph.from_edges([v.kind for v in self.vertices],
                                       [(*e.endpoints, e.weight) for e in self.edges],
                                       [v.label for v in self.vertices])

    def to_json(self) -> str:
        data = asdict(self)
        data["edge_types"] = {str(k): v for k, v in self.edge_types.items()}
        return json.dumps(data, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "GraphDocument":
        data = json.loads(text)
        return cls(
            data["level"], data["group"], data["conjugation"],
            tuple(VertexDoc(**v) for v in data["vertices"]),
            tuple(EdgeDoc(e["id"], tuple(e["endpoints"]), e["weight"]) for e in data["edges"]),
            tuple(tuple(c) for c in data["components"]),
            {int(k): v for k, v in data.get("edge_types", {}).items()},
        )

    def component_lines(self) -> list[str]:
        g = self.to_graph()
        out = []
        for cyc in cycles(g):
            sig = canonical_signature([(g.kinds[v], g.weight[d]) for v, d in cyc])
            np_ = sum(1 for k, _ in sig.steps if k == PARABOLIC)
            ne = len(sig) - np_
            out.append(f"{sig} ({np_} parabolic, {ne} elliptic)")
        return sorted(out)

    def to_text(self) -> str:
        lines = self.component_lines()
        k = len(lines)
        head = f"{self.group} level {self.level}, conjugation {self.conjugation}"
        if k == 1:
            body = [f"1 component: {lines[0]}"]
        else:
            body = [f"{k} components:"] + [f"  {line}" for line in lines]
        kinds = [v.kind for v in self.vertices]
        tally = f"{kinds.count(PARABOLIC)} parabolic, {kinds.count(ELLIPTIC)} elliptic vertices"
        out = [head, *body, tally]
        if self.edge_types:
            counts = {t: list(self.edge_types.values()).count(t) for t in ("T1a", "T1b", "T2")}
            out.append("edge types: " + ", ".join(f"{t} {c}" for t, c in counts.items()))
        return "\n".join(out)

    def to_dot(self) -> str:
        out = [f'graph "{self.group}_{self.level}" {{', "  node [shape=circle, label=\"\", width=0.15];"]
        for v in self.vertices:
            style = "filled" if v.kind == PARABOLIC else "solid"
            tip = (v.label or "").replace('"', "'")
            out.append(f'  v{v.id} [style={style}, fillcolor=black, tooltip="{tip}"];')
        for e in self.edges:
            u, v = e.endpoints
            attrs = 'color="black:invis:black"' if e.weight == 2 else "color=black"
            out.append(f"  v{u} -- v{v} [{attrs}];")
        out.append("}")
        return "\n".join(out)
