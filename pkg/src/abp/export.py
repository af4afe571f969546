"""
ABP files: JSON (round-trip stable) and Graphviz DOT (inspection only).

JSON layout:
    {field, nvars, commutative, layers: [counts], sources, sinks,
     edges: [{layer, from, to, terms: [{var, coef}], const}],
     labels: [{layer, node, label}]}

Edges are written in (layer, from, to) order and terms by var id, so the
same ABP always produces the same bytes.
"""

from __future__ import annotations

import json
import os

from pydantic import BaseModel, Field

from src.abp.core import ABP, Edge
from src.abp.linform import LinForm
from src.algebra.scalars import field_from_spec
from src.errors import InvalidParameterError


class TermModel(BaseModel):
    var: int
    coef: str


class EdgeModel(BaseModel):
    layer: int
    from_: int = Field(alias="from")
    to: int
    terms: list[TermModel] = []
    const: str = "0"

    model_config = {"populate_by_name": True}


class LabelModel(BaseModel):
    layer: int
    node: int
    label: str


class AbpModel(BaseModel):
    field: str = "rational"
    nvars: int
    commutative: bool = False
    layers: list[int]
    sources: list[int] = [0]
    sinks: list[int] = [0]
    edges: list[EdgeModel] = []
    labels: list[LabelModel] = []


# ──────────────────────────────────────────────
# JSON
# ──────────────────────────────────────────────

def to_model(b):
    f = b.field
    edges = []
    for e in b.edges:
        edges.append(EdgeModel(
            layer=e.layer,
            from_=e.src,
            to=e.dst,
            terms=[TermModel(var=v, coef=f.plain(e.label.coeffs[v])) for v in sorted(e.label.coeffs)],
            const=f.plain(e.label.constant),
        ))
    labels = [
        LabelModel(layer=layer, node=node, label=lab)
        for (layer, node), lab in sorted(b.labels.items())
    ]
    return AbpModel(
        field=f.name, nvars=b.nvars, commutative=b.commutative, layers=list(b.layers),
        sources=list(b.sources), sinks=list(b.sinks), edges=edges, labels=labels,
    )


def to_json(b):
    return json.dumps(to_model(b).model_dump(by_alias=True), indent=2, ensure_ascii=False) + "\n"


def from_json(text):
    """Parse and validate an ABP JSON document."""
    model = AbpModel.model_validate_json(text)
    f = field_from_spec(model.field)
    edges = []
    for e in model.edges:
        for t in e.terms:
            if not 0 <= t.var < model.nvars:
                raise InvalidParameterError(f"edge term uses var {t.var} outside 0..{model.nvars - 1}")
        lab = LinForm({t.var: f.parse(t.coef) for t in e.terms}, f.parse(e.const))
        edges.append(Edge(e.layer, e.from_, e.to, lab))
    labels = {(lab.layer, lab.node): lab.label for lab in model.labels}
    return ABP(model.layers, edges, model.sources, model.sinks, model.nvars, f, labels,
               model.commutative)


def save_json(path, payload):
    """Write text (or a JSON-able object) to path, creating the folder if needed."""
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    if not isinstance(payload, str):
        payload = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    with open(path, "w", encoding="utf-8") as f:
        f.write(payload)


def load_abp(path):
    with open(path, "r", encoding="utf-8") as f:
        return from_json(f.read())


# ──────────────────────────────────────────────
# DOT
# ──────────────────────────────────────────────

def to_dot(b, namer=None, name="abp"):
    """Nodes grouped by layer (rank=same), edges labeled by their linear forms."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle, fontsize=10];"]
    sources = set(b.sources)
    sinks = set(b.sinks)
    last = len(b.layers) - 1
    for layer, count in enumerate(b.layers):
        ids = []
        for node in range(count):
            nid = f"n{layer}_{node}"
            ids.append(nid)
            text = b.labels.get((layer, node), f"{layer}:{node}")
            shape = ""
            if (layer == 0 and node in sources) or (layer == last and node in sinks):
                shape = ", shape=doublecircle"
            lines.append(f'  {nid} [label="{text}"{shape}];')
        if ids:
            lines.append("  { rank=same; " + "; ".join(ids) + "; }")
    for e in b.edges:
        text = e.label.format(b.field, namer).replace('"', "'")
        lines.append(f'  n{e.layer}_{e.src} -> n{e.layer + 1}_{e.dst} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
