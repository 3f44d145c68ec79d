"""Plain-text formats for instances and morphisms.

Instance files name a domain and a block per base relation::

    domain: a b
    relation r1/1:
    a
    b

    relation r2/2:
    a b

    relation r3/1: empty

A block header gives the relation's name and arity; tuple lines list one
constant per column, whitespace separated; ``empty`` declares a base
relation whose value is the bottom relation.  Blank lines separate blocks.

Morphism files name their endpoint instance files and list one query per
line::

    morphism A.db -> B.db
    sel[1='a'](r1)
"""

from __future__ import annotations

import re
from pathlib import Path

from .core import (
    BOTTOM,
    Constant,
    Instance,
    Relation,
    UniverseConfig,
    make_relation,
    sorted_relations,
)
from .errors import ArityMismatch, QuerySyntaxError, UnknownConstant
from .morphisms import Morphism, atomic_morphism
from .queries import format_query, parse_query

_HEADER = re.compile(r"relation\s+([A-Za-z_][A-Za-z0-9_]*)\s*/\s*(\d+)\s*:\s*(empty)?\s*$")


def parse_instance(text: str) -> tuple[Instance, frozenset[Constant]]:
    """Parse instance text into an instance with labels plus its domain."""
    lines = text.splitlines()
    pos = 0
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    if pos == len(lines) or not lines[pos].strip().startswith("domain:"):
        raise QuerySyntaxError("instance file must start with a domain line", 0)
    domain = frozenset(lines[pos].strip()[len("domain:"):].split())
    if not domain:
        raise UnknownConstant("the domain line declares no constants")
    pos += 1

    labels: dict[str, Relation] = {}
    arities: dict[str, int] = {}
    current: str | None = None
    rows: list[tuple[str, ...]] = []

    def flush() -> None:
        nonlocal current, rows
        if current is None:
            return
        labels[current] = make_relation(arities[current], rows, domain)
        current, rows = None, []

    for lineno, raw in enumerate(lines[pos:], start=pos + 1):
        line = raw.strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            flush()
            name, arity, empty = m.group(1), int(m.group(2)), m.group(3)
            if name in labels or name == current:
                raise ArityMismatch(f"duplicate relation name {name!r} (line {lineno})")
            if empty:
                labels[name] = BOTTOM
            else:
                current = name
                arities[name] = arity
        else:
            if current is None:
                raise QuerySyntaxError(f"tuple outside a relation block (line {lineno})", lineno)
            parts = tuple(line.split())
            if len(parts) != arities[current]:
                raise ArityMismatch(
                    f"tuple {parts!r} has {len(parts)} columns, relation "
                    f"{current!r} declares {arities[current]} (line {lineno})"
                )
            for c in parts:
                if c not in domain:
                    raise UnknownConstant(f"constant {c!r} is not in the domain (line {lineno})")
            rows.append(parts)
    flush()
    relations = frozenset(labels.values()) if labels else frozenset()
    return Instance(relations, labels), domain


def load_instance(path: str | Path) -> tuple[Instance, frozenset[Constant]]:
    return parse_instance(Path(path).read_text())


def render_instance(
    inst: Instance, domain: frozenset[Constant], name_prefix: str = "v"
) -> str:
    """Render an instance in the text format.

    Relations keep their labels; unlabeled ones are auto-named with the
    prefix, in canonical order, so closures print deterministically.
    """
    name_of = {rel: name for name, rel in inst.labels.items()}
    lines = ["domain: " + " ".join(sorted(domain))]
    counter = 1
    for rel in sorted_relations(inst.relations):
        name = name_of.get(rel)
        if name is None:
            while f"{name_prefix}{counter}" in inst.labels:
                counter += 1
            name = f"{name_prefix}{counter}"
            counter += 1
        lines.append("")
        if rel.is_bottom:
            lines.append(f"relation {name}/1: empty")
        else:
            lines.append(f"relation {name}/{rel.arity}:")
            for t in sorted(rel.tuples):
                lines.append(" ".join(t))
    return "\n".join(lines) + "\n"


def dump_instance(
    inst: Instance, domain: frozenset[Constant], path: str | Path
) -> None:
    Path(path).write_text(render_instance(inst, domain))


def load_morphism(
    path: str | Path, cfg: UniverseConfig | None = None, k_max: int = 1
) -> Morphism:
    """Load an atomic morphism; endpoint paths resolve relative to the file."""
    path = Path(path)
    lines = [l for l in path.read_text().splitlines() if l.strip()]
    if not lines or not lines[0].strip().startswith("morphism"):
        raise QuerySyntaxError("morphism file must start with a morphism header", 0)
    m = re.match(r"morphism\s+(\S+)\s*->\s*(\S+)\s*$", lines[0].strip())
    if not m:
        raise QuerySyntaxError("malformed morphism header", 0)
    src_inst, src_domain = load_instance(path.parent / m.group(1))
    tgt_inst, tgt_domain = load_instance(path.parent / m.group(2))
    if src_domain != tgt_domain:
        raise UnknownConstant("morphism endpoints declare different domains")
    if cfg is None:
        cfg = UniverseConfig(domain=src_domain, k_max=k_max)
    schema = {n: r.arity for n, r in src_inst.labels.items()}
    terms = [parse_query(line, schema, src_domain) for line in lines[1:]]
    return atomic_morphism(src_inst, tgt_inst, terms, cfg)


def render_morphism(f: Morphism, src_name: str, tgt_name: str) -> str:
    """Render an atomic morphism (one query per top-level tree)."""
    lines = [f"morphism {src_name} -> {tgt_name}"]
    queries = sorted(format_query(t.head.query) for t in f.trees)
    lines.extend(queries)
    return "\n".join(lines) + "\n"
