"""Catalog groups: builtin families, matrix groups and witness files.

Witness files are plain text, one directive per line::

    name M11
    degree 11
    gen (0 1 2 3 4 5 6 7 8 9 10)
    gen (2 6 10 7)(3 9 4 5)
    expect order 7920
    expect simple true
    provenance <free text>

``name`` comes first; the remaining lines may appear in any order and
``gen`` may repeat.  Blank lines and lines starting with ``#`` are ignored.
Every declared expectation is re-checked when the file is loaded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import fields
from .groups import PermGroup, center, derived_subgroup, is_simple
from .perm import format_cycles, from_cycles, parse_permutation

ORDER_BOUND = 2**24 * 3**4 * 5**2 * 7


class WitnessError(ValueError):
    """A witness file failed to parse or failed a declared property."""


@dataclass
class WitnessSpec:
    name: str
    degree: int
    generators: list[str] = field(default_factory=list)
    expected_order: int | None = None
    expected_center_order: int | None = None
    expected_simple: bool | None = None
    expected_perfect: bool | None = None
    provenance: str = ""

    def to_text(self) -> str:
        lines = [f"name {self.name}", f"degree {self.degree}"]
        lines += [f"gen {g}" for g in self.generators]
        if self.expected_order is not None:
            lines.append(f"expect order {self.expected_order}")
        if self.expected_center_order is not None:
            lines.append(f"expect center {self.expected_center_order}")
        if self.expected_simple is not None:
            lines.append(f"expect simple {str(self.expected_simple).lower()}")
        if self.expected_perfect is not None:
            lines.append(f"expect perfect {str(self.expected_perfect).lower()}")
        if self.provenance:
            lines.append(f"provenance {self.provenance}")
        return "\n".join(lines) + "\n"


def _parse_bool(tok: str) -> bool:
    t = tok.lower()
    if t in ("true", "yes", "1"):
        return True
    if t in ("false", "no", "0"):
        return False
    raise WitnessError(f"bad boolean {tok!r}")


def parse_witness(text: str) -> WitnessSpec:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line)
    if not rows or not rows[0].split(None, 1)[0] == "name":
        raise WitnessError("witness must start with a name line")
    parts = rows[0].split(None, 1)
    if len(parts) < 2:
        raise WitnessError("empty name")
    spec = WitnessSpec(name=parts[1].strip(), degree=0)
    for line in rows[1:]:
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "degree":
                spec.degree = int(rest)
            elif key == "gen":
                spec.generators.append(rest)
            elif key == "provenance":
                spec.provenance = rest
            elif key == "expect":
                what, _, val = rest.partition(" ")
                val = val.strip()
                if what == "order":
                    spec.expected_order = int(val)
                elif what == "center":
                    spec.expected_center_order = int(val)
                elif what == "simple":
                    spec.expected_simple = _parse_bool(val)
                elif what == "perfect":
                    spec.expected_perfect = _parse_bool(val)
                else:
                    raise WitnessError(f"unknown expectation {what!r}")
            elif key == "name":
                raise WitnessError("repeated name line")
            else:
                raise WitnessError(f"unknown directive {key!r}")
        except ValueError as exc:
            if isinstance(exc, WitnessError):
                raise
            raise WitnessError(f"bad line {line!r}: {exc}") from None
    if spec.degree <= 0:
        raise WitnessError("missing or invalid degree")
    if not spec.generators:
        raise WitnessError("no generators")
    return spec


def witness_group(spec: WitnessSpec, check: bool = True) -> PermGroup:
    """Build the group and verify every declared property."""
    try:
        gens = [parse_permutation(g, spec.degree) for g in spec.generators]
    except ValueError as exc:
        raise WitnessError(f"{spec.name}: {exc}") from None
    G = PermGroup(gens, degree=spec.degree, name=spec.name)
    if not check:
        return G
    diffs = []
    if spec.expected_order is not None and G.order() != spec.expected_order:
        diffs.append(f"order: expected {spec.expected_order}, got {G.order()}")
    if not diffs and spec.expected_center_order is not None:
        z = center(G).order()
        if z != spec.expected_center_order:
            diffs.append(f"center: expected {spec.expected_center_order}, got {z}")
    if not diffs and spec.expected_perfect is not None:
        perfect = derived_subgroup(G).order() == G.order()
        if perfect != spec.expected_perfect:
            diffs.append(f"perfect: expected {spec.expected_perfect}, got {perfect}")
    if not diffs and spec.expected_simple is not None:
        simple = _simple_verdict(G)
        if simple != spec.expected_simple:
            diffs.append(f"simple: expected {spec.expected_simple}, got {simple}")
    if diffs:
        raise WitnessError(f"{spec.name}: " + "; ".join(diffs))
    return G


def _simple_verdict(G: PermGroup) -> bool:
    try:
        return is_simple(G)
    except ValueError as exc:
        raise WitnessError(f"{G.name}: cannot check simplicity ({exc})") from None


def load_witness(path: str | Path, check: bool = True) -> PermGroup:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise WitnessError(f"cannot read witness {path}: {exc}") from None
    return witness_group(parse_witness(text), check=check)


def write_witness(path: str | Path, G: PermGroup, name: str, provenance: str,
                  center_order=None, simple=None, perfect=None) -> WitnessSpec:
    spec = WitnessSpec(name=name, degree=G.degree,
                       generators=[format_cycles(g) if any(i != x for i, x in enumerate(g)) else "id"
                                   for g in G.generators],
                       expected_order=G.order(), expected_center_order=center_order,
                       expected_simple=simple, expected_perfect=perfect, provenance=provenance)
    Path(path).write_text(spec.to_text())
    return spec


# -- builtins ----------------------------------------------------------------


def _cycle(pts: Sequence[int], n: int) -> tuple:
    return from_cycles([tuple(pts)], n)


def _alternating(n: int, N: int) -> PermGroup:
    if n < 3:
        return PermGroup([], degree=N)
    three = _cycle((0, 1, 2), N)
    if n == 3:
        return PermGroup([three], degree=N)
    if n % 2:
        long = _cycle(range(n), N)
    else:
        long = _cycle(range(1, n), N)
    return PermGroup([three, long], degree=N)


def _symmetric_even(n: int, N: int) -> PermGroup:
    """S_n on the first n points, odd elements paired with (n n+1)."""
    if N < n + 2:
        raise ValueError("need two spare points")
    swap = (n, n + 1)
    t = from_cycles([(0, 1), swap], N)
    c = _cycle(range(n), N)
    if n % 2 == 0:
        c = from_cycles([tuple(range(n)), swap], N)
    return PermGroup([t, c], degree=N)


def _agl32() -> PermGroup:
    vecs = [tuple((v >> (2 - i)) & 1 for i in range(3)) for v in range(8)]
    idx = {v: i for i, v in enumerate(vecs)}
    gl = fields.matgroup_to_perm(fields.sl_generators(3, 2))
    pts7 = fields.point_set(3, 2, "nonzero-vectors")
    gens = []
    for g in gl.generators:
        img = [0] * 8
        for i, v in enumerate(pts7):
            img[idx[v]] = idx[pts7[g[i]]]
        gens.append(tuple(img))
    shift = tuple(idx[tuple(a ^ b for a, b in zip(v, (0, 0, 1)))] for v in vecs)
    return PermGroup(gens + [shift], degree=8)


_MATRIX_BUILTINS = {
    "PSL32@7": lambda: fields.matgroup_to_perm(fields.sl_generators(3, 2)),
    "PSL32@8": lambda: fields.matgroup_to_perm(fields.sl_generators(2, 7), "projective-points"),
    "PSL28@9": lambda: fields.matgroup_to_perm(fields.sl_generators(2, 8), "projective-points"),
    "PSL42@15": lambda: fields.matgroup_to_perm(fields.sl_generators(4, 2), "projective-points"),
    "PSL34@21": lambda: fields.matgroup_to_perm(fields.sl_generators(3, 4), "projective-points"),
    "SP62@63": lambda: fields.matgroup_to_perm(fields.sp_generators(6, 2)),
    "PSP43@40": lambda: fields.matgroup_to_perm(fields.sp_generators(4, 3), "projective-points"),
    "PSU33@28": lambda: fields.matgroup_to_perm(fields.su3_generators(9), "projective-points",
                                                points=fields.isotropic_points(9)),
    "AGL32": _agl32,
}

BUILTIN_ORDERS = {
    "PSL32@7": 168, "PSL32@8": 168, "PSL28@9": 504, "PSL42@15": 20160,
    "PSL34@21": 20160, "SP62@63": 1451520, "PSP43@40": 25920, "PSU33@28": 6048,
    "AGL32": 1344,
}

_NAME_RE = re.compile(r"^(S|A|C|S\+):(\d+)(?:@(\d+))?$")


def builtin_group(name: str) -> PermGroup:
    """Groups named by the builtin grammar.

    ``S:n``, ``A:n`` (n <= 48) and ``C:n`` act naturally; ``A:n@N`` and
    ``S+:n@N`` embed A_n or an even copy of S_n in degree N.  Matrix names
    such as ``PSL32@7`` give the group and its action degree.
    """
    if name in _MATRIX_BUILTINS:
        G = _MATRIX_BUILTINS[name]()
        G.name = name
        return G
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ValueError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    N = int(m.group(3)) if m.group(3) else n
    if n < 1 or N < n:
        raise ValueError(f"bad degree in {name!r}")
    if kind == "A" and n > 48:
        raise ValueError("alternating groups limited to degree 48")
    if kind == "S":
        if n == 1:
            G = PermGroup([], degree=N)
        else:
            G = PermGroup([_cycle((0, 1), N), _cycle(range(n), N)], degree=N)
    elif kind == "A":
        G = _alternating(n, N)
    elif kind == "C":
        G = PermGroup([_cycle(range(n), N)] if n > 1 else [], degree=N)
    else:
        G = _symmetric_even(n, N)
    G.name = name
    return G


def resolve_group(desc: str, witness_dir: str | Path | None = None) -> PermGroup:
    """A builtin name or a witness file name (resolved in witness_dir)."""
    if desc.endswith(".wit"):
        path = Path(desc)
        if not path.is_absolute() and witness_dir is not None:
            path = Path(witness_dir) / path
        return load_witness(path)
    return builtin_group(desc)


def default_witness_dir() -> Path:
    return Path(__file__).resolve().parent / "data" / "witnesses"


# -- simple groups with order dividing the bound ------------------------------

SIMPLE_GROUPS = [
    # (label, expected order, how to build)
    ("J2", 2**7 * 3**3 * 5**2 * 7, "J2.wit"),
    ("A7", 2**3 * 3**2 * 5 * 7, "A:7"),
    ("A8", 2**6 * 3**2 * 5 * 7, "A:8"),
    ("A9", 2**6 * 3**4 * 5 * 7, "A:9"),
    ("A10", 2**7 * 3**4 * 5**2 * 7, "A:10"),
    ("PSL(3,4)", 2**6 * 3**2 * 5 * 7, "PSL34@21"),
    ("PSp(6,2)", 2**9 * 3**4 * 5 * 7, "SP62@63"),
    ("A5", 2**2 * 3 * 5, "A:5"),
    ("A6", 2**3 * 3**2 * 5, "A:6"),
    ("PSU(4,2)", 2**6 * 3**4 * 5, "PSP43@40"),
    ("PSL(2,7)", 2**3 * 3 * 7, "PSL32@7"),
    ("PSL(2,8)", 2**3 * 3**2 * 7, "PSL28@9"),
    ("PSU(3,3)", 2**5 * 3**3 * 7, "PSU33@28"),
]


@dataclass
class SimpleGroupEntry:
    label: str
    expected_order: int
    computed_order: int | None
    status: str  # "ok", "mismatch" or "skipped"

    @property
    def divides_bound(self) -> bool:
        return self.computed_order is not None and ORDER_BOUND % self.computed_order == 0


def table2_orders_check(witness_dir: str | Path | None = None) -> list[SimpleGroupEntry]:
    wdir = Path(witness_dir) if witness_dir is not None else default_witness_dir()
    out = []
    for label, expected, desc in SIMPLE_GROUPS:
        if desc.endswith(".wit") and not (wdir / desc).exists():
            out.append(SimpleGroupEntry(label, expected, None, "skipped"))
            continue
        G = resolve_group(desc, wdir)
        n = G.order()
        ok = n == expected and ORDER_BOUND % n == 0
        out.append(SimpleGroupEntry(label, expected, n, "ok" if ok else "mismatch"))
    return out
