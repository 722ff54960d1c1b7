"""Grid rendering and the machine-readable report document.

The grid puts q upward and p rightward, writes each dimension with a ``*``
suffix when z(e) meets the cell and leaves empty cells blank.  Reports are
JSON with every rational written as a "num/den" string.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from gmpy2 import mpq

from .grading import BiGrading, slice_
from .exactla import Subspace

SCHEMA_VERSION = 1


def q_str(x) -> str:
    x = mpq(x)
    return f"{x.numerator}/{x.denominator}"


def q_parse(s) -> mpq:
    return mpq(s)


def _axis(x) -> str:
    x = mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# grids

@dataclass
class GridRender:
    cells: dict            # (p, q) -> (dim, star)

    @classmethod
    def from_grading(cls, bg: BiGrading, z: Subspace | None = None) -> "GridRender":
        met = set(slice_(bg, z, "all").cells) if z is not None else set()
        return cls({k: (s.dim, k in met) for k, s in bg.cells.items()})

    @property
    def total(self) -> int:
        return sum(d for d, _ in self.cells.values())

    @property
    def stars(self) -> list[tuple]:
        return sorted(k for k, (_, s) in self.cells.items() if s)

    def render(self) -> str:
        if not self.cells:
            return ""
        ps = sorted({mpq(p) for p, _ in self.cells})
        qs = sorted({mpq(q) for _, q in self.cells}, reverse=True)
        text = {(mpq(p), mpq(q)): f"{d}{'*' if s else ''}" for (p, q), (d, s) in self.cells.items()}
        w = max([len(t) for t in text.values()] + [len(_axis(p)) for p in ps]) + 1
        lw = max(len(_axis(q)) for q in qs) + 1
        lines = []
        for q in qs:
            row = _axis(q).rjust(lw) + " |" + "".join(text.get((p, q), "").rjust(w) for p in ps)
            lines.append(row.rstrip())
        lines.append(" " * lw + " +" + "-" * (w * len(ps)))
        lines.append(" " * lw + "  " + "".join(_axis(p).rjust(w) for p in ps))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "GridRender":
        """Inverse of ``render``."""
        lines = [ln for ln in text.splitlines() if ln.strip()]
        ps = [mpq(t) for t in lines[-1].split()]
        bar = lines[-2].index("+")
        w = (len(lines[-2]) - bar - 1) // len(ps)
        cells = {}
        for ln in lines[:-2]:
            head, body = ln[:bar], ln[bar + 1:]
            q = mpq(head.replace("|", "").strip())
            for i, p in enumerate(ps):
                t = body[i * w:(i + 1) * w].strip()
                if t:
                    cells[(p, q)] = (int(t.rstrip("*")), t.endswith("*"))
        return cls(cells)


# ---------------------------------------------------------------------------
# report document

def encode(x):
    """Recursive conversion to JSON-ready values; rationals become "p/q"."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if type(x).__name__ == "mpq":
        return q_str(x)
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [encode(v) for v in seq]
    return str(x)


def _vec(v) -> list[str]:
    return [q_str(c) for c in v]


@dataclass
class ReportDocument:
    algebra: dict
    pair: dict
    characteristic: dict
    grid: list
    flags: dict
    dims: dict
    z_eigenvalues: list
    verdicts: dict
    expected: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> str:
        return json.dumps(encode(asdict(self)), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        raw = json.loads(text)
        if raw.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {raw.get('schema_version')!r}")
        return cls(**raw)

    @property
    def grid_render(self) -> GridRender:
        return GridRender({(mpq(c["p"]), mpq(c["q"])): (c["dim"], c["star"]) for c in self.grid})


def build_document(alg, pair, char, bg: BiGrading, z: Subspace, flags: dict, dims: dict,
                   verdicts: dict, expected: dict | None = None, name: str | None = None,
                   info: dict | None = None) -> ReportDocument:
    grid = GridRender.from_grading(bg, z)
    cells = [{"p": q_str(p), "q": q_str(q), "dim": d, "star": s}
             for (p, q), (d, s) in grid.cells.items()]
    doc = ReportDocument(
        algebra={"type": alg.root_system.label, "dim": alg.dim, "rank": alg.rank},
        pair={"name": name, "e1": _vec(pair.e1), "e2": _vec(pair.e2),
              "e1_text": alg.format(pair.e1), "e2_text": alg.format(pair.e2)},
        characteristic={"h1": _vec(char.h1), "h2": _vec(char.h2),
                        "h1_text": alg.format(char.h1), "h2_text": alg.format(char.h2)},
        grid=cells,
        flags=dict(flags),
        dims=dict(dims),
        z_eigenvalues=[[q_str(p), q_str(q)] for p, q in bg.eigenvalue_multiset(z)],
        verdicts=verdicts,
        expected={k: {"value": v, "source": prov} for k, (v, prov) in (expected or {}).items()},
        info=info or {},
    )
    # normalise through the encoder so that a parsed copy compares equal
    return ReportDocument.from_json(doc.to_json())
