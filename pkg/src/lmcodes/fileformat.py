"""Plain-text codebook files.

    # optional comments
    q=4 l=1 n=3 mode=uec
    0 0 0
    0 0 3
    ...

The header is the first non-comment line; words follow one per line,
space-separated, sorted lexicographically.
"""

from __future__ import annotations

from pathlib import Path

from .core import Codebook, CodeParams, Mode


def dumps(c: Codebook) -> str:
    p = c.params
    lines = [f"q={p.q} l={p.ell} n={p.n} mode={c.mode.value}"]
    lines += [" ".join(str(s) for s in w) for w in c.words]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Codebook:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ValueError("empty codebook file")
    try:
        fields = dict(tok.split("=", 1) for tok in rows[0].split())
        params = CodeParams(int(fields["q"]), int(fields["l"]), int(fields["n"]))
        mode = Mode(fields["mode"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad header {rows[0]!r}: {exc}") from exc
    words = [tuple(int(s) for s in ln.split()) for ln in rows[1:]]
    return Codebook(params, words, mode)


def write(c: Codebook, path: str | Path) -> None:
    Path(path).write_text(dumps(c), encoding="utf-8")


def read(path: str | Path) -> Codebook:
    return loads(Path(path).read_text(encoding="utf-8"))
