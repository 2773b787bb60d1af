"""Line-oriented text format for table data.

Layout (one directive per line, ``#`` starts a comment)::

    datum graded_z3
    field F7
    objects X0 X1 X2
    unit 0
    dual 0 2 1
    tensor 0 1 2 | 1 2 0 | 2 0 1
    homdims 1 0 0 | 0 1 0 | 0 0 1
    compose 0 0 0 : 0 0 0 = 1 mod 7
    tensor_mor 0 0 1 1 : 0 0 0 = 1 mod 7
    id 0 = 1 mod 7
    ev 1 = 1 mod 7
    ...
    subcat all 0 1 2
    end

Structure constants are sparse: only nonzero entries are written, in
lexicographic key order, so writing is canonical and a written file
re-serializes byte for byte.
"""
from __future__ import annotations

import re
from itertools import product

import numpy as np

from ..exactla import Field, parse_field
from .datum import CategoryDatum

_TOKEN = re.compile(r"-?\d+ mod \d+|-?\d+/\d+|\S+")
VEC_KINDS = ("id", "ev", "coev", "ev_tilde", "coev_tilde")


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


def _vec_attr(kind):
    return "id_vecs" if kind == "id" else f"{kind}_vecs"


def _rows(table) -> str:
    return " | ".join(" ".join(str(x) for x in row) for row in table)


def dump_datum(c: CategoryDatum) -> str:
    f = c.fld
    out = [f"datum {c.title}", f"field {f}", "objects " + " ".join(c.objects), f"unit {c.unit}"]
    out.append("dual " + " ".join(str(d) for d in c.dual_table))
    out.append("tensor " + _rows(c.tensor_table))
    out.append("homdims " + _rows(c.hom_dims))
    for key in sorted(c.compose_consts):
        arr = c.compose_consts[key]
        for idx in product(*(range(s) for s in arr.shape)):
            if arr[idx] != 0:
                out.append(f"compose {' '.join(map(str, key))} : {' '.join(map(str, idx))} = {f.fmt(arr[idx])}")
    for key in sorted(c.tensor_consts):
        arr = c.tensor_consts[key]
        for idx in product(*(range(s) for s in arr.shape)):
            if arr[idx] != 0:
                out.append(f"tensor_mor {' '.join(map(str, key))} : {' '.join(map(str, idx))} = {f.fmt(arr[idx])}")
    for kind in VEC_KINDS:
        for i, v in enumerate(getattr(c, _vec_attr(kind))):
            out.append(f"{kind} {i} = " + " ".join(f.fmt(x) for x in v))
    for name in sorted(c.subcats):
        out.append(f"subcat {name} " + " ".join(str(m) for m in c.subcats[name]))
    out.append("end")
    return "\n".join(out) + "\n"


class _Lines:
    """Tokenized lines with source positions for error reporting."""

    def __init__(self, text):
        self.items = []
        for ln, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
            if toks:
                self.items.append((ln, toks))
        self.last_line = len(text.splitlines())


def _int(tok, line):
    s, col = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"expected an integer, got {s!r}", line, col) from None


def _split_rows(toks, line):
    rows, cur = [], []
    for t in toks:
        if t[0] == "|":
            rows.append(cur)
            cur = []
        else:
            cur.append(_int(t, line))
    rows.append(cur)
    return rows


def load_datum(text: str) -> CategoryDatum:
    lines = _Lines(text)
    it = iter(lines.items)
    head = {}
    fld: Field | None = None
    comp, tens, vecs, subcats = [], [], {k: {} for k in VEC_KINDS}, {}
    ended = False
    for ln, toks in it:
        key, col = toks[0]
        args = toks[1:]
        if ended:
            raise ParseError("content after 'end'", ln, col)
        if key == "datum":
            head["title"] = " ".join(t[0] for t in args) or "datum"
        elif key == "field":
            if len(args) != 1:
                raise ParseError("field expects one spec", ln, col)
            try:
                fld = parse_field(args[0][0])
            except ValueError as e:
                raise ParseError(str(e), ln, args[0][1]) from None
        elif key == "objects":
            head["objects"] = [t[0] for t in args]
        elif key == "unit":
            head["unit"] = _int(args[0], ln) if args else None
        elif key == "dual":
            head["dual"] = [_int(t, ln) for t in args]
        elif key in ("tensor", "homdims"):
            head[key] = _split_rows(args, ln)
        elif key in ("compose", "tensor_mor"):
            if fld is None:
                raise ParseError("structure constants before 'field'", ln, col)
            words = [t[0] for t in args]
            try:
                a = words.index(":")
                b = words.index("=")
            except ValueError:
                raise ParseError("expected 'KEY : INDEX = VALUE'", ln, col) from None
            nkey = 3 if key == "compose" else 4
            if a != nkey or b != a + 4 or len(args) != b + 2:
                raise ParseError(f"{key} needs {nkey} object indices, 3 entry indices and one value", ln, col)
            k = tuple(_int(t, ln) for t in args[:a])
            idx = tuple(_int(t, ln) for t in args[a + 1 : b])
            val = _scalar(fld, args[b + 1], ln)
            (comp if key == "compose" else tens).append((k, idx, val))
        elif key in VEC_KINDS:
            if fld is None:
                raise ParseError("coefficient vector before 'field'", ln, col)
            if len(args) < 2 or args[1][0] != "=":
                raise ParseError(f"expected '{key} OBJ = VALUES'", ln, col)
            vecs[key][_int(args[0], ln)] = [_scalar(fld, t, ln) for t in args[2:]]
        elif key == "subcat":
            if not args:
                raise ParseError("subcat needs a name", ln, col)
            subcats[args[0][0]] = tuple(_int(t, ln) for t in args[1:])
        elif key == "end":
            ended = True
        else:
            raise ParseError(f"unknown directive {key!r}", ln, col)
    eof = lines.last_line + 1
    if not ended:
        raise ParseError("unexpected end of input (missing 'end')", eof, 1)
    for need in ("objects", "unit", "dual", "tensor", "homdims"):
        if need not in head:
            raise ParseError(f"missing '{need}' directive", eof, 1)
    if fld is None:
        raise ParseError("missing 'field' directive", eof, 1)
    n = len(head["objects"])
    hd = head["homdims"]
    if len(hd) != n or any(len(r) != n for r in hd):
        raise ParseError("homdims is not n x n", eof, 1)

    def dense(entries, shape_of):
        out = {}
        for k, idx, val in entries:
            if k not in out:
                try:
                    out[k] = fld.zeros(shape_of(k))
                except (IndexError, TypeError):
                    raise ParseError(f"structure constant key {k} out of range", eof, 1) from None
            try:
                out[k][idx] = val
            except IndexError:
                raise ParseError(f"entry {idx} outside the shape of key {k}", eof, 1) from None
        return out

    tt = head["tensor"]
    compose_consts = dense(comp, lambda k: (hd[k[1]][k[2]], hd[k[0]][k[1]], hd[k[0]][k[2]]))
    tensor_consts = dense(tens, lambda k: (hd[k[0]][k[1]], hd[k[2]][k[3]], hd[tt[k[0]][k[2]]][tt[k[1]][k[3]]]))
    # zero blocks are omitted on write; restore them so shapes stay complete
    for i, j, k in product(range(n), repeat=3):
        shp = (hd[j][k], hd[i][j], hd[i][k])
        if 0 not in shp:
            compose_consts.setdefault((i, j, k), fld.zeros(shp))
    for i, i2, j, j2 in product(range(n), repeat=4):
        try:
            shp = (hd[i][i2], hd[j][j2], hd[tt[i][j]][tt[i2][j2]])
        except (IndexError, TypeError):
            raise ParseError("tensor table is not n x n", eof, 1) from None
        if 0 not in shp:
            tensor_consts.setdefault((i, i2, j, j2), fld.zeros(shp))
    vec_lists = {}
    for kind in VEC_KINDS:
        got = vecs[kind]
        if sorted(got) != list(range(n)):
            raise ParseError(f"'{kind}' vectors must be given for objects 0..{n - 1}", eof, 1)
        vec_lists[kind] = [np.array(got[i], dtype=fld.dtype).reshape(-1) if got[i] else fld.zeros(0) for i in range(n)]
    return CategoryDatum(
        fld,
        head["objects"],
        head["unit"],
        head["dual"],
        tt,
        hd,
        compose_consts,
        tensor_consts,
        vec_lists["id"],
        vec_lists["ev"],
        vec_lists["coev"],
        vec_lists["ev_tilde"],
        vec_lists["coev_tilde"],
        subcats,
        head.get("title", "datum"),
    )


def _scalar(fld, tok, line):
    s, col = tok
    try:
        return fld.parse(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(str(e), line, col) from None


def read_datum(path) -> CategoryDatum:
    with open(path) as fh:
        return load_datum(fh.read())


def write_datum(c: CategoryDatum, path) -> None:
    with open(path, "w") as fh:
        fh.write(dump_datum(c))
