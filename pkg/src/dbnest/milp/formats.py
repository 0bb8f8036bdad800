"""LP (CPLEX dialect) and MPS (fixed or free) text for :class:`LinearModel`.

Dialect notes
-------------
LP: one ``Bounds`` line per variable in model order, so a parse restores
the column order; binaries are additionally listed under ``Binaries``.
Lines are wrapped after a fixed number of terms.

MPS: every column appears in ``COLUMNS`` in model order (an explicit zero
objective entry is written for columns without nonzeros). Integer columns
sit between ``MARKER INTORG``/``INTEND`` pairs and carry ``BV`` bounds.
In fixed format, names longer than eight characters are replaced by
``C``/``R`` plus a base-36 counter; comment lines ``* MAPC short long``
(columns) and ``* MAPR short long`` (rows)
record the original names and are honored by :func:`parse_mps`.
Numbers are shortened to the twelve-character field when necessary.
"""

from __future__ import annotations

import math
import re

from .model import LinearModel, ModelInputError

TERMS_PER_LINE = 8
MPS_NAME = 8
MPS_NUM = 12


def _num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def _lp_expr(terms, names) -> list[str]:
    out = []
    for i, (c, j) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = names[j] if a == 1 else f"{_num(a)} {names[j]}"
        out.append(f"{sign} {body}" if (i or sign == "-") else body)
    return out


def _wrap(prefix: str, toks: list[str], tail: str = "") -> list[str]:
    lines = []
    for i in range(0, max(len(toks), 1), TERMS_PER_LINE):
        chunk = " ".join(toks[i:i + TERMS_PER_LINE])
        lines.append((prefix if i == 0 else "   ") + chunk)
    lines[-1] = (lines[-1] + " " + tail).rstrip()
    return lines


def emit_lp(model: LinearModel) -> str:
    model.validate()
    names = [v.name for v in model.variables]
    out = [f"\\ Problem: {model.name}", "Minimize" if model.sense == "min" else "Maximize"]
    out += _wrap(" obj: ", _lp_expr(model.objective, names))
    out.append("Subject To")
    for c in model.constraints:
        toks = _lp_expr(c.terms, names) or ["0", names[0]]
        out += _wrap(f" {c.name}: ", toks, f"{c.sense} {_num(c.rhs)}")
    out.append("Bounds")
    for v in model.variables:
        lo = "-inf" if v.lower == -math.inf else _num(v.lower)
        hi = "+inf" if v.upper == math.inf else _num(v.upper)
        out.append(f" {lo} <= {v.name} <= {hi}")
    binaries = [v.name for v in model.variables if v.kind == "binary"]
    if binaries:
        out.append("Binaries")
        for i in range(0, len(binaries), TERMS_PER_LINE):
            out.append(" " + " ".join(binaries[i:i + TERMS_PER_LINE]))
    out.append("End")
    return "\n".join(out) + "\n"


# -- LP parsing ----------------------------------------------------------------

_SECTIONS = {
    "minimize": "obj", "minimum": "obj", "min": "obj",
    "maximize": "obj", "maximum": "obj", "max": "obj",
    "subject to": "st", "such that": "st", "st": "st", "s.t.": "st",
    "bounds": "bounds", "bound": "bounds",
    "binaries": "bin", "binary": "bin", "bin": "bin",
    "generals": "gen", "general": "gen", "end": "end",
}
_TOKEN = re.compile(
    r"<=|>=|=<|=>|[<>=]|[+-]"
    r"|(?<![\w.])(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?![\w.])"
    r"|[^\s+\-<>=]+"
)


def _is_number(tok: str) -> bool:
    try:
        float(tok)
        return True
    except ValueError:
        return False


def _parse_expr(tokens: list[str], index: dict[str, int], declare) -> list[tuple[float, int]]:
    terms, sign, coef = [], 1.0, None
    for tok in tokens:
        if tok in "+-":
            sign = -sign if tok == "-" else sign
        elif _is_number(tok) and tok.lower() not in ("inf", "infinity", "nan"):
            coef = float(tok)
        else:
            j = declare(tok)
            c = sign * (1.0 if coef is None else coef)
            if c != 0:
                terms.append((c, j))
            sign, coef = 1.0, None
    return terms


def parse_lp(text: str) -> LinearModel:
    model = LinearModel()
    index: dict[str, int] = {}
    pending: dict[str, tuple] = {}
    binaries: set[str] = set()

    def declare(name: str) -> int:
        if name not in index:
            index[name] = len(model.variables)
            model.add_var(name, "continuous", 0.0, math.inf)
        return index[name]

    # join logical lines per section
    section, chunks = None, []
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0].strip() if not raw.startswith("\\ Problem:") else ""
        if raw.startswith("\\ Problem:"):
            model.name = raw.split(":", 1)[1].strip()
            continue
        if not line:
            continue
        key = line.lower()
        if key in _SECTIONS:
            section = _SECTIONS[key]
            if section == "obj":
                model.sense = "min" if key.startswith("min") else "max"
            chunks.append((section, None))
            continue
        chunks.append((section, line))

    statements: dict[str, list[str]] = {"obj": [], "st": [], "bounds": [], "bin": [], "gen": []}
    buf: list[str] = []
    cur = None
    for section, line in chunks:
        if line is None or section != cur:
            if buf:
                statements[cur].append(" ".join(buf))
                buf = []
            cur = section
            if line is None:
                continue
        if section == "st":
            starts_new = re.match(r"^[A-Za-z_][\w.\[\]]*\s*:", line) is not None
            if starts_new and buf:
                statements["st"].append(" ".join(buf))
                buf = []
            buf.append(line)
        elif section == "obj":
            buf.append(line)
        elif section in ("bounds", "bin", "gen"):
            statements[section].append(line)
        elif section == "end":
            break
        else:
            raise ModelInputError(f"text outside any section: {line!r}")
    if buf and cur in statements:
        statements[cur].append(" ".join(buf))

    # bounds first so that column order follows the Bounds section
    for line in statements["bounds"]:
        toks = _TOKEN.findall(line)
        toks = _merge_signed(toks)
        if len(toks) == 5:
            lo, _, name, _, hi = toks
            pending[name] = (_bound(lo), _bound(hi))
            declare(name)
        elif len(toks) == 2 and toks[1].lower() == "free":
            pending[toks[0]] = (-math.inf, math.inf)
            declare(toks[0])
        elif len(toks) == 3:
            a, op, b = toks
            if _is_number(a) or a.lower() in ("-inf", "+inf", "inf"):
                a, b, op = b, a, {"<=": ">=", ">=": "<=", "=": "="}[op]
            lo, hi = pending.get(a, (0.0, math.inf))
            val = _bound(b)
            if op == "<=":
                hi = val
            elif op == ">=":
                lo = val
            else:
                lo = hi = val
            pending[a] = (lo, hi)
            declare(a)
        else:
            raise ModelInputError(f"cannot parse bound {line!r}")

    for stmt in statements["obj"]:
        toks = _merge_signed(_TOKEN.findall(stmt))
        if toks and toks[0].endswith(":"):
            toks = toks[1:]
        elif len(toks) > 1 and toks[1] == ":":
            toks = toks[2:]
        model.objective = _parse_expr(toks, index, declare)

    for n, stmt in enumerate(statements["st"]):
        name, _, body = stmt.partition(":") if re.match(r"^[A-Za-z_][\w.\[\]]*\s*:", stmt) else (f"R{n}", "", stmt)
        toks = _TOKEN.findall(body)
        ops = [i for i, t in enumerate(toks) if t in ("<=", ">=", "=<", "=>", "<", ">", "=")]
        if len(ops) != 1:
            raise ModelInputError(f"constraint {name.strip()}: expected one sense")
        k = ops[0]
        sense = {"=<": "<=", "<": "<=", "=>": ">=", ">": ">="}.get(toks[k], toks[k])
        rhs_toks = _merge_signed(toks[k + 1:])
        if len(rhs_toks) != 1 or not _is_number(rhs_toks[0]):
            raise ModelInputError(f"constraint {name.strip()}: bad right-hand side")
        terms = _parse_expr(toks[:k], index, declare)
        model.add_constraint(name.strip(), terms, sense, float(rhs_toks[0]))

    for line in statements["bin"]:
        for tok in line.split():
            declare(tok)
            binaries.add(tok)
    for line in statements["gen"]:
        for tok in line.split():
            declare(tok)

    for v in model.variables:
        if v.name in binaries:
            v.kind = "binary"
            v.lower, v.upper = pending.get(v.name, (0.0, 1.0))
        elif v.name in pending:
            v.lower, v.upper = pending[v.name]
    return model


def _merge_signed(toks: list[str]) -> list[str]:
    """Fold a leading sign into the following number or 'inf'."""
    out: list[str] = []
    i = 0
    while i < len(toks):
        t = toks[i]
        nxt = toks[i + 1] if i + 1 < len(toks) else None
        prev_is_op = not out or out[-1] in ("<=", ">=", "=", "=<", "=>", "<", ">")
        if t in "+-" and nxt is not None and prev_is_op and (_is_number(nxt) or nxt.lower() in ("inf", "infinity")):
            out.append(t + nxt)
            i += 2
            continue
        out.append(t)
        i += 1
    return out


def _bound(tok: str) -> float:
    t = tok.lower()
    if t in ("-inf", "-infinity"):
        return -math.inf
    if t in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    return float(tok)


# -- MPS -------------------------------------------------------------------------


def _base36(n: int) -> str:
    digits = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    s = ""
    while True:
        n, r = divmod(n, 36)
        s = digits[r] + s
        if n == 0:
            return s


def mangle_names(names: list[str], prefix: str, limit: int = MPS_NAME) -> list[str]:
    """Short unique names: names within ``limit`` and free of blanks are
    kept, the others become prefix + base-36 counter skipping any taken
    name."""
    keep = [n if len(n) <= limit and " " not in n else None for n in names]
    taken = {n for n in keep if n is not None}
    if len(taken) != sum(n is not None for n in keep):
        raise ModelInputError("duplicate names")
    out, counter = [], 0
    for n in keep:
        if n is None:
            while True:
                cand = prefix + _base36(counter)
                counter += 1
                if cand not in taken:
                    break
            if len(cand) > limit:
                raise ModelInputError("too many names to mangle")
            taken.add(cand)
            n = cand
        out.append(n)
    return out


def _fit_number(x: float, width: int = MPS_NUM) -> str:
    s = _num(x)
    if len(s) <= width:
        return s
    for prec in range(16, 0, -1):
        s = f"{x:.{prec}g}"
        if len(s) <= width:
            return s
    raise ModelInputError(f"cannot fit {x!r} into {width} characters")


def emit_mps(model: LinearModel, free: bool = False) -> str:
    model.validate()
    vnames = [v.name for v in model.variables]
    rnames = [c.name for c in model.constraints]
    obj = "OBJ"
    if free:
        cols, rows = vnames, rnames
        num = _num
        if any(" " in n for n in cols + rows):
            raise ModelInputError("free MPS names must not contain blanks")
    else:
        cols = mangle_names(vnames, "C")
        rows = mangle_names(rnames, "R")
        num = _fit_number
    if obj in rows:
        obj = next(f"OBJ{i}" for i in range(10**6) if f"OBJ{i}" not in rows)

    def line(code="", a="", b="", v="", c="", w=""):
        if free:
            return " " + " ".join(x for x in (code, a, b, v, c, w) if x)
        s = f" {code:<2} {a:<8}  {b:<8}  {v:>12}"
        if c:
            s += f"   {c:<8}  {w:>12}"
        return s.rstrip()

    out = [f"NAME          {model.name}" if not free else f"NAME {model.name}"]
    if not free:
        for short, long in zip(cols, vnames):
            if short != long:
                out.append(f"* MAPC {short} {long}")
        for short, long in zip(rows, rnames):
            if short != long:
                out.append(f"* MAPR {short} {long}")
    if model.sense == "max":
        out += ["OBJSENSE", "    MAX"]
    out.append("ROWS")
    out.append(line("N", obj))
    code = {"<=": "L", "=": "E", ">=": "G"}
    for c, r in zip(model.constraints, rows):
        out.append(line(code[c.sense], r))

    entries: list[list[tuple[str, float]]] = [[] for _ in model.variables]
    for coef, j in model.objective:
        if coef:
            entries[j].append((obj, coef))
    for c, r in zip(model.constraints, rows):
        for coef, j in c.terms:
            if coef:
                entries[j].append((r, coef))

    out.append("COLUMNS")
    in_int = False
    marker = 0
    for j, v in enumerate(model.variables):
        want = v.kind == "binary"
        if want != in_int:
            tag = "'INTORG'" if want else "'INTEND'"
            out.append(line("", f"M{marker}", "'MARKER'", "", tag) if not free else f" M{marker} 'MARKER' {tag}")
            marker += 1
            in_int = want
        ents = entries[j] or [(obj, 0.0)]
        for k in range(0, len(ents), 2):
            pair = ents[k:k + 2]
            if len(pair) == 2:
                out.append(line("", cols[j], pair[0][0], num(pair[0][1]), pair[1][0], num(pair[1][1])))
            else:
                out.append(line("", cols[j], pair[0][0], num(pair[0][1])))
    if in_int:
        out.append(line("", f"M{marker}", "'MARKER'", "", "'INTEND'") if not free else f" M{marker} 'MARKER' 'INTEND'")

    out.append("RHS")
    nz = [(r, c.rhs) for c, r in zip(model.constraints, rows) if c.rhs != 0]
    for k in range(0, len(nz), 2):
        pair = nz[k:k + 2]
        if len(pair) == 2:
            out.append(line("", "RHS", pair[0][0], num(pair[0][1]), pair[1][0], num(pair[1][1])))
        else:
            out.append(line("", "RHS", pair[0][0], num(pair[0][1])))

    out.append("BOUNDS")
    for j, v in enumerate(model.variables):
        if v.kind == "binary" and v.lower == 0 and v.upper == 1:
            out.append(line("BV", "BND", cols[j]))
            continue
        if v.lower == -math.inf and v.upper == math.inf:
            out.append(line("FR", "BND", cols[j]))
            continue
        if v.lower == -math.inf:
            out.append(line("MI", "BND", cols[j]))
        elif v.lower != 0:
            out.append(line("LO", "BND", cols[j], num(v.lower)))
        if v.upper != math.inf:
            out.append(line("UP", "BND", cols[j], num(v.upper)))
    out.append("ENDATA")
    return "\n".join(out) + "\n"


def _fixed_fields(line: str) -> list[str]:
    # columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61 (1-based)
    spans = [(1, 3), (4, 12), (14, 22), (24, 36), (39, 47), (49, 61)]
    return [line[a:b].strip() for a, b in spans]


def parse_mps(text: str, free: bool | None = None) -> LinearModel:
    """Parse fixed or free MPS. With ``free=None`` lines are split on
    whitespace, which reads both layouts as long as names have no blanks."""
    model = LinearModel()
    alias: dict[str, dict[str, str]] = {"MAPC": {}, "MAPR": {}}
    row_sense: dict[str, str] = {}
    row_order: list[str] = []
    obj_row = None
    col_index: dict[str, int] = {}
    row_terms: dict[str, list[tuple[float, int]]] = {}
    rhs: dict[str, float] = {}
    section = None
    in_int = False
    bounds_seen: dict[int, list] = {}
    objsense_next = False

    for raw in text.splitlines():
        if raw.startswith("*"):
            parts = raw.split()
            if len(parts) == 4 and parts[1] in alias:
                alias[parts[1]][parts[2]] = parts[3]
            continue
        if not raw.strip():
            continue
        if not raw[0].isspace():
            head = raw.split()
            section = head[0].upper()
            if section == "NAME":
                model.name = raw[4:].strip() or "model"
            elif section == "OBJSENSE":
                if len(head) > 1:
                    model.sense = "max" if head[1].upper().startswith("MAX") else "min"
                else:
                    objsense_next = True
            elif section == "ENDATA":
                break
            continue
        if objsense_next:
            model.sense = "max" if raw.strip().upper().startswith("MAX") else "min"
            objsense_next = False
            continue
        if free is False:
            f = _fixed_fields(raw)
        else:
            f = raw.split()
        if section == "ROWS":
            code, name = f[0].upper(), f[1]
            if code == "N":
                if obj_row is None:
                    obj_row = name
                continue
            row_sense[name] = {"L": "<=", "E": "=", "G": ">="}[code]
            row_order.append(name)
            row_terms[name] = []
        elif section == "COLUMNS":
            toks = [x for x in f if x] if free is False else f
            if len(toks) >= 3 and toks[1] == "'MARKER'":
                in_int = toks[2] == "'INTORG'"
                continue
            col = toks[0]
            if col not in col_index:
                col_index[col] = len(model.variables)
                model.add_var(col, "binary" if in_int else "continuous", 0.0, math.inf)
            j = col_index[col]
            for k in range(1, len(toks) - 1, 2):
                r, val = toks[k], float(toks[k + 1])
                if val == 0:
                    continue
                if r == obj_row:
                    model.objective.append((val, j))
                else:
                    row_terms[r].append((val, j))
        elif section == "RHS":
            toks = [x for x in f if x] if free is False else f
            body = toks[1:] if len(toks) % 2 == 1 else toks
            for k in range(0, len(body) - 1, 2):
                rhs[body[k]] = float(body[k + 1])
        elif section == "BOUNDS":
            toks = [x for x in f if x] if free is False else f
            code, col = toks[0].upper(), toks[2]
            val = float(toks[3]) if len(toks) > 3 else None
            j = col_index[col]
            v = model.variables[j]
            bounds_seen.setdefault(j, [])
            if code == "BV":
                v.kind, v.lower, v.upper = "binary", 0.0, 1.0
            elif code == "LO":
                v.lower = val
            elif code == "UP":
                v.upper = val
            elif code == "FX":
                v.lower = v.upper = val
            elif code == "FR":
                v.lower, v.upper = -math.inf, math.inf
            elif code == "MI":
                v.lower = -math.inf
            elif code == "PL":
                v.upper = math.inf
            else:
                raise ModelInputError(f"unsupported bound type {code}")
        elif section in ("RANGES",):
            raise ModelInputError("RANGES are not supported")
    for v in model.variables:
        if v.kind == "binary" and v.upper == math.inf:
            v.upper = 1.0
    for r in row_order:
        model.add_constraint(r, row_terms[r], row_sense[r], rhs.get(r, 0.0))
    for v in model.variables:
        v.name = alias["MAPC"].get(v.name, v.name)
    for c in model.constraints:
        c.name = alias["MAPR"].get(c.name, c.name)
    return model


def emit(model: LinearModel, fmt: str) -> str:
    if fmt == "lp":
        return emit_lp(model)
    if fmt == "mps":
        return emit_mps(model)
    if fmt == "freemps":
        return emit_mps(model, free=True)
    raise ValueError(f"unknown format {fmt!r}")


def parse(text: str, fmt: str) -> LinearModel:
    if fmt == "lp":
        return parse_lp(text)
    if fmt == "mps":
        return parse_mps(text, free=False)
    if fmt == "freemps":
        return parse_mps(text, free=True)
    raise ValueError(f"unknown format {fmt!r}")
