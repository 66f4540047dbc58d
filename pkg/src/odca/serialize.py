"""JSON documents for machines, configurations and vector spaces.

Every document is an envelope ``{"type": ..., "version": "1", "payload": ...}``.
Rationals are strings such as ``"3"`` or ``"-7/2"``.  Output uses a fixed key
order, two-space indentation and a trailing newline, so serializing a parsed
canonical document reproduces it byte for byte.
"""

from __future__ import annotations

import json

from . import exactla as la
from .boolean import BooleanODCA, validate_boolean
from .errors import ValidationError
from .exactla import VectorSpace
from .model import Configuration, WeightedODCA, validate
from .translate import WeightedOCA, validate_oca

VERSION = "1"
TYPES = ("weighted-odca", "boolean-odca", "weighted-oca", "config", "vector-space")
TESTS = (("zero", 0), ("pos", 1))


def _fail(msg):
    raise ValidationError(msg)


def _keys(obj, required, where):
    if not isinstance(obj, dict):
        _fail(f"{where}: expected an object")
    missing = [k for k in required if k not in obj]
    extra = [k for k in obj if k not in required]
    if missing:
        _fail(f"{where}: missing field(s) {', '.join(missing)}")
    if extra:
        _fail(f"{where}: unknown field(s) {', '.join(extra)}")


def _list(obj, where):
    if not isinstance(obj, list):
        _fail(f"{where}: expected a list")
    return obj


def _names(obj, where):
    items = _list(obj, where)
    if not all(isinstance(x, str) for x in items):
        _fail(f"{where}: expected a list of strings")
    if len(set(items)) != len(items):
        _fail(f"{where}: duplicate names")
    return tuple(items)


def _rat(x, where):
    try:
        return la.parse_rational(x)
    except (ValueError, ZeroDivisionError) as exc:
        _fail(f"{where}: {exc}")


def _vec(obj, n, where):
    items = _list(obj, where)
    if n is not None and len(items) != n:
        _fail(f"{where}: expected {n} entries, got {len(items)}")
    return tuple(_rat(x, where) for x in items)


def _mat(obj, n, where):
    rows = _list(obj, where)
    if len(rows) != n:
        _fail(f"{where}: expected {n} rows, got {len(rows)}")
    return tuple(_vec(r, n, where) for r in rows)


def _bit(x, where):
    if isinstance(x, bool) or x not in (0, 1):
        _fail(f"{where}: expected 0 or 1, got {x!r}")
    return int(x)


def _fmt_vec(v):
    return [la.format_rational(x) for x in v]


# -- counter structure (shared by both ODCA kinds) ----------------------------

def _parse_counter(p, where):
    alphabet = _names(p["alphabet"], f"{where}.alphabet")
    if any(len(a) != 1 for a in alphabet):
        _fail(f"{where}.alphabet: symbols must be single characters")
    cs = _names(p["counter_states"], f"{where}.counter_states")
    p0 = p["initial_counter_state"]
    if p0 not in cs:
        _fail(f"{where}.initial_counter_state: unknown counter state {p0!r}")
    tables = []
    for name in ("delta0", "delta1"):
        obj = p[name]
        _keys(obj, cs, f"{where}.{name}")
        table = {}
        for c in cs:
            row = obj[c]
            if not isinstance(row, dict):
                _fail(f"{where}.{name}.{c}: expected an object")
            for a in row:
                if a not in alphabet:
                    _fail(f"{where}.{name}.{c}: unknown symbol {a!r}")
            for a in alphabet:
                if a not in row:
                    _fail(f"{where}.{name}: missing entry for ({c}, {a})")
                entry = row[a]
                if not (isinstance(entry, list) and len(entry) == 2 and entry[0] in cs
                        and isinstance(entry[1], int) and not isinstance(entry[1], bool)):
                    _fail(f"{where}.{name}.{c}.{a}: expected [counter state, effect]")
                table[c, a] = (entry[0], entry[1])
        tables.append(table)
    return alphabet, cs, p0, tables[0], tables[1]


def _dump_counter(m):
    return {
        "alphabet": list(m.alphabet),
        "counter_states": list(m.counter_states),
        "initial_counter_state": m.initial_counter_state,
        "delta0": {c: {a: list(m.delta0[c, a]) for a in m.alphabet} for c in m.counter_states},
        "delta1": {c: {a: list(m.delta1[c, a]) for a in m.alphabet} for c in m.counter_states},
    }


ODCA_FIELDS = ("alphabet", "counter_states", "initial_counter_state", "delta0", "delta1",
               "fsm_states", "lambda", "delta", "eta")


def _parse_odca(p, boolean):
    where = "payload"
    _keys(p, ODCA_FIELDS, where)
    alphabet, cs, p0, d0, d1 = _parse_counter(p, where)
    qs = _names(p["fsm_states"], f"{where}.fsm_states")
    n = len(qs)
    _keys(p["delta"], alphabet, f"{where}.delta")
    delta = {}
    for a in alphabet:
        _keys(p["delta"][a], [t for t, _ in TESTS], f"{where}.delta.{a}")
        for t, d in TESTS:
            delta[a, d] = _mat(p["delta"][a][t], n, f"{where}.delta.{a}.{t}")
    lam = _vec(p["lambda"], n, f"{where}.lambda")
    eta = _vec(p["eta"], n, f"{where}.eta")
    if boolean:
        def bits(v, w):
            return tuple(_bit(x, w) for x in v)

        m = BooleanODCA(alphabet, cs, p0, d0, d1, qs, bits(lam, "lambda"),
                        {k: tuple(bits(r, f"delta {k}") for r in v) for k, v in delta.items()},
                        bits(eta, "eta"))
        problems = validate_boolean(m)
    else:
        m = WeightedODCA(alphabet, cs, p0, d0, d1, qs, lam, delta, eta)
        problems = validate(m)
    if problems:
        raise ValidationError(problems)
    return m


def _dump_odca(m, boolean):
    out = _dump_counter(m)
    if boolean:
        def vec(v):
            return [int(x) for x in v]
    else:
        vec = _fmt_vec
    out["fsm_states"] = list(m.fsm_states)
    out["lambda"] = vec(m.lam)
    out["delta"] = {a: {t: [vec(r) for r in m.delta[a, d]] for t, d in TESTS} for a in m.alphabet}
    out["eta"] = vec(m.eta)
    return out


# -- weighted OCA --------------------------------------------------------------

OCA_FIELDS = ("alphabet", "states", "lambda", "eta", "trans0", "trans1")
TRANS_FIELDS = ("from", "symbol", "to", "effect", "weight")


def _parse_oca(p):
    where = "payload"
    _keys(p, OCA_FIELDS, where)
    alphabet = _names(p["alphabet"], f"{where}.alphabet")
    states = _names(p["states"], f"{where}.states")
    idx = {q: i for i, q in enumerate(states)}
    n = len(states)
    tables = []
    for name in ("trans0", "trans1"):
        table = {}
        for k, t in enumerate(_list(p[name], f"{where}.{name}")):
            w = f"{where}.{name}[{k}]"
            _keys(t, TRANS_FIELDS, w)
            if t["from"] not in idx or t["to"] not in idx:
                _fail(f"{w}: unknown state")
            if t["symbol"] not in alphabet:
                _fail(f"{w}: unknown symbol {t['symbol']!r}")
            key = (idx[t["from"]], t["symbol"], idx[t["to"]])
            if key in table:
                _fail(f"{w}: duplicate transition")
            if not isinstance(t["effect"], int) or isinstance(t["effect"], bool):
                _fail(f"{w}: effect must be an integer")
            table[key] = (t["effect"], _rat(t["weight"], w))
        tables.append(table)
    m = WeightedOCA(alphabet, states, _vec(p["lambda"], n, f"{where}.lambda"),
                    _vec(p["eta"], n, f"{where}.eta"), tables[0], tables[1])
    problems = validate_oca(m)
    if problems:
        raise ValidationError(problems)
    return m


def _dump_oca(m):
    sym = {a: k for k, a in enumerate(m.alphabet)}

    def trans(table):
        return [
            {"from": m.states[i], "symbol": a, "to": m.states[j], "effect": e, "weight": la.format_rational(w)}
            for (i, a, j), (e, w) in sorted(table.items(), key=lambda kv: (kv[0][0], sym[kv[0][1]], kv[0][2]))
        ]

    return {
        "alphabet": list(m.alphabet),
        "states": list(m.states),
        "lambda": _fmt_vec(m.lam),
        "eta": _fmt_vec(m.eta),
        "trans0": trans(m.trans0),
        "trans1": trans(m.trans1),
    }


# -- small documents -----------------------------------------------------------

def _parse_config(p):
    _keys(p, ("x", "counter_state", "counter"), "payload")
    n = p["counter"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        _fail("payload.counter: expected a natural number")
    if not isinstance(p["counter_state"], str):
        _fail("payload.counter_state: expected a string")
    return Configuration(_vec(p["x"], None, "payload.x"), p["counter_state"], n)


def _parse_space(p):
    _keys(p, ("dim", "basis"), "payload")
    dim = p["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        _fail("payload.dim: expected a natural number")
    basis = [_vec(b, dim, "payload.basis") for b in _list(p["basis"], "payload.basis")]
    return VectorSpace.span(dim, basis)


# -- entry points --------------------------------------------------------------

def type_of(obj) -> str:
    if isinstance(obj, WeightedODCA):
        return "weighted-odca"
    if isinstance(obj, BooleanODCA):
        return "boolean-odca"
    if isinstance(obj, WeightedOCA):
        return "weighted-oca"
    if isinstance(obj, Configuration):
        return "config"
    if isinstance(obj, VectorSpace):
        return "vector-space"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_document(obj) -> dict:
    kind = type_of(obj)
    if kind == "weighted-odca":
        payload = _dump_odca(obj, False)
    elif kind == "boolean-odca":
        payload = _dump_odca(obj, True)
    elif kind == "weighted-oca":
        payload = _dump_oca(obj)
    elif kind == "config":
        payload = {"x": _fmt_vec(obj.x), "counter_state": obj.p, "counter": obj.n}
    else:
        payload = {"dim": obj.dim, "basis": [_fmt_vec(b) for b in obj.basis]}
    return {"type": kind, "version": VERSION, "payload": payload}


def dumps(obj) -> str:
    return json.dumps(to_document(obj), indent=2, ensure_ascii=False) + "\n"


def from_document(doc, expected=None):
    _keys(doc, ("type", "version", "payload"), "document")
    kind = doc["type"]
    if kind not in TYPES:
        _fail(f"unknown document type {kind!r}")
    if doc["version"] != VERSION:
        _fail(f"unsupported version {doc['version']!r}")
    if expected is not None and kind not in ((expected,) if isinstance(expected, str) else expected):
        _fail(f"expected a {expected} document, got {kind}")
    p = doc["payload"]
    if kind == "weighted-odca":
        return _parse_odca(p, False)
    if kind == "boolean-odca":
        return _parse_odca(p, True)
    if kind == "weighted-oca":
        return _parse_oca(p)
    if kind == "config":
        return _parse_config(p)
    return _parse_space(p)


def loads(text: str, expected=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from None
    return from_document(doc, expected)


def load(path, expected=None):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), expected)


def dump(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
