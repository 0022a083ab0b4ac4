"""JSON wire format for polynomials, systems and semialgebraic sets.

A term is [num, den, exponents] for a rational coefficient or
[re_num, re_den, im_num, im_den, exponents] for a Gaussian one.  A
polynomial is a list of terms.  Documents look like

    {"vars": ["x", "y"], "system": {"field": "real", "polys": [...]}}
    {"vars": ["x"], "set": {"blocks": [{"eq": poly, "gt": [...], "geq": [...]}]}}
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InvariantViolation, ParseError
from .euler import BasicBlock, SemialgebraicSet
from .poly import Field, GaussianRational, PolySystem, SparsePoly


def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}: expected an integer, got {v!r}")
    return v


def _ratio(num, den, where):
    num, den = _int(num, where), _int(den, where)
    if den == 0:
        raise ParseError(f"{where}: zero denominator")
    return Fraction(num, den)


def parse_poly(data, nvars, where="poly") -> SparsePoly:
    if not isinstance(data, list):
        raise ParseError(f"{where}: a polynomial is a list of terms")
    terms = {}
    for t, term in enumerate(data):
        at = f"{where}[{t}]"
        if not isinstance(term, list) or len(term) not in (3, 5):
            raise ParseError(f"{at}: a term is [num, den, exps] or [rn, rd, in, id, exps]")
        exps = term[-1]
        if not isinstance(exps, list) or len(exps) != nvars:
            raise ParseError(f"{at}: exponent vector must have length {nvars}")
        e = tuple(_int(k, at) for k in exps)
        if any(k < 0 for k in e):
            raise ParseError(f"{at}: negative exponent")
        if len(term) == 3:
            c = _ratio(term[0], term[1], at)
        else:
            c = GaussianRational(_ratio(term[0], term[1], at), _ratio(term[2], term[3], at))
        terms[e] = terms.get(e, 0) + c
    return SparsePoly(nvars, terms)


def dump_poly(p: SparsePoly):
    out = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        if isinstance(c, GaussianRational):
            out.append([c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator,
                        list(e)])
        else:
            c = Fraction(c)
            out.append([c.numerator, c.denominator, list(e)])
    return out


def _vars(doc):
    names = doc.get("vars")
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        raise ParseError("vars: expected a list of names")
    if len(set(names)) != len(names):
        raise ParseError("vars: duplicate names")
    return names


def parse_document(doc):
    """PolySystem or SemialgebraicSet from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    n = len(_vars(doc))
    if ("system" in doc) == ("set" in doc):
        raise ParseError("exactly one of 'system' and 'set' is required")
    if "system" in doc:
        body = doc["system"]
        if not isinstance(body, dict):
            raise ParseError("system: expected an object")
        try:
            field = Field(body.get("field", "complex"))
        except ValueError:
            raise ParseError(f"system.field: unknown field {body.get('field')!r}") from None
        polys = body.get("polys", [])
        if not isinstance(polys, list):
            raise ParseError("system.polys: expected a list")
        ps = [parse_poly(p, n, f"system.polys[{i}]") for i, p in enumerate(polys)]
        try:
            return PolySystem(n, ps, field)
        except Exception as exc:
            raise InvariantViolation(str(exc)) from exc
    body = doc["set"]
    if not isinstance(body, dict) or not isinstance(body.get("blocks"), list):
        raise ParseError("set.blocks: expected a list")
    blocks = []
    for i, b in enumerate(body["blocks"]):
        at = f"set.blocks[{i}]"
        if not isinstance(b, dict):
            raise ParseError(f"{at}: expected an object")
        g = parse_poly(b.get("eq", []), n, f"{at}.eq")
        gt = [parse_poly(p, n, f"{at}.gt[{j}]") for j, p in enumerate(b.get("gt", []))]
        geq = [parse_poly(p, n, f"{at}.geq[{j}]") for j, p in enumerate(b.get("geq", []))]
        blocks.append(BasicBlock(g, gt, geq))
    return SemialgebraicSet(n, blocks)


def parse_input(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_document(doc)


def default_names(n):
    return [f"x{i}" for i in range(n)]


def dump_document(obj, names=None):
    if isinstance(obj, PolySystem):
        names = names or default_names(obj.nvars)
        return {"vars": list(names),
                "system": {"field": obj.field.value, "polys": [dump_poly(p) for p in obj.polys]}}
    if isinstance(obj, SemialgebraicSet):
        names = names or default_names(obj.n)
        return {"vars": list(names), "set": {"blocks": [
            {"eq": dump_poly(b.g), "gt": [dump_poly(p) for p in b.strict],
             "geq": [dump_poly(p) for p in b.nonstrict]} for b in obj.blocks]}}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))
