"""Integer-only JSON file formats.

Gram matrices travel as {"n", "scale", "entries"} with integer entries
and a positive integer scale: the matrix is entries/scale. Code problems
travel as {"n", "d", "words", "extra"?, "symmetry"?, "min_value"?}.
Serialization is canonical (sorted keys, no whitespace, one trailing
newline) so that parse + re-render is byte identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .codes import CodeSpec, basis_embedding, close_group, monomial_matrix, symmetry_group
from .lattice import GramMatrix
from .matrices import RatMatrix
from .realization import RealizationProblem


class ParseError(ValueError):
    """Malformed input document."""


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _load_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    return doc


def _int_field(doc: dict, key: str) -> int:
    val = doc.get(key)
    if not isinstance(val, int) or isinstance(val, bool):
        raise ParseError(f"field {key!r} must be an integer")
    return val


def _int_vector(val, n: int, what: str) -> tuple[int, ...]:
    if (
        not isinstance(val, list)
        or len(val) != n
        or any(not isinstance(x, int) or isinstance(x, bool) for x in val)
    ):
        raise ParseError(f"{what} must be a list of {n} integers")
    return tuple(val)


def parse_gram(text: str) -> GramMatrix:
    """Read a Gram matrix document; symmetry is checked here, positive
    definiteness by the GramMatrix constructor."""
    doc = _load_json(text)
    n = _int_field(doc, "n")
    scale = _int_field(doc, "scale")
    if n < 1 or scale < 1:
        raise ParseError("n and scale must be positive")
    entries = doc.get("entries")
    if not isinstance(entries, list) or len(entries) != n:
        raise ParseError(f"entries must be a list of {n} rows")
    rows = [_int_vector(r, n, "matrix row") for r in entries]
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ParseError("matrix is not symmetric")
    return GramMatrix(RatMatrix(rows).scale(Fraction(1, scale)))


def render_gram(g: GramMatrix) -> dict:
    return {
        "n": g.n,
        "scale": g.scale,
        "entries": [list(r) for r in g.gint.entries],
    }


def dump_gram(g: GramMatrix) -> str:
    return canonical_json(render_gram(g))


def parse_code(text: str) -> tuple[CodeSpec, RealizationProblem]:
    """Read a code realization document.

    extra vectors are coordinates in the distinguished code basis.
    symmetry is "auto" (search for all monomial symmetries of the
    targets), "none", or an explicit list of permutations given as
    length-n lists of 1-based images.
    """
    doc = _load_json(text)
    n = _int_field(doc, "n")
    d = _int_field(doc, "d")
    words_field = doc.get("words")
    if not isinstance(words_field, list) or not words_field:
        raise ParseError("words must be a nonempty list")
    words = tuple(
        tuple(x % d for x in _int_vector(w, n, "word")) for w in words_field
    )
    try:
        spec = CodeSpec(n=n, d=d, words=words)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

    extra_field = doc.get("extra")
    if extra_field is None:
        extras: tuple[tuple[int, ...], ...] = ()
    elif extra_field and isinstance(extra_field, list) and isinstance(extra_field[0], list):
        extras = tuple(_int_vector(v, n, "extra vector") for v in extra_field)
    else:
        extras = (_int_vector(extra_field, n, "extra vector"),)

    min_field = doc.get("min_value", 1)
    if isinstance(min_field, int) and not isinstance(min_field, bool):
        min_value = Fraction(min_field)
    elif (
        isinstance(min_field, list)
        and len(min_field) == 2
        and all(isinstance(x, int) and not isinstance(x, bool) for x in min_field)
    ):
        min_value = Fraction(min_field[0], min_field[1])
    else:
        raise ParseError("min_value must be an integer or [num, den]")
    if min_value <= 0:
        raise ParseError("min_value must be positive")

    try:
        emb = basis_embedding(spec)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

    sym = doc.get("symmetry", "auto")
    if sym == "auto":
        group = symmetry_group(emb, extras)
    elif sym == "none":
        group = ()
    elif isinstance(sym, list):
        gens = []
        for perm in sym:
            images = _int_vector(perm, n, "permutation")
            if sorted(images) != list(range(1, n + 1)):
                raise ParseError("permutation must list each of 1..n once")
            sigma = tuple(x - 1 for x in images)
            gens.append(monomial_matrix(sigma, (1,) * n))
        group = close_group(tuple(gens))
    else:
        raise ParseError("symmetry must be \"auto\", \"none\" or a list")

    problem = RealizationProblem(
        embedding=emb,
        extras=extras,
        group=group,
        min_value=min_value,
        preload_box_cuts=True,
    )
    return spec, problem
