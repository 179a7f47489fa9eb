"""Command-line front end.

Every command takes --surface (a bundled name or a JSON path) and
prints either human-readable text or structured JSON (--format).  The
verify command runs the cross-check battery over all strings up to a
length bound, optionally in parallel; its output is deterministic and
independent of the worker count.
"""

from __future__ import annotations

import json
import os
import re
from concurrent.futures import ProcessPoolExecutor

import click

from .errors import QClusterError
from .expansion import classical_specialization, quantum_expansion
from .kronecker import build_weighted, equality_check, r_s, recursion_checks
from .seeds import initial_seed, mutate_seed, mutation_sequence
from .skein_mult import multiply_and_certify, relative_exponent_check
from .snake import (
    check_bijection,
    enumerate_matchings,
    label_snake,
    matching_to_submodule,
)
from .strings import (
    Letter,
    StringWord,
    enumerate_canonical_submodules,
    enumerate_strings,
    trivial_word,
    validate_string,
)
from .surface import build_quiver, check_gentle, load_surface, pair_from_surface
from .valuation import compare_valuations, valuation_v, valuation_v_gamma

_TOKEN = re.compile(r"([<>])\s*([A-Za-z0-9_]*)\s*\1|\d+")


def parse_string(text: str, quiver) -> StringWord:
    """Parse "1 >a> 2 <b< 1"; omitted arrow names take the least fit."""
    tokens = []
    pos = 0
    for match in _TOKEN.finditer(text):
        if text[pos : match.start()].strip():
            raise click.ClickException(f"cannot parse string near {text[pos:]!r}")
        pos = match.end()
        if match.group(1):
            tokens.append(("letter", match.group(1) == ">", match.group(2)))
        else:
            tokens.append(("vertex", int(match.group(0)), None))
    if text[pos:].strip():
        raise click.ClickException(f"cannot parse string near {text[pos:]!r}")
    if not tokens or tokens[0][0] != "vertex" or tokens[-1][0] != "vertex":
        raise click.ClickException("a string starts and ends with an arc id")
    vertices = []
    letters = []
    expect_vertex = True
    for kind, a, b in tokens:
        if (kind == "vertex") != expect_vertex:
            raise click.ClickException("arc ids and letters must alternate")
        if kind == "vertex":
            vertices.append(a)
        else:
            letters.append((a, b))
        expect_vertex = not expect_vertex
    if len(letters) != len(vertices) - 1:
        raise click.ClickException("letters must sit between arc ids")
    built = []
    for p, (direct, name) in enumerate(letters):
        src, tgt = vertices[p], vertices[p + 1]
        if not direct:
            src, tgt = tgt, src
        candidates = sorted(
            (arrow for arrow in quiver.arrows_between(src, tgt) if not name or arrow.name == name),
            key=lambda arrow: arrow.name,
        )
        if not candidates:
            raise click.ClickException(
                f"no arrow {'named ' + name + ' ' if name else ''}from {src} to {tgt}"
            )
        built.append(Letter(candidates[0], direct))
    word = StringWord(tuple(vertices), tuple(built))
    validate_string(word, quiver)
    return word


def _element_json(element) -> list:
    out = []
    for g, coeff in sorted(element.terms.items(), reverse=True):
        out.append(
            {
                "exponent": list(g),
                "coefficient": [[t, c] for t, c in sorted(coeff.coeffs.items())],
            }
        )
    return out


def _emit(data, fmt: str, text_lines) -> None:
    if fmt == "structured":
        click.echo(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


surface_option = click.option(
    "--surface", "-s", "surface", required=True, help="bundled surface name or JSON path"
)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "structured"]), default="text"
)


@click.group()
def main() -> None:
    """Quantum expansions of arc variables on triangulated surfaces."""


@main.command()
@surface_option
@format_option
def validate(surface, fmt):
    """Validate a surface file and its derived quiver and pair."""
    try:
        t = load_surface(surface)
        quiver = build_quiver(t)
        check_gentle(quiver)
        pair = pair_from_surface(t)
    except QClusterError as exc:
        raise click.ClickException(str(exc))
    data = {
        "surface": t.name,
        "arcs": t.m,
        "internal": t.n,
        "triangles": len(t.triangles),
        "arrows": [f"{a.name}: {a.source}->{a.target}" for a in quiver.arrows],
        "relations": sorted("".join(r) for r in quiver.relations),
        "b_tilde": [list(r) for r in pair.b_tilde],
        "lambda": [list(r) for r in pair.lam],
        "d": list(pair.d),
    }
    _emit(
        data,
        fmt,
        [
            f"surface {t.name}: {t.m} arcs ({t.n} internal), {len(t.triangles)} triangles",
            "arrows: " + ", ".join(data["arrows"]),
            "relations: " + (", ".join(data["relations"]) or "none"),
            f"diagonal: {data['d']}",
            "ok",
        ],
    )


@main.command()
@surface_option
@click.option("--string", "text", required=True, help='string word, e.g. "1 >a> 2"')
@click.option("--q1", is_flag=True, help="print the commutative specialization")
@format_option
def expand(surface, text, q1, fmt):
    """Quantum expansion of the arc variable of a string."""
    try:
        t = load_surface(surface)
        quiver = build_quiver(t)
        word = parse_string(text, quiver)
        seed = initial_seed(pair_from_surface(t))
        result = quantum_expansion(word, t, seed)
    except QClusterError as exc:
        raise click.ClickException(str(exc))
    lines = [f"string: {word}", f"element: {result.element}"]
    if q1:
        classical = classical_specialization(result.element, n=t.n)
        lines.append("q=1, boundary=1: " + _classical_str(classical))
    lines += [
        f"  term {list(term.indices)}: dim={list(term.dim)} v={term.valuation} exp={list(term.exponent)}"
        for term in result.terms
    ]
    data = {
        "string": str(word),
        "element": _element_json(result.element),
        "terms": [
            {
                "indices": list(term.indices),
                "dim": list(term.dim),
                "valuation": term.valuation,
                "exponent": list(term.exponent),
            }
            for term in result.terms
        ],
    }
    if q1:
        data["classical"] = {str(list(k)): v for k, v in sorted(classical.items())}
    _emit(data, fmt, lines)


def _classical_str(classical: dict) -> str:
    parts = []
    for g in sorted(classical, reverse=True):
        coeff = classical[g]
        mono = "*".join(
            f"x{i + 1}^{e}" if e != 1 else f"x{i + 1}" for i, e in enumerate(g) if e
        )
        parts.append(f"{coeff if coeff != 1 or not mono else ''}{mono or coeff}")
    return " + ".join(parts)


@main.command()
@surface_option
@click.option("--string", "text", required=True)
@format_option
def matchings(surface, text, fmt):
    """Perfect matchings of the string's snake graph."""
    try:
        t = load_surface(surface)
        quiver = build_quiver(t)
        word = parse_string(text, quiver)
        g = label_snake(word, t)
        vals = valuation_v(g)
    except QClusterError as exc:
        raise click.ClickException(str(exc))
    rows = []
    for P in enumerate_matchings(g):
        rows.append(
            {
                "edges": sorted([list(e) for e in P]),
                "enclosed": sorted(matching_to_submodule(g, P)),
                "valuation": vals[P],
            }
        )
    _emit(
        {"string": str(word), "shape": list(g.shape), "matchings": rows},
        fmt,
        [f"string: {word}", f"shape: {''.join(g.shape) or '-'}"]
        + [
            f"  {row['edges']} enclosed={row['enclosed']} v={row['valuation']}"
            for row in rows
        ],
    )


@main.command()
@surface_option
@click.option("--string", "text", required=True)
@format_option
def submodules(surface, text, fmt):
    """Canonical index sets of the string module, with valuations."""
    try:
        t = load_surface(surface)
        quiver = build_quiver(t)
        word = parse_string(text, quiver)
        vals = valuation_v_gamma(word, t)
    except QClusterError as exc:
        raise click.ClickException(str(exc))
    subs = enumerate_canonical_submodules(word)
    rows = [
        {"indices": list(s.sorted_indices), "valuation": vals[s.indices]}
        for s in subs
    ]
    _emit(
        {"string": str(word), "submodules": rows},
        fmt,
        [f"string: {word}"]
        + [f"  {row['indices']} v={row['valuation']}" for row in rows],
    )


@main.command()
@surface_option
@click.option("--seq", required=True, help="comma-separated directions, e.g. 1,2,1")
@format_option
def mutate(surface, seq, fmt):
    """Mutate the initial seed along a sequence of directions."""
    try:
        t = load_surface(surface)
        seed = initial_seed(pair_from_surface(t))
        directions = [int(x) for x in seq.split(",") if x.strip()]
        seed = mutation_sequence(seed, directions)
    except (QClusterError, ValueError) as exc:
        raise click.ClickException(str(exc))
    lines = [f"after {directions}:"]
    for i in range(seed.n):
        lines.append(f"  X[{i + 1}] = {seed.cluster[i]}")
    _emit(
        {
            "sequence": directions,
            "cluster": {str(i + 1): _element_json(seed.cluster[i]) for i in range(seed.n)},
            "b_tilde": [list(r) for r in seed.pair.b_tilde],
            "lambda": [list(r) for r in seed.pair.lam],
        },
        fmt,
        lines,
    )


@main.command()
@surface_option
@click.option("--s", "level", type=int, required=True)
@click.option("--family", type=click.Choice(["G", "H"]), default="G")
@click.option("--check", is_flag=True, help="also run the recursion checks")
@format_option
def kronecker(surface, level, family, check, fmt):
    """Alpha-weighted matching sums of the annulus families."""
    try:
        t = load_surface(surface)
        seed = initial_seed(pair_from_surface(t))
        ws = build_weighted(t, level, family)
        series = r_s(t, level, seed, family)
        equal = equality_check(t, level, family)
        failures = recursion_checks(t, level) if check and level >= 1 else []
    except QClusterError as exc:
        raise click.ClickException(str(exc))
    lines = [
        f"{family}_{level}: {ws.word}",
        f"alpha weights: {list(ws.alphas)}",
        f"series: {series}",
        f"per-dimension alpha/valuation agreement: {'ok' if equal else 'FAIL'}",
    ]
    if check:
        lines.append(
            "recursions: ok" if not failures else "recursions: " + "; ".join(failures)
        )
    _emit(
        {
            "family": family,
            "s": level,
            "word": str(ws.word),
            "alphas": list(ws.alphas),
            "series": _element_json(series),
            "equality": equal,
            "recursion_failures": failures,
        },
        fmt,
        lines,
    )
    if not equal or failures:
        raise SystemExit(1)


@main.command("skein-multiply")
@surface_option
@click.option("--v", "v_text", required=True)
@click.option("--w", "w_text", required=True)
@format_option
def skein_multiply(surface, v_text, w_text, fmt):
    """Resolve a product of two arc variables into two terms."""
    try:
        t = load_surface(surface)
        quiver = build_quiver(t)
        v = parse_string(v_text, quiver)
        w = parse_string(w_text, quiver)
        seed = initial_seed(pair_from_surface(t))
        cert = multiply_and_certify(v, w, t, seed)
        gap_ok = relative_exponent_check(cert)
    except QClusterError as exc:
        raise click.ClickException(str(exc))
    lines = [
        f"extension: {cert.extension.kind} ({cert.extension.detail})",
        f"u1 = {cert.extension.u1}",
        f"order: X[{cert.v}] * X[{cert.w}]",
        f"sum: q^({cert.s1_twice}/2) M1 + q^({cert.s2_twice}/2) M2",
        f"lambda (half-units) = {cert.lambda_half}",
        f"M1 = {cert.m1}",
        f"M2 = {cert.m2} ({cert.m2_source})",
        f"identity verified: {cert.identity_verified}",
        f"shift gap (twice units) = {cert.relative_twice}; geometric q^2 gap: {gap_ok}",
    ]
    _emit(
        {
            "kind": cert.extension.kind,
            "u1": str(cert.extension.u1),
            "s1_twice": cert.s1_twice,
            "s2_twice": cert.s2_twice,
            "lambda_twice": cert.lambda_half.twice,
            "m1": _element_json(cert.m1),
            "m2": _element_json(cert.m2),
            "m2_source": cert.m2_source,
            "identity_verified": cert.identity_verified,
            "gap_twice": cert.relative_twice,
            "gap_is_geometric": gap_ok,
        },
        fmt,
        lines,
    )
    if not cert.identity_verified:
        raise SystemExit(1)


# -- verify ------------------------------------------------------------


def _word_key(word: StringWord):
    return (
        tuple(word.vertices),
        tuple((l.arrow.name, l.direct) for l in word.letters),
    )


def _word_from_key(key, quiver) -> StringWord:
    vertices, letters = key
    return StringWord(
        tuple(vertices),
        tuple(Letter(quiver.arrow_named(name), direct) for name, direct in letters),
    )


def _verify_word(args):
    surface, key = args
    t = load_surface(surface)
    quiver = build_quiver(t)
    word = _word_from_key(key, quiver)
    seed = initial_seed(pair_from_surface(t))
    checks = []

    def run(name, fn):
        try:
            fn()
            checks.append((name, True, ""))
        except Exception as exc:  # report, do not abort the batch
            checks.append((name, False, f"{type(exc).__name__}: {exc}"))

    g = label_snake(word, t)
    run(
        "counts",
        lambda: _expect(
            len(enumerate_matchings(g)) == len(enumerate_canonical_submodules(word)),
            "matching and submodule counts differ",
        ),
    )
    run("bijection", lambda: check_bijection(g))
    run("valuations", lambda: compare_valuations(word, t))
    run("expansion", lambda: _check_expansion(word, t, seed))
    return (str(word), checks)


def _expect(ok: bool, message: str) -> None:
    if not ok:
        raise AssertionError(message)


def _check_expansion(word, t, seed):
    from .torus import bar

    result = quantum_expansion(word, t, seed)
    _expect(bar(result.element) == result.element, "expansion is not bar-invariant")
    _expect(
        result.element.coefficients_nonnegative(),
        "expansion has a negative coefficient",
    )


@main.command()
@surface_option
@click.option("--max-length", type=int, default=6, show_default=True)
@click.option(
    "--jobs",
    type=int,
    default=lambda: int(os.environ.get("QCLUSTER_JOBS", "1")),
    help="worker processes (default $QCLUSTER_JOBS or 1)",
)
@format_option
def verify(surface, max_length, jobs, fmt):
    """Cross-check matchings, submodules, valuations and expansions."""
    try:
        t = load_surface(surface)
        quiver = build_quiver(t)
        check_gentle(quiver)
        pair = pair_from_surface(t)
        seed = initial_seed(pair)
        for k in range(1, t.n + 1):
            twice = mutate_seed(mutate_seed(seed, k), k)
            if twice.cluster != seed.cluster or twice.pair != seed.pair:
                raise click.ClickException(f"mutation at {k} is not an involution")
        words = enumerate_strings(quiver, max_length)
    except QClusterError as exc:
        raise click.ClickException(str(exc))

    tasks = sorted(
        ((surface, _word_key(word)) for word in words), key=lambda task: task[1]
    )
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_word, tasks))
    else:
        results = [_verify_word(task) for task in tasks]

    failures = 0
    lines = [f"seed: compatible, d={list(pair.d)}; mutations involutive"]
    rows = []
    for word_text, checks in results:
        for name, ok, message in checks:
            rows.append(
                {"string": word_text, "check": name, "ok": ok, "message": message}
            )
            if not ok:
                failures += 1
                lines.append(f"FAIL {word_text} [{name}]: {message}")
            else:
                lines.append(f"ok   {word_text} [{name}]")
    lines.append(
        f"{len(words)} strings, {len(rows)} checks, {failures} failures"
    )
    _emit({"surface": surface, "checks": rows, "failures": failures}, fmt, lines)
    if failures:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
