"""Hessian rank classification of polynomials."""

import json
import os
import tempfile

from ._hessrank import ParseError, Polynomial, hessian_rank, rank_profile, run

__all__ = [
    "HessrankError",
    "ParseError",
    "Polynomial",
    "analyze",
    "hessian_rank",
    "rank_profile",
    "run",
    "smith",
]


class HessrankError(RuntimeError):
    """A command failed; carries the exit code and the error output."""

    def __init__(self, code, message):
        super().__init__(message.strip())
        self.code = code


def _run_on_text(text, args):
    fd, path = tempfile.mkstemp(suffix=".txt", prefix="hessrank_")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        code, out, err = run([args[0], path, *args[1:]])
    finally:
        os.remove(path)
    if code == 1:
        raise HessrankError(code, err)
    report = json.loads(out) if out else None
    if code != 0:
        raise HessrankError(code, err or "verification failed")
    return report


def analyze(polynomials, command="analyze", vars=None, main_vars=None, seed=0,
            relation_degree=3, target=None):
    """Runs analyze, apex, decompose or reduce on polynomial text and returns the JSON report."""
    if isinstance(polynomials, (list, tuple)):
        polynomials = "\n".join(str(p) for p in polynomials)
    args = [command, "--seed", str(seed), "--relation-degree", str(relation_degree)]
    if vars is not None:
        args += ["--vars", str(vars)]
    if main_vars is not None:
        args += ["--main-vars", str(main_vars)]
    if target is not None:
        args += ["--target", str(target)]
    return _run_on_text(str(polynomials) + "\n", args)


def smith(rows, domain="int", rank=None, variant="plain"):
    """Weak Smith or de Bondt form of a matrix given as rows of entry strings."""
    lines = [f"{len(rows)} {len(rows[0]) if rows else 0} {domain}"]
    lines += [" ".join(str(e) for e in row) for row in rows]
    args = ["smith", "--domain", domain, "--variant", variant]
    if rank is not None:
        args += ["--rank", str(rank)]
    return _run_on_text("\n".join(lines) + "\n", args)
