"""Command-line front end.

The CLI is a thin client of the HTTP service: every verb builds a JSON
request and posts it to the FastAPI app, by default through an in-process
ASGI client (no server needed, suitable for batch use and CI), or to a
remote instance given with --server.

Exit codes: 0 success, 1 usage or input errors, 2 internal invariant
violations.  Corpus verification mismatches exit 0 and carry a structured
diff in the JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2


def _client(server: Optional[str]):
    if server:
        import httpx

        return httpx.Client(base_url=server.rstrip("/"), timeout=300.0)
    import warnings

    with warnings.catch_warnings():
        # starlette's test client warns about the bundled httpx shim
        warnings.filterwarnings("ignore", message="Using `httpx` with `starlette.testclient`")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _read_seed(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        _fail(f"cannot read seed file {path!r}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"seed file {path!r} is not valid JSON: {exc}")


def _fail(message: str, code: int = EXIT_USAGE) -> None:
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(code)


def _call(args, method: str, url: str, payload: Optional[dict] = None) -> int:
    with _client(args.server) as client:
        try:
            if method == "get":
                response = client.get(url)
            else:
                response = client.post(url, json=payload)
        except Exception as exc:  # connection problems against --server
            _fail(f"request failed: {exc}")
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        print(f"error: {detail}", file=sys.stderr)
        return EXIT_INVARIANT if response.status_code >= 500 else EXIT_USAGE
    data = response.json()
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(data.get("text", json.dumps(data, indent=2)))
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="clusterpoisson",
        description="Exact Poisson cluster algebra computations (thin client of the bundled service).",
    )
    parser.add_argument("--server", help="URL of a running service; default runs in-process")
    parser.add_argument("--json", action="store_true", help="print the machine-readable JSON response")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutate", help="apply a mutation sequence and print the new seed with expansions")
    p.add_argument("seedfile")
    p.add_argument("directions", nargs="+", type=int, help="1-based mutation directions")

    p = sub.add_parser("check-pair", help="compatibility diagnosis of (B, Lambda)")
    p.add_argument("seedfile")

    p = sub.add_parser("mutate-pair", help="mutate (B, Lambda) with a sign-independence self-check")
    p.add_argument("seedfile")
    p.add_argument("k", type=int, help="1-based mutation direction")
    p.add_argument("--eps", type=int, default=1, choices=(1, -1))

    p = sub.add_parser("kernel", help="basis of the toric weight lattice ker(B)")
    p.add_argument("seedfile")

    p = sub.add_parser("invariant", help="torus-invariance verdict for a Laurent polynomial")
    p.add_argument("seedfile")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("supertoric", help="subset rank condition report")
    p.add_argument("seedfile")
    p.add_argument("--max-subset", type=int, default=None)
    p.add_argument("--early-exit", action="store_true")

    p = sub.add_parser("tpp-scan", help="scan candidate sets for torus-invariant Poisson primes")
    p.add_argument("seedfile")
    p.add_argument("--defining", action="store_true", help="keep only defining candidate sets")

    p = sub.add_parser("member", help="candidate-ideal membership of a Laurent polynomial")
    p.add_argument("seedfile")
    p.add_argument("--set", required=True, dest="members", help="comma-separated tokens x<i>, y<i>, 1")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("poset", help="inclusion poset of passing candidates with saturation check")
    p.add_argument("seedfile")
    p.add_argument("--defining", action="store_true")

    p = sub.add_parser("acyclic", help="acyclic classifier verdict")
    p.add_argument("seedfile")

    p = sub.add_parser("corpus", help="built-in example seeds and their verification")
    corpus_sub = p.add_subparsers(dest="corpus_command", required=True)
    pv = corpus_sub.add_parser("verify", help="run a corpus regression")
    pv.add_argument("name", choices=("g25", "singular", "rank2"))
    ps_ = corpus_sub.add_parser("seed", help="print a corpus seed file")
    ps_.add_argument("name", choices=("g25", "singular", "rank2"))

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run("clusterpoisson.service.app:app", host=args.host, port=args.port)
        return EXIT_OK

    if args.command == "corpus":
        if args.corpus_command == "verify":
            return _call(args, "post", f"/corpus/verify/{args.name}")
        return _call(args, "get", f"/corpus/seed/{args.name}")

    seed = _read_seed(args.seedfile)
    if args.command == "mutate":
        return _call(args, "post", "/mutate", {"seed": seed, "directions": args.directions})
    if args.command == "check-pair":
        return _call(args, "post", "/check-pair", {"seed": seed})
    if args.command == "mutate-pair":
        return _call(args, "post", "/mutate-pair", {"seed": seed, "k": args.k, "eps": args.eps})
    if args.command == "kernel":
        return _call(args, "post", "/kernel", {"seed": seed})
    if args.command == "invariant":
        return _call(args, "post", "/invariant", {"seed": seed, "poly": args.poly})
    if args.command == "supertoric":
        return _call(
            args,
            "post",
            "/supertoric",
            {"seed": seed, "max_subset": args.max_subset, "early_exit": args.early_exit},
        )
    if args.command == "tpp-scan":
        return _call(args, "post", "/tpp-scan", {"seed": seed, "defining": args.defining})
    if args.command == "member":
        members = [t for t in args.members.split(",") if t.strip()]
        return _call(args, "post", "/member", {"seed": seed, "members": members, "poly": args.poly})
    if args.command == "poset":
        return _call(args, "post", "/poset", {"seed": seed, "defining": args.defining})
    if args.command == "acyclic":
        return _call(args, "post", "/acyclic", {"seed": seed})
    _fail(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
