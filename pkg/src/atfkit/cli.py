"""Command-line client.

The CLI is a thin HTTP client over the service.  By default it talks to
the application in-process through an ASGI transport, so no server needs
to run; pass --server to target a remote instance instead.

Exit codes: 0 success, 1 rejected input (the JSON error from the service
goes to stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import httpx

from .jsonio import encode_scalar
from .verify import default_workers


def _parse_triple(text: str) -> list[str]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a,b,c but got {text!r}")
    for p in parts:
        try:
            int(p)
        except ValueError:
            raise argparse.ArgumentTypeError(f"non-integer entry in {text!r}") from None
    return [str(int(p)) for p in parts]


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from None


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _write_bytes(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(path, "wb") as f:
            f.write(data)


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # in-process: drive the ASGI app directly, no server required
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


class _Rejected(Exception):
    """Service said 400; body is the JSON error."""

    def __init__(self, body: str):
        super().__init__(body)
        self.body = body


def _post(client: httpx.Client, path: str, payload: dict) -> httpx.Response:
    resp = client.post(path, json=payload)
    if resp.status_code == 400:
        raise _Rejected(resp.text)
    resp.raise_for_status()
    return resp


def _emit(resp: httpx.Response, out: str | None) -> None:
    ctype = resp.headers.get("content-type", "")
    if ctype.startswith("image/svg"):
        _write_bytes(out, resp.content)
        return
    text = json.dumps(resp.json(), indent=2, sort_keys=True)
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=None, metavar="URL",
                        help="base URL of a running service (default: in-process)")
    common.add_argument("--out", default=None, metavar="FILE",
                        help="write the response here instead of stdout")

    parser = argparse.ArgumentParser(prog="atfkit")
    top = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    markov = top.add_parser("markov", help="Markov triple operations")
    msub = markov.add_subparsers(dest="command", required=True)
    p = leaf(msub, "enumerate", "all triples with entries up to a bound")
    p.add_argument("--max-entry", type=int, required=True)
    p = leaf(msub, "mutate", "Vieta mutation at one slot")
    p.add_argument("triple", type=_parse_triple)
    p.add_argument("--slot", type=int, required=True, choices=(0, 1, 2))
    p = leaf(msub, "reduce", "descent path to (1,1,1)")
    p.add_argument("triple", type=_parse_triple)

    polytope = top.add_parser("polytope", help="moment polytope of a triple")
    psub = polytope.add_subparsers(dest="command", required=True)
    p = leaf(psub, "build", "vertices, cut data and lens labels")
    p.add_argument("triple", type=_parse_triple)
    p = leaf(psub, "verify", "re-check every polytope identity")
    p.add_argument("triple", type=_parse_triple)

    atf = top.add_parser("atf", help="base diagrams and surgeries")
    asub = atf.add_subparsers(dest="command", required=True)
    p = leaf(asub, "diagram", "base diagram of a triple")
    p.add_argument("triple", type=_parse_triple)
    p.add_argument("--cut-length", type=_parse_fraction, default=None, metavar="FRAC",
                   help="cut length as a fraction of the fiber distance")
    p = leaf(asub, "trade", "trade a smooth corner for a node")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE",
                   help="diagram JSON ('-' for stdin)")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--cut-length", type=_parse_fraction, default=None, metavar="FRAC")
    p = leaf(asub, "slide", "move a node along its eigenray")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--length", type=_parse_fraction, required=True)
    p = leaf(asub, "transfer", "transfer the cut across a node")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = leaf(asub, "mutate", "diagram mutation realizing 3yz - x")
    p.add_argument("triple", type=_parse_triple)
    p.add_argument("--slot", type=int, required=True, choices=(0, 1, 2))
    p.add_argument("--side", choices=("left", "right"), default="left")

    hull = top.add_parser("hull", help="boundary convex-hull invariant")
    hsub = hull.add_subparsers(dest="command", required=True)
    p = leaf(hsub, "build", "loop classes and their hull")
    p.add_argument("triple", type=_parse_triple)
    p = leaf(hsub, "lengths", "edge affine lengths of the hull")
    p.add_argument("triple", type=_parse_triple)
    p = leaf(hsub, "compare", "decide whether two hulls differ")
    p.add_argument("first", type=_parse_triple)
    p.add_argument("second", type=_parse_triple)

    render = top.add_parser("render", help="deterministic SVG output")
    rsub = render.add_subparsers(dest="command", required=True)
    for name, help_ in (("diagram", "one base diagram"),
                        ("hull", "hull over the lattice grid"),
                        ("chain", "descent chain, one panel per step")):
        p = leaf(rsub, name, help_)
        if name == "diagram":
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("triple", nargs="?", type=_parse_triple)
            src.add_argument("--in", dest="infile", metavar="FILE",
                             help="diagram JSON instead of a triple")
        else:
            p.add_argument("triple", type=_parse_triple)
        p.add_argument("--width", type=int, default=480)
        p.add_argument("--height", type=int, default=480)
        p.add_argument("--labels", action="store_true")

    verify = top.add_parser("verify", help="self-verification suites")
    vsub = verify.add_subparsers(dest="command", required=True)
    p = leaf(vsub, "all", "run every suite over a bounded enumeration")
    p.add_argument("--max-entry", type=int, required=True)
    p.add_argument("--workers", type=int, default=None,
                   help="process count (default: ATF_WORKERS or 1)")
    return parser


def _dispatch(args: argparse.Namespace, client: httpx.Client) -> httpx.Response:
    g, c = args.group, args.command
    if g == "markov":
        if c == "enumerate":
            return _post(client, "/markov/enumerate", {"max_entry": args.max_entry})
        if c == "mutate":
            return _post(client, "/markov/mutate", {"triple": args.triple, "slot": args.slot})
        return _post(client, "/markov/reduce", {"triple": args.triple})
    if g == "polytope":
        return _post(client, f"/polytope/{c}", {"triple": args.triple})
    if g == "atf":
        if c == "diagram":
            payload = {"triple": args.triple}
            if args.cut_length is not None:
                payload["cut_fraction"] = encode_scalar(args.cut_length)
            return _post(client, "/atf/diagram", payload)
        if c == "trade":
            payload = {"diagram": _read_json(args.infile), "vertex": args.vertex}
            if args.cut_length is not None:
                payload["cut_fraction"] = encode_scalar(args.cut_length)
            return _post(client, "/atf/trade", payload)
        if c == "slide":
            return _post(client, "/atf/slide", {
                "diagram": _read_json(args.infile),
                "node": args.node,
                "new_length": encode_scalar(args.length),
            })
        if c == "transfer":
            return _post(client, "/atf/transfer", {
                "diagram": _read_json(args.infile),
                "node": args.node,
                "side": args.side,
            })
        return _post(client, "/atf/mutate", {"triple": args.triple, "slot": args.slot})
    if g == "hull":
        if c == "compare":
            return _post(client, "/hull/compare",
                         {"first": args.first, "second": args.second})
        return _post(client, f"/hull/{c}", {"triple": args.triple})
    if g == "render":
        options = {"width": args.width, "height": args.height, "labels": args.labels}
        if c == "diagram":
            payload = {"options": options}
            if getattr(args, "infile", None):
                payload["diagram"] = _read_json(args.infile)
            else:
                payload["triple"] = args.triple
            return _post(client, "/render/diagram", payload)
        if c == "hull":
            return _post(client, "/render/hull", {"triple": args.triple, "options": options})
        return _post(client, "/render/chain", {
            "triple": args.triple,
            "width": args.width, "height": args.height, "labels": args.labels,
        })
    # verify all
    workers = args.workers if args.workers is not None else default_workers()
    return _post(client, "/verify/all", {"max_entry": args.max_entry, "workers": workers})


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with _client(args.server) as client:
            resp = _dispatch(args, client)
            _emit(resp, args.out)
            if args.group == "verify":
                if not resp.json().get("ok", False):
                    return 1
            if args.group == "hull" and args.command == "compare":
                # distinctness is still exit 0; only failures change the code
                pass
    except _Rejected as exc:
        print(exc.body, file=sys.stderr)
        return 1
    except OSError as exc:
        print(json.dumps({"error": "io_error", "message": str(exc)}), file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(json.dumps({"error": "bad_json", "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
