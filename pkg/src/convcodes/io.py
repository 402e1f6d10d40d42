"""On-disk formats: code manifests, stripe stores and raw message files.

Manifests are canonical JSON (sorted keys, no whitespace) so the same
code always serializes to the same bytes; the SHA-256 of those bytes is
the code reference stored with every stripe.  Indices in files are
1-based: stripes 1..lambda, blocks 1..n, final positions 1..kF.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Optional

from .constructions import ConversionPlan, ConvertibleCode, Source
from .conversion import DATA, PARITY, Block, MessageBuffer, Stripe
from .errors import CodeMismatch, ConvCodeError, FormatError
from .gf import FieldSpec, field_new
from .hankel import HankelArray
from .matrix import Matrix
from .params import MergeParams

FORMAT_VERSION = 1
STRIPE_MANIFEST = "stripe.json"


def canonical_json(obj: Any) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode()


def _field_dict(f: FieldSpec) -> dict:
    return {"p": f.p, "m": f.m, "modulus": list(f.modulus)}


def _matrix_dict(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": list(m.entries())}


def code_to_dict(code: ConvertibleCode) -> dict:
    p = code.params
    plan = code.plan
    return {
        "formatVersion": FORMAT_VERSION,
        "scheme": code.scheme,
        "selection": code.selection,
        "params": {"lambda": p.lam, "kI": p.kI, "rI": p.rI, "rF": p.rF},
        "field": _field_dict(code.field),
        "PI": _matrix_dict(code.PI),
        "PF": _matrix_dict(code.PF),
        "hankel": None if code.hankel is None else {"b": list(code.hankel.b), "strategy": code.hankel.strategy},
        "piColumns": None if code.pi_columns is None else list(code.pi_columns),
        "s": code.s,
        "plan": {
            "newBlocks": [
                [{"stripe": s.stripe + 1, "block": s.block + 1, "coeff": s.coeff.value} for s in blk]
                for blk in plan.new_blocks
            ],
            "readSet": [[i + 1, j + 1] for i, j in plan.read_set],
            "unchanged": [{"stripe": i + 1, "block": j + 1, "position": pos + 1} for i, j, pos in plan.unchanged],
        },
    }


def manifest_bytes(code: ConvertibleCode) -> bytes:
    return canonical_json(code_to_dict(code))


def code_hash(code: ConvertibleCode) -> str:
    return hashlib.sha256(manifest_bytes(code)).hexdigest()


def _int(x: Any, what: str) -> int:
    if type(x) is not int:
        raise FormatError(f"{what} must be an integer, got {x!r}")
    return x


def _read_field(d: dict) -> FieldSpec:
    try:
        return field_new(_int(d["p"], "field.p"), _int(d["m"], "field.m"),
                         [_int(c, "field.modulus") for c in d["modulus"]])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad field description: {exc}") from exc
    except ConvCodeError as exc:
        raise FormatError(f"bad field description: {exc}") from exc


def _read_matrix(d: dict, field: FieldSpec, what: str) -> Matrix:
    rows, cols = _int(d["rows"], f"{what}.rows"), _int(d["cols"], f"{what}.cols")
    entries = [_int(x, what) for x in d["entries"]]
    if len(entries) != rows * cols or any(not 0 <= x < field.q for x in entries):
        raise FormatError(f"{what} entries do not describe a {rows}x{cols} matrix over {field}")
    return Matrix._raw(field, rows, cols, tuple(entries))


def code_from_dict(d: dict) -> ConvertibleCode:
    try:
        if d.get("formatVersion") != FORMAT_VERSION:
            raise FormatError(f"unsupported formatVersion {d.get('formatVersion')!r}")
        pr = d["params"]
        params = MergeParams(_int(pr["lambda"], "lambda"), _int(pr["kI"], "kI"), _int(pr["rI"], "rI"), _int(pr["rF"], "rF"))
        field = _read_field(d["field"])
        PI = _read_matrix(d["PI"], field, "PI")
        PF = _read_matrix(d["PF"], field, "PF")
        hk = d["hankel"]
        hankel = None if hk is None else HankelArray(field, tuple(_int(x, "hankel.b") for x in hk["b"]), hk["strategy"])
        pic = d["piColumns"]
        plan_d = d["plan"]
        new_blocks = tuple(
            tuple(Source(_int(s["stripe"], "stripe") - 1, _int(s["block"], "block") - 1, field(_int(s["coeff"], "coeff")))
                  for s in blk)
            for blk in plan_d["newBlocks"]
        )
        read_set = tuple((_int(i, "stripe") - 1, _int(j, "block") - 1) for i, j in plan_d["readSet"])
        unchanged = tuple((_int(u["stripe"], "stripe") - 1, _int(u["block"], "block") - 1, _int(u["position"], "position") - 1)
                          for u in plan_d["unchanged"])
        return ConvertibleCode(
            params, field, PI, PF, ConversionPlan(new_blocks, read_set, unchanged), d["scheme"],
            s=d["s"], hankel=hankel, pi_columns=None if pic is None else tuple(pic), selection=d["selection"],
        )
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ConvCodeError) as exc:
        raise FormatError(f"malformed code manifest: {exc!r}") from exc


def write_manifest(code: ConvertibleCode, path: str | os.PathLike) -> str:
    data = manifest_bytes(code)
    Path(path).write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def read_manifest(path: str | os.PathLike) -> tuple[ConvertibleCode, str]:
    """Load a manifest; returns the code and the hash of the file's bytes."""
    try:
        raw = Path(path).read_bytes()
        d = json.loads(raw)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise FormatError(f"{path} is not JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise FormatError(f"{path} does not hold a JSON object")
    return code_from_dict(d), hashlib.sha256(raw).hexdigest()


# ---------------------------------------------------------------------------
# symbols <-> bytes
# ---------------------------------------------------------------------------
def symbols_to_bytes(field: FieldSpec, symbols) -> bytes:
    w = field.byte_width
    return b"".join(v.to_bytes(w, "big") for v in symbols)


def bytes_to_symbols(field: FieldSpec, data: bytes) -> list[int]:
    """Fixed-width big-endian chunks; chunks >= q are rejected, never reduced."""
    w = field.byte_width
    if len(data) % w:
        raise FormatError(f"{len(data)} bytes is not a multiple of the symbol width {w}")
    out = [int.from_bytes(data[o:o + w], "big") for o in range(0, len(data), w)]
    for pos, v in enumerate(out):
        if v >= field.q:
            raise ValueError(f"symbol {pos} has value {v} >= q = {field.q}")
    return out


def message_from_bytes(field: FieldSpec, rows: int, data: bytes) -> MessageBuffer:
    """Bytes hold symbols column-major: all ``rows`` symbols of position 0, then position 1, ..."""
    unit = rows * field.byte_width
    if len(data) % unit:
        raise ValueError(f"input length {len(data)} is not a multiple of {unit} bytes (rows x symbol width)")
    flat = bytes_to_symbols(field, data)
    B = len(flat) // rows
    return MessageBuffer(field, tuple(tuple(flat[b * rows + r] for b in range(B)) for r in range(rows)))


def rows_to_bytes(field: FieldSpec, rows) -> bytes:
    rows = list(rows)
    B = len(rows[0]) if rows else 0
    return symbols_to_bytes(field, (rows[r][b] for b in range(B) for r in range(len(rows))))


# ---------------------------------------------------------------------------
# stripe stores
# ---------------------------------------------------------------------------
def block_file_name(index: int) -> str:
    return f"block_{index + 1:03d}.bin"


def write_stripe(stripe: Stripe, directory: str | os.PathLike, field: FieldSpec, code_ref: str) -> None:
    """Block files first, the stripe manifest last."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    entries = []
    for idx, blk in enumerate(stripe.blocks):
        name = block_file_name(idx)
        role = DATA if idx < stripe.k else PARITY
        if blk is not None:
            (d / name).write_bytes(symbols_to_bytes(field, blk.payload))
        entries.append({"index": idx + 1, "role": role, "file": name})
    manifest = {
        "formatVersion": FORMAT_VERSION,
        "n": stripe.n,
        "k": stripe.k,
        "blockLength": stripe.block_length,
        "field": _field_dict(field),
        "codeRef": code_ref,
        "blocks": entries,
    }
    (d / STRIPE_MANIFEST).write_bytes(canonical_json(manifest))


def read_stripe(directory: str | os.PathLike, field: Optional[FieldSpec] = None) -> tuple[Stripe, FieldSpec]:
    """Load a stripe store.  Missing block files come back as ``None``."""
    d = Path(directory)
    try:
        meta = json.loads((d / STRIPE_MANIFEST).read_bytes())
    except OSError as exc:
        raise FormatError(f"cannot read stripe manifest in {d}: {exc}") from exc
    except ValueError as exc:
        raise FormatError(f"stripe manifest in {d} is not JSON: {exc}") from exc
    try:
        if meta.get("formatVersion") != FORMAT_VERSION:
            raise FormatError(f"unsupported formatVersion {meta.get('formatVersion')!r}")
        n, k, B = _int(meta["n"], "n"), _int(meta["k"], "k"), _int(meta["blockLength"], "blockLength")
        f = _read_field(meta["field"])
        if field is not None and f != field:
            raise CodeMismatch(f"stripe is over {f}, expected {field}")
        entries = meta["blocks"]
        if len(entries) != n:
            raise FormatError(f"{len(entries)} block entries for n = {n}")
        w = f.byte_width
        blocks = []
        for idx, e in enumerate(entries):
            if _int(e["index"], "index") != idx + 1:
                raise FormatError(f"block entries out of order at {idx + 1}")
            path = d / e["file"]
            if not path.exists():
                blocks.append(None)
                continue
            raw = path.read_bytes()
            if len(raw) != B * w:
                raise FormatError(f"{path} has {len(raw)} bytes, expected {B * w}")
            try:
                payload = tuple(bytes_to_symbols(f, raw))
            except ValueError as exc:
                raise FormatError(f"{path}: {exc}") from exc
            blocks.append(Block(idx, e["role"], payload))
        return Stripe(n, k, B, tuple(blocks), str(meta["codeRef"])), f
    except (FormatError, CodeMismatch):
        raise
    except (KeyError, TypeError, ConvCodeError) as exc:
        raise FormatError(f"malformed stripe manifest in {d}: {exc!r}") from exc


def stripe_dir(root: str | os.PathLike, g: int) -> Path:
    """Directory of initial stripe ``g`` (0-based) inside an encode output."""
    return Path(root) / f"stripe_{g + 1}"
