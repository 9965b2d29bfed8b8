"""Single-file index container: magic "STWA1", a section table of raw
little-endian arrays, and a JSON skeleton describing the object graph.

Registered classes round-trip through their attribute dicts; numpy arrays
are stored once each in traversal order, so save -> load -> save is
byte-identical.
"""

import json
import struct

import numpy as np

MAGIC = b"STWA1\x00"
VERSION = 1

_REGISTRY = {}


def _register(cls):
    _REGISTRY[cls.__name__] = cls
    return cls


def register_all():
    from .bitvec import PackedRankSelect
    from .longret import Chain, LongInstance, PeriodicFamily
    from .predsets import PinsIndex, PisnsIndex
    from .suffixtree import DocumentSet, SuffixTree
    from .treetools import LevelAncestorIndex, MarkedPredIndex
    from .waindex import InstanceRecord, WaIndex

    for cls in (PackedRankSelect, Chain, LongInstance, PeriodicFamily, PinsIndex,
                PisnsIndex, DocumentSet, SuffixTree, LevelAncestorIndex,
                MarkedPredIndex, InstanceRecord, WaIndex):
        _register(cls)


def _state_of(obj):
    if hasattr(obj, "__dict__"):
        return dict(obj.__dict__)
    return {s: getattr(obj, s) for s in obj.__slots__ if hasattr(obj, s)}


def _encode(obj, arrays):
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        idx = len(arrays)
        arrays.append(obj)
        return {"$a": idx}
    if isinstance(obj, tuple):
        return {"$t": [_encode(x, arrays) for x in obj]}
    if isinstance(obj, list):
        return {"$l": [_encode(x, arrays) for x in obj]}
    if isinstance(obj, dict):
        return {"$m": [[_encode(k, arrays), _encode(v, arrays)] for k, v in obj.items()]}
    name = type(obj).__name__
    if name in _REGISTRY:
        state = {k: _encode(v, arrays) for k, v in _state_of(obj).items()}
        return {"$o": name, "s": state}
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _decode(node, arrays):
    if node is None or isinstance(node, (bool, int, float, str)):
        return node
    if isinstance(node, list):  # only inside $t/$l/$m wrappers
        return [_decode(x, arrays) for x in node]
    if "$a" in node:
        return arrays[node["$a"]]
    if "$t" in node:
        return tuple(_decode(x, arrays) for x in node["$t"])
    if "$l" in node:
        return [_decode(x, arrays) for x in node["$l"]]
    if "$m" in node:
        return {_as_key(_decode(k, arrays)): _decode(v, arrays) for k, v in node["$m"]}
    if "$o" in node:
        cls = _REGISTRY[node["$o"]]
        obj = cls.__new__(cls)
        for k, v in node["s"].items():
            setattr(obj, k, _decode(v, arrays))
        return obj
    raise TypeError(f"cannot decode {node!r}")


def _as_key(k):
    return k


def save(obj, path):
    register_all()
    arrays = []
    skeleton = _encode(obj, arrays)
    meta = []
    blobs = []
    for a in arrays:
        a = np.ascontiguousarray(a)
        if a.dtype.byteorder == ">":
            a = a.astype(a.dtype.newbyteorder("<"))
        blobs.append(a.tobytes())
        meta.append({"dtype": a.dtype.str, "shape": list(a.shape)})
    head = json.dumps({"version": VERSION, "arrays": meta, "root": skeleton},
                      separators=(",", ":")).encode()
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<I", VERSION))
        f.write(struct.pack("<Q", len(head)))
        f.write(head)
        for b in blobs:
            f.write(struct.pack("<Q", len(b)))
            f.write(b)


def load(path):
    register_all()
    with open(path, "rb") as f:
        if f.read(len(MAGIC)) != MAGIC:
            raise ValueError("not an STWA1 container")
        (version,) = struct.unpack("<I", f.read(4))
        if version != VERSION:
            raise ValueError(f"unsupported container version {version}")
        (hlen,) = struct.unpack("<Q", f.read(8))
        head = json.loads(f.read(hlen))
        arrays = []
        for meta in head["arrays"]:
            (blen,) = struct.unpack("<Q", f.read(8))
            buf = f.read(blen)
            a = np.frombuffer(buf, dtype=np.dtype(meta["dtype"]))
            arrays.append(a.reshape(meta["shape"]).copy())
    return _decode(head["root"], arrays)
