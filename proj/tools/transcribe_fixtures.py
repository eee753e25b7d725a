#!/usr/bin/env python3
"""Convert text tensor transcriptions (tests/fixtures/*.txt) to TensorFile
(.t3) assets and refresh tests/fixtures/SHA256SUMS.

Text format: '#' comment lines, one 'dims n1 n2 n3' line, then for each
frontal slice a 'slice k' line followed by n1 rows of n2 numbers.
"""
import hashlib
import pathlib
import struct
import sys

MAGIC = b"T3TENSOR"
VERSION = 1


def parse(path):
    dims = None
    values = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line.startswith("slice"):
            continue
        if line.startswith("dims"):
            dims = tuple(int(x) for x in line.split()[1:])
            continue
        values.extend(float(x) for x in line.split())
    if dims is None or len(dims) != 3:
        raise ValueError(f"{path}: missing dims line")
    if len(values) != dims[0] * dims[1] * dims[2]:
        raise ValueError(f"{path}: expected {dims[0] * dims[1] * dims[2]} values, found {len(values)}")
    return dims, values


def encode(dims, values):
    header = MAGIC + struct.pack("<H3I", VERSION, *dims)
    return header + struct.pack(f"<{len(values)}d", *values)


def main(directory):
    directory = pathlib.Path(directory)
    sums = []
    for txt in sorted(directory.glob("*.txt")):
        out = txt.with_suffix(".t3")
        out.write_bytes(encode(*parse(txt)))
        for f in (txt, out):
            sums.append(f"{hashlib.sha256(f.read_bytes()).hexdigest()}  {f.name}")
    (directory / "SHA256SUMS").write_text("\n".join(sums) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures")
