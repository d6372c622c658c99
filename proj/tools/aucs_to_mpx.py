#!/usr/bin/env python3
"""Convert a multinet-style multilayer file (e.g. the public AUCS aucs.mpx)
into the plain #LAYERS/#ACTORS/#EDGES format read by mpxmiss.

Layer lines lose their ",UNDIRECTED" suffix, actor lines keep only the id,
edge lines keep actor1,actor2,layer, and every other section is dropped.
"""

import argparse
import sys

KEEP = {"#LAYERS", "#ACTORS", "#EDGES"}


def convert(lines):
    out = []
    section = None
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            header = line.upper()
            section = header if header in KEEP else None
            if section:
                out.append(section)
            continue
        if section is None:
            continue
        fields = [f.strip() for f in line.split(",")]
        if section == "#EDGES":
            if len(fields) < 3:
                raise ValueError(f"edge line needs three fields: {line!r}")
            out.append(",".join(fields[:3]))
        else:
            out.append(fields[0])
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("input", help="multinet .mpx file")
    parser.add_argument("output", nargs="?", help="output path (default: stdout)")
    args = parser.parse_args()
    with open(args.input, encoding="utf-8") as handle:
        text = "\n".join(convert(handle)) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
