"""Write the built-in three-family instances as JSON files."""

import argparse
import json
from pathlib import Path

from dbnest.instances import THREE_FAMILY, three_family_dict


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=str(Path(__file__).resolve().parent.parent / "instances"))
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name in THREE_FAMILY:
        for rot in (False, True):
            doc = three_family_dict(name, rot)
            path = out / f"{doc['name']}.json"
            path.write_text(json.dumps(doc, indent=2) + "\n")
            print(path)


if __name__ == "__main__":
    main()
