"""The JSON document formats and the command-line front door.

Run:  python3 demos/05_documents_and_cli.py
"""

import json
import tempfile
from pathlib import Path

from rbsys import GF, Matrix, RotaBaxterSystem, zero_algebra, regular_bimodule, zero_cocycle
from rbsys import documents as docs
from rbsys.cli import main

workdir = Path(tempfile.mkdtemp(prefix="rbs-demo-"))

# Documents are single JSON objects with schema "rbs/v1" and a kind.
field = GF(2)
z = Matrix.zeros(field, 1, 1)
sys = RotaBaxterSystem(zero_algebra(field, 1), z, z)
sys_doc = docs.serialize_system(sys, name="gf2-zero")
sys_path = workdir / "system.json"
docs.dump(sys_doc, sys_path)
print("system document:")
print(json.dumps(sys_doc, indent=2))

# Exit code contract: 0 = all checks pass, 1 = a check fails (first
# witness printed), 2 = malformed input.
print("\n$ rbs validate system.json")
code = main(["validate", str(sys_path)])
print("exit code:", code)

print("\n$ rbs cohomology system.json --what rbs --max-degree 3")
main(["cohomology", str(sys_path), "--what", "rbs", "--max-degree", "3"])

print("\n$ rbs extend census system.json -o census.json")
main(["extend", "census", str(sys_path), "-o", str(workdir / "census.json")])

# Build an extension document from a cocycle document and read it back.
mod = regular_bimodule(sys)
c_path = workdir / "cocycle.json"
docs.dump(docs.serialize_cocycle(zero_cocycle(sys, mod), system_doc=sys_doc), c_path)
ext_path = workdir / "ext.json"
print("\n$ rbs extend build system.json cocycle.json -o ext.json")
main(["extend", "build", str(sys_path), str(c_path), "-o", str(ext_path)])
print("\n$ rbs extend extract ext.json")
main(["extend", "extract", str(ext_path)])

# Machine-readable reports carry the same numbers as the text output.
print("\n$ rbs cohomology system.json --what alg --json")
main(["cohomology", str(sys_path), "--what", "alg", "--json"])

print("\nworking files kept under:", workdir)
