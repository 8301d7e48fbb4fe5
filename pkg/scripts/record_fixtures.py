#!/usr/bin/env python3
"""Record /v1 API responses over the demo index as frontend test fixtures.

The navigator's parity tests replay these files, so every value the UI
renders can be checked verbatim against a real server response. Re-run
after changing the demo corpus or the API.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from urllib.parse import quote

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))
sys.path.insert(0, str(ROOT))

from fastapi.testclient import TestClient  # noqa: E402

from scafnav.canon import canonicalize  # noqa: E402
from scafnav.scaffold import scaffold_key  # noqa: E402
from scafnav.server import create_app  # noqa: E402
from tests.conftest import DEMO_MOLECULES, build_index  # noqa: E402

OUT = ROOT / "frontend" / "tests" / "fixtures"

BENZENE = canonicalize("c1ccccc1")
AZEPANE = canonicalize("C1CCCNCC1")
SULFONAMIDE = scaffold_key("O=S(=O)(c1ccccc1)N1CCCCCC1").key
ETHER = scaffold_key("c1ccc(COc2ccccc2)cc1").key


def main() -> None:
    idx = build_index(DEMO_MOLECULES)
    client = TestClient(create_app(idx))
    OUT.mkdir(parents=True, exist_ok=True)

    recordings = {}

    def record(name: str, method: str, url: str, body=None):
        if method == "GET":
            response = client.get(url)
        else:
            response = client.post(url, json=body)
        recordings[name] = {
            "method": method,
            "url": url,
            "body": body,
            "status": response.status_code,
            "response": response.json(),
        }

    k = quote(BENZENE, safe="")
    record("scaffold_toluene", "GET", "/v1/scaffold?smiles=Cc1ccccc1")
    record("benzene_successors", "GET", f"/v1/scaffold/{k}/successors")
    record("benzene_predecessors", "GET", f"/v1/scaffold/{k}/predecessors")
    record("benzene_expand", "GET", f"/v1/scaffold/{k}/expand?limit=100")
    record("benzene_uppercone", "GET", f"/v1/scaffold/{k}/uppercone")

    ks = quote(SULFONAMIDE, safe="")
    record("sulfonamide_successors", "GET", f"/v1/scaffold/{ks}/successors")
    record("sulfonamide_predecessors", "GET",
           f"/v1/scaffold/{ks}/predecessors")
    record("sulfonamide_expand", "GET", f"/v1/scaffold/{ks}/expand?limit=100")

    ka = quote(AZEPANE, safe="")
    record("azepane_successors", "GET", f"/v1/scaffold/{ka}/successors")
    record("azepane_predecessors", "GET", f"/v1/scaffold/{ka}/predecessors")
    record("azepane_expand", "GET", f"/v1/scaffold/{ka}/expand?limit=100")

    ke = quote(ETHER, safe="")
    record("ether_successors", "GET", f"/v1/scaffold/{ke}/successors")
    record("ether_predecessors", "GET", f"/v1/scaffold/{ke}/predecessors")

    record("unknown_scaffold", "GET", "/v1/scaffold/C1CCOC1/successors")
    record("fbdd_benzene_azepane", "POST", "/v1/fbdd",
           {"hits": [BENZENE, AZEPANE]})
    record("fbdd_disjoint", "POST", "/v1/fbdd",
           {"hits": [canonicalize("c1ccncc1"), AZEPANE]})
    record("fbdd_sentinel_error", "POST", "/v1/fbdd", {"hits": ["CCO"]})
    record("stats", "GET", "/v1/stats")
    record("healthz", "GET", "/v1/healthz")

    # key-as-SMILES projections (focus restoration and FBDD click-through)
    record("project_toluene", "GET",
           f"/v1/scaffold?smiles={quote('Cc1ccccc1', safe='')}")
    for name, key in (("benzene", BENZENE), ("azepane", AZEPANE),
                      ("sulfonamide", SULFONAMIDE), ("ether", ETHER)):
        record(f"project_{name}_key", "GET",
               f"/v1/scaffold?smiles={quote(key, safe='')}")

    (OUT / "recordings.json").write_text(
        json.dumps(recordings, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    keys = {"benzene": BENZENE, "azepane": AZEPANE,
            "sulfonamide": SULFONAMIDE, "ether": ETHER}
    (OUT / "keys.json").write_text(
        json.dumps(keys, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {len(recordings)} recordings to {OUT}")


if __name__ == "__main__":
    main()
