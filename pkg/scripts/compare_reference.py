"""Table of computed ceilings next to the published reference figures."""

from pellrep.prover import prove


def main() -> None:
    for theorem in ("pell", "pell-lucas"):
        cert = prove(theorem)
        print(f"== {theorem} ({cert.status})")
        for d in cert.to_json()["metadata"]["paper_discrepancies"]:
            print(f"  {d['item']}: reference {d.get('reference')}, computed {d.get('computed', '-')}")
            if d.get("note"):
                print(f"      {d['note']}")


if __name__ == "__main__":
    main()
