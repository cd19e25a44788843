#!/usr/bin/env python3
"""Convert a WN-LMF XML export (e.g. Open English WordNet) into lexicon JSONL.

Each synset becomes one concept record:
    {"id", "pos", "forms", "definition", "relations": [{"kind", "target"}]}

Forms follow the synset's `members` order when present, otherwise the order in
which lexical entries reference the synset. Sense-level derivation links are
lifted to the synsets of both senses. Relation types with no counterpart in the
lexicon format are dropped; the summary on stderr counts them.
"""

import argparse
import collections
import gzip
import json
import sys
import xml.etree.ElementTree as ET

SYNSET_RELATIONS = {
    "hypernym": "hypernym",
    "instance_hypernym": "hypernym",
    "hyponym": "hyponym",
    "instance_hyponym": "hyponym",
    "domain_topic": "topic",
    "has_domain_topic": "topic",
    "holo_member": "holonym",
    "holo_part": "holonym",
    "holo_substance": "holonym",
    "holonym": "holonym",
    "mero_member": "meronym",
    "mero_part": "meronym",
    "mero_substance": "meronym",
    "meronym": "meronym",
}

SENSE_RELATIONS = {"derivation": "derivation"}


def local(tag):
    return tag.rsplit("}", 1)[-1]


def open_input(path):
    if path == "-":
        return sys.stdin.buffer
    if path.endswith(".gz"):
        return gzip.open(path, "rb")
    return open(path, "rb")


def convert(source, include_instances=True):
    entry_lemma = {}
    entry_synsets = collections.defaultdict(list)
    sense_synset = {}
    sense_links = []
    synsets = {}
    dropped = collections.Counter()

    current_entry = None
    current_sense = None
    for event, elem in ET.iterparse(source, events=("start", "end")):
        tag = local(elem.tag)
        if event == "start":
            if tag == "LexicalEntry":
                current_entry = elem.get("id")
            elif tag == "Sense":
                current_sense = elem.get("id")
                sense_synset[current_sense] = elem.get("synset")
                entry_synsets[current_entry].append(elem.get("synset"))
            continue

        if tag == "Lemma":
            entry_lemma[current_entry] = elem.get("writtenForm")
        elif tag == "SenseRelation":
            kind = SENSE_RELATIONS.get(elem.get("relType"))
            if kind is None:
                dropped[elem.get("relType")] += 1
            else:
                sense_links.append((current_sense, kind, elem.get("target")))
        elif tag == "Sense":
            current_sense = None
        elif tag == "LexicalEntry":
            current_entry = None
        elif tag == "Synset":
            definition = None
            relations = []
            for child in elem:
                ctag = local(child.tag)
                if ctag == "Definition" and definition is None:
                    definition = (child.text or "").strip()
                elif ctag == "SynsetRelation":
                    rel = child.get("relType")
                    if not include_instances and rel.startswith("instance_"):
                        dropped[rel] += 1
                        continue
                    kind = SYNSET_RELATIONS.get(rel)
                    if kind is None:
                        dropped[rel] += 1
                    else:
                        relations.append((kind, child.get("target")))
            synsets[elem.get("id")] = {
                "pos": elem.get("partOfSpeech"),
                "members": (elem.get("members") or "").split(),
                "definition": definition,
                "relations": relations,
            }
            elem.clear()
        elif tag == "LexicalEntry":
            elem.clear()

    forms_by_synset = collections.defaultdict(list)
    for entry, targets in entry_synsets.items():
        for synset in targets:
            forms_by_synset[synset].append(entry)

    for source_sense, kind, target_sense in sense_links:
        a = sense_synset.get(source_sense)
        b = sense_synset.get(target_sense)
        if a in synsets and b in synsets and a != b:
            synsets[a]["relations"].append((kind, b))

    records = []
    missing_definitions = 0
    for sid in sorted(synsets):
        s = synsets[sid]
        entries = s["members"] or forms_by_synset.get(sid, [])
        forms = []
        for entry in entries:
            form = entry_lemma.get(entry)
            if form and form not in forms:
                forms.append(form)
        if not forms:
            dropped["synset without forms"] += 1
            continue
        definition = s["definition"]
        if not definition:
            missing_definitions += 1
            definition = forms[0]
        seen = set()
        relations = []
        for kind, target in s["relations"]:
            if target not in synsets or (kind, target) in seen:
                continue
            seen.add((kind, target))
            relations.append({"kind": kind, "target": target})
        records.append({
            "id": sid,
            "pos": s["pos"],
            "forms": forms,
            "definition": definition,
            "relations": relations,
        })

    # Forms-less synsets were dropped; prune edges pointing at them.
    kept = {r["id"] for r in records}
    for r in records:
        r["relations"] = [rel for rel in r["relations"] if rel["target"] in kept]
    return records, dropped, missing_definitions


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("input", help="WN-LMF XML file (.xml or .xml.gz, '-' for stdin)")
    parser.add_argument("output", help="lexicon JSONL destination ('-' for stdout)")
    parser.add_argument("--no-instances", action="store_true",
                        help="drop instance_hypernym/instance_hyponym links")
    args = parser.parse_args(argv)

    with open_input(args.input) as source:
        records, dropped, missing = convert(source, include_instances=not args.no_instances)

    out = sys.stdout if args.output == "-" else open(args.output, "w", encoding="utf-8")
    try:
        for r in records:
            out.write(json.dumps(r, ensure_ascii=False) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()

    print(f"{len(records)} concepts written", file=sys.stderr)
    if missing:
        print(f"{missing} synsets had no definition; first form used instead", file=sys.stderr)
    for rel, n in sorted(dropped.items()):
        print(f"dropped {n} x {rel}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
