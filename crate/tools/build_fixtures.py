"""Builds replay fixtures from the recorded responses in fixture_sources/.

Each fixture file has the transcript shape. Pipeline fixtures record the
exact prompts, so replay also checks prompt assembly; the extraction
fixture records only the response.
"""
import json
import pathlib

from prompt_oracle import LABELS, PIPELINE, ROOT, problem_raw, system_prompt

SOURCES = pathlib.Path(__file__).resolve().parent / "fixture_sources"
OUT = ROOT / "crates" / "core" / "data" / "fixtures"
STAMP = "1970-01-01T00:00:00.000Z"
MODEL = "gpt-4-0125-preview"


def response(label, node):
    text = (SOURCES / label / f"{node}.txt").read_text(encoding="utf-8")
    return text[:-1] if text.endswith("\n") else text


def record(node, prompt, resp):
    return {"node": node, "prompt": prompt, "response": resp, "started_at": STAMP, "finished_at": STAMP}


def transcript(label, kind, nodes):
    return {
        "run_id": f"{label}-{kind}",
        "problem_label": label,
        "problem": problem_raw(label),
        "model_id": MODEL,
        "temperature": 0.0,
        "complete": True,
        "nodes": nodes,
    }


def write(path, obj):
    path.write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


for label in LABELS:
    d = OUT / label
    d.mkdir(parents=True, exist_ok=True)
    problem = problem_raw(label)
    nodes, prior = [], []
    for node in PIPELINE:
        msgs = [{"role": "system", "content": system_prompt(node, problem)}]
        msgs += [{"role": "assistant", "content": r} for r in prior]
        r = response(label, node)
        nodes.append(record(node, msgs, r))
        prior.append(r)
    write(d / "pipeline.json", transcript(label, "pipeline", nodes))
    for node in ["oneshot_formulate", "oneshot_solve"]:
        msgs = [{"role": "system", "content": system_prompt(node, problem)}]
        write(d / f"{node}.json", transcript(label, node, [record(node, msgs, response(label, node))]))
    write(d / "extract.json", transcript(label, "extract", [record("extract", [], response(label, "extract"))]))
print(f"wrote fixtures under {OUT}")
