"""Writes the golden system prompts used by the prompt byte-exactness tests."""
from prompt_oracle import LABELS, PIPELINE, ROOT, problem_raw, system_prompt

OUT = ROOT / "crates" / "core" / "tests" / "golden" / "prompts"

for label in LABELS:
    d = OUT / label
    d.mkdir(parents=True, exist_ok=True)
    for node in PIPELINE + ["oneshot_formulate", "oneshot_solve"]:
        (d / f"{node}.txt").write_bytes(system_prompt(node, problem_raw(label)).encode("utf-8"))
print(f"wrote goldens under {OUT}")
