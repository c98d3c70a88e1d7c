"""Independent reference assembly of the analyst prompts.

Raw texts are evaluated as Python triple-quoted string literals, exactly as
they would be in the original agent source, rather than by re-implementing
the crate's continuation handling.
"""
import ast
import pathlib
import warnings

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "crates" / "core" / "data"

PIPELINE = [
    "characterize",
    "refine_characterization",
    "operators",
    "refine_operators",
    "search_control",
    "test_cases",
]
LABELS = [
    "f_4_9_to_6",
    "f_3_5_to_4",
    "f_9_17_to_5",
    "v_4qt_9gal_to_6gal",
    "v_2_3_5_to_4",
    "a_4_9_to_6",
]
CLOSING = "LIMIT YOUR RESPONSE TO THIS QUESTION ONLY/ASPECT OF ANALYSIS."


def as_literal(raw: str) -> str:
    with warnings.catch_warnings():
        # `\ ` is an invalid escape that Python keeps verbatim.
        warnings.simplefilter("ignore")
        value = ast.literal_eval('"""' + raw + '"""')
    return value[:-1] if value.endswith("\n") else value


def prompt_text(name: str) -> str:
    return as_literal((DATA / "prompts" / f"{name}.txt").read_text(encoding="utf-8"))


def problem_raw(label: str) -> str:
    return (DATA / "problems" / f"{label}.txt").read_text(encoding="utf-8")


def system_prompt(node: str, problem: str) -> str:
    desc = as_literal(problem)
    if node == "oneshot_solve":
        return prompt_text("oneshot_solver").replace("{problem_description}", desc)
    template = "{general}\nSPECIFIC PROBLEM:\n{problem}\n{instructions}"
    text = template.format(
        general=prompt_text("general_system"),
        problem=desc,
        instructions=prompt_text(node),
    )
    if node != "oneshot_formulate":
        text += "\n" + CLOSING
    return text
