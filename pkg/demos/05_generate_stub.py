"""Run the topic-segmented generation pipeline against the stub client.

No endpoint needed: the stub replays canned replies, which makes it
easy to see exactly what the pipeline sends and how segments chain
together through the sliding context tail. The same code path drives
a real HTTP endpoint via HttpLLMClient.
"""

import tempfile
from pathlib import Path

from spreekuur.generation import GenerationConfig, StubLLMClient, generate_dialogue

cfg = GenerationConfig(
    topics=("symptomen", "medicatiegebruik", "leefstijl"),
    target_turns=20,
    target_words=150,
)

replies = [
    "Arts: Vertel eens over uw klachten.\nPatiënt: Vooral hoofdpijn en vermoeidheid.",
    "Arts: Gebruikt u nog medicatie?\nPatiënt: Alleen paracetamol als het echt nodig is.",
    "Arts: Hoe staat het met bewegen?\nPatiënt: Ik wandel elke ochtend een half uur.",
]

stub = StubLLMClient(replies=list(replies))
with tempfile.TemporaryDirectory() as tmp:
    job_dir = Path(tmp) / "job"
    job = generate_dialogue(cfg, "- nieuwe patiënt, nefrologie", [], stub, job_dir=job_dir)

    print(f"complete: {job.complete}, segments: {len(job.segments)}")
    print(f"files in job dir: {sorted(p.name for p in job_dir.rglob('*') if p.is_file())}")
    print()

    # every call carries the system prompt plus a topic-specific user
    # prompt; calls after the first embed the tail of the previous segment
    second_call = stub.calls[1]["messages"]
    print(f"call 2 roles: {[m['role'] for m in second_call]}")
    tail_marker = "De laatste woorden van het vorige deel"
    print(f"call 2 carries previous-segment tail: {tail_marker in second_call[-1]['content']}")
    print()

    print("final dialogue (segments joined by newline):")
    print(job.final_dialogue)
