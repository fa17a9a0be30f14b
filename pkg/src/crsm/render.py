"""Deterministic plain-text rendering of service responses.

Consumes the JSON form of the response models so local and remote runs
print byte-identical reports.
"""

from __future__ import annotations

__all__ = ["render_analysis", "render_classify", "render_verify"]


def _word(labels) -> str:
    if all(len(l) == 1 for l in labels):
        return "".join(labels)
    return ".".join(labels)


def _image(image) -> str:
    return "[" + " ".join(str(q) for q in image) + "]"


def _spectrum(counts) -> str:
    items = sorted(((int(r), c) for r, c in counts.items()), reverse=True)
    return "{" + ", ".join(f"{r}:{c}" for r, c in items) + "}"


def _machine_lines(summary, indent="  "):
    lines = []
    for gen in summary["generators"]:
        lines.append(f"{indent}input {gen['label']}: {_image(gen['image'])}")
    return lines


def render_analysis(report: dict) -> str:
    m = report["machine"]
    lines = [
        f"machine: {m['states']} states ({', '.join(m['state_names'])}); "
        f"{len(m['generators'])} inputs"
    ]
    lines += _machine_lines(m)
    lines.append(f"closure: {report['closure_size']} elements")
    for el in report["elements"]:
        lines.append(
            f"  [{el['index']}] {_word(el['word'])}  image={_image(el['image'])}"
            f"  rank={el['rank']}  tail={el['tail']}  period={el['period']}"
        )
    spectrum = report["rank_spectrum"]
    lines.append(
        f"rank spectrum: {_spectrum(spectrum['counts'])}"
        f"  min={spectrum['min_rank']}  max={spectrum['max_rank']}"
    )
    lines.append(
        f"simple: {'yes' if report['simple'] else 'no'}"
        f"   constant rank: {'yes' if report['constant_rank'] else 'no'}"
    )
    grid = report["grid"]
    lines.append(
        f"idempotents: {report['idempotent_count']}"
        f"  grid: {grid['rows']} rows x {grid['cols']} cols"
        f"{' (total)' if grid['total'] else ''}"
    )
    per = report["periodicity"]
    lines.append(
        f"periodicity: {'all periodic' if per['all_periodic'] else 'tails present'}"
        f"  max tail={per['max_tail']}  max period={per['max_period']}"
    )
    if report["basic_type"]:
        lines.append(f"basic type: {report['basic_type']}")
    if report["minimal_ideal"] is not None:
        lines.append(
            "minimal ideal: elements "
            + " ".join(str(i) for i in report["minimal_ideal"])
        )
    dec = report["decomposition"]
    if dec is not None:
        lines.append(
            f"decomposition: rows={dec['rows']}  cols={dec['cols']}"
            f"  group order={dec['group_order']}  kind={dec['kind']}"
        )
        group = dec["group"]
        lines.append(
            f"  group: order {group['order']}"
            f" ({'abelian' if group['abelian'] else 'non-abelian'});"
            f" element orders {' '.join(str(k) for k in group['element_orders'])}"
        )
        lines.append(f"  reference idempotent: element {dec['reference']}")
        lines.append(
            "  sandwich (cols x rows): "
            + "; ".join(" ".join(str(g) for g in row) for row in dec["sandwich"])
        )
        for name in ("branch", "reset", "permutation"):
            comp = dec[name]
            lines.append(f"  {name} machine ({comp['states']} states):")
            lines += _machine_lines(comp, indent="    ")
        ver = dec["verification"]
        lines.append(
            f"  recomposition: {'PASS' if ver['passed'] else 'FAIL'}"
            f" ({ver['pairs_checked']} pairs checked)"
        )
        if ver["first_mismatch"]:
            lines.append(f"    mismatch: {ver['first_mismatch']}")
    return "\n".join(lines) + "\n"


def render_classify(report: dict) -> str:
    return f"{report['label']}\n"


def render_verify(report: dict) -> str:
    line = (
        f"recomposition: {'PASS' if report['passed'] else 'FAIL'}"
        f" ({report['pairs_checked']} pairs checked)"
    )
    if report["first_mismatch"]:
        line += f"\n  mismatch: {report['first_mismatch']}"
    return line + "\n"
