"""Command-line front end.

    cbetrack simulate --config scenario.json --out results/ [--set key=value ...]
    cbetrack plot --data results/ --out charts/
    cbetrack graph --config scenario.json [--out dir]

Exit status: 0 on success, 2 on a configuration error, 3 on an I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from cbetrack.charts import line_chart
from cbetrack.graph import max_degree
from cbetrack.simulation import ConfigError, ScenarioConfig, SimulationResult, build_network, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

STATE_COLUMNS = ["px", "py", "pz", "vx", "vy", "vz"]


class CliIOError(Exception):
    pass


@dataclass
class OutputBundle:
    files: list[Path] = field(default_factory=list)


def _num(v: float) -> str:
    # repr gives the shortest decimal that round-trips exactly.
    return repr(float(v))


def parse_override(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise ConfigError(text, "override must have the form key=value")
    key, raw = text.split("=", 1)
    key = key.strip()
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def load_config(path: str | Path | None, overrides: list[str] = ()) -> ScenarioConfig:
    doc: dict = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise CliIOError(f"cannot read config {path}: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"{path} is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("config", "top level must be a JSON object")
    for item in overrides:
        key, value = parse_override(item)
        doc[key] = value
    try:
        return ScenarioConfig.from_dict(doc)
    except TypeError as exc:
        raise ConfigError("config", str(exc)) from exc


def _write_csv(path: Path, header: list[str], rows) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_outputs(result: SimulationResult, out_dir: Path) -> OutputBundle:
    n = result.network.n
    m = result.metrics
    bundle = OutputBundle()
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        bundle.files.append(_write_csv(
            out_dir / "truth.csv", ["k", *STATE_COLUMNS],
            ([k, *map(_num, x)] for k, x in enumerate(result.truth, 1))))
        bundle.files.append(_write_csv(
            out_dir / "estimates.csv", ["k", "agent", *STATE_COLUMNS],
            ([k, i, *map(_num, est)] for k, step in enumerate(result.estimates, 1) for i, est in enumerate(step))))
        bundle.files.append(_write_csv(
            out_dir / "innovation.csv", ["k", *(f"m_{i}" for i in range(n))],
            ([k, *map(_num, row)] for k, row in enumerate(m.innovation, 1))))
        bundle.files.append(_write_csv(
            out_dir / "msee.csv", ["k", *(f"e_{i}" for i in range(n))],
            ([k, *map(_num, row)] for k, row in enumerate(m.msee, 1))))
        bundle.files.append(_write_csv(
            out_dir / "msee_avg.csv", ["k", "e_avg"],
            ([k, _num(v)] for k, v in enumerate(m.msee_avg, 1))))
        net_path = out_dir / "network.json"
        net_path.write_text(json.dumps(result.network.to_dict()) + "\n", encoding="utf-8")
        bundle.files.append(net_path)
        cfg_path = out_dir / "config_resolved.json"
        cfg_path.write_text(json.dumps(result.config_echo.to_dict(), indent=2) + "\n", encoding="utf-8")
        bundle.files.append(cfg_path)
    except OSError as exc:
        raise CliIOError(f"cannot write to {out_dir}: {exc}") from exc
    return bundle


def cmd_simulate(config_path, out_dir, overrides: list[str] = ()) -> OutputBundle:
    config = load_config(config_path, overrides)
    result = run(config)
    return write_outputs(result, Path(out_dir))


def _read_table(path: Path, prefix: str) -> tuple[list[float], list[list[float]], list[str]]:
    """Read a ``k,<prefix>0,...`` CSV into (k values, per-column series, column names)."""
    if not path.is_file():
        raise CliIOError(f"missing data file {path.name} in {path.parent}")
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise CliIOError(f"cannot read {path.name}: {exc}") from exc
    if len(rows) < 2 or rows[0][0] != "k" or not all(c.startswith(prefix) for c in rows[0][1:]):
        raise CliIOError(f"malformed data file {path.name}")
    names = rows[0][1:]
    try:
        ks = [float(r[0]) for r in rows[1:]]
        cols = [[float(r[c + 1]) for r in rows[1:]] for c in range(len(names))]
    except (ValueError, IndexError) as exc:
        raise CliIOError(f"malformed data file {path.name}: {exc}") from exc
    return ks, cols, names


def cmd_plot(data_dir, out_dir) -> OutputBundle:
    data_dir, out_dir = Path(data_dir), Path(out_dir)
    panels = [
        ("innovation.csv", "m_", "innovation.svg", "Innovation magnitude per agent", "m"),
        ("msee.csv", "e_", "msee.svg", "MSEE per agent", "MSEE"),
        ("msee_avg.csv", "e_avg", "msee_avg.svg", "Average MSEE", "average MSEE"),
    ]
    rendered = []
    for src, prefix, dst, title, ylabel in panels:
        ks, cols, names = _read_table(data_dir / src, prefix)
        labels = [f"agent {name[len(prefix):]}" for name in names] if prefix != "e_avg" else ["network"]
        rendered.append((dst, line_chart(ks, cols, labels, title, "k", ylabel)))
    bundle = OutputBundle()
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for dst, svg in rendered:
            path = out_dir / dst
            path.write_text(svg, encoding="utf-8")
            bundle.files.append(path)
    except OSError as exc:
        raise CliIOError(f"cannot write to {out_dir}: {exc}") from exc
    return bundle


def cmd_graph(config_path, out_dir=".", overrides: list[str] = ()) -> str:
    config = load_config(config_path, overrides)
    net = build_network(config)
    dmax = max_degree(net)
    lines = [
        f"agents: {net.n}",
        f"edges ({len(net.edges)}): " + " ".join(f"{i}-{j}" for i, j in net.edges),
        "degrees: " + " ".join(f"{i}:{d}" for i, d in enumerate(net.degrees)),
        f"max degree: {dmax}",
        f"epsilon bound (1/max_degree): {1.0 / dmax:g}",
        f"epsilon: {config.epsilon:g}",
        "connected: yes",
    ]
    try:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "network.json").write_text(json.dumps(net.to_dict()) + "\n", encoding="utf-8")
    except OSError as exc:
        raise CliIOError(f"cannot write network.json to {out_dir}: {exc}") from exc
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cbetrack", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario and write CSV results")
    sim.add_argument("--config", help="scenario JSON (all keys optional)")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                     help="override a config key; VALUE is parsed as JSON when possible")

    plot = sub.add_parser("plot", help="render SVG charts from simulate output")
    plot.add_argument("--data", required=True)
    plot.add_argument("--out", required=True)

    graph = sub.add_parser("graph", help="print the communication network of a scenario")
    graph.add_argument("--config")
    graph.add_argument("--out", default=".", help="directory for network.json")
    graph.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            bundle = cmd_simulate(args.config, args.out, args.overrides)
            print(f"wrote {len(bundle.files)} files to {args.out}")
        elif args.command == "plot":
            bundle = cmd_plot(args.data, args.out)
            print(f"wrote {len(bundle.files)} charts to {args.out}")
        else:
            print(cmd_graph(args.config, args.out, args.overrides))
    except ConfigError as exc:
        print(f"config error in field '{exc.field}': {exc.message}", file=sys.stderr)
        return EXIT_CONFIG
    except CliIOError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
