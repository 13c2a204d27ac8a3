"""``dimlab`` command line.

Every command writes JSON-lines (or a table / TSV when asked). The first line
is a run header; wall-clock data sits only under ``"timing"`` keys.

Exit codes: 0 completed, 1 usage or I/O error, 2 a cap was exceeded without
``--force-caps``. Violated relations are findings and leave the exit code at 0.
"""
from __future__ import annotations

import datetime as _dt
import functools
import json
import sys

import click

from . import __version__, harness, zoo
from .core import dump_class, load_class
from .errors import CapExceeded, DimlabError
from .report import dumps, render_checks, render_table

EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 1, 2


class Output:
    """Collects lines and writes them to a file or stdout on close."""

    def __init__(self, path: str | None):
        self.path = path
        self.lines: list[str] = []

    def record(self, rec: dict):
        self.lines.append(dumps(rec))

    def text(self, text: str):
        self.lines.append(text.rstrip("\n"))

    def close(self):
        body = "\n".join(self.lines) + "\n"
        if self.path in (None, "-"):
            click.echo(body, nl=False)
        else:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(body)


def _header(command: str, config: harness.RunConfig, **params) -> dict:
    return {
        "kind": "run",
        "tool": "dimlab",
        "version": __version__,
        "command": command,
        "params": {k: v for k, v in sorted(params.items()) if v is not None},
        "config": config.to_record(),
        "timing": {"started": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")},
    }


def run_options(fn):
    """Shared cap / scheduling flags."""
    @click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True,
                  help="Worker processes for independent tasks.")
    @click.option("--max-seconds", type=click.FloatRange(min=0, min_open=True), default=None,
                  help="Per-class time budget; measures past it are skipped.")
    @click.option("--force-caps", is_flag=True, help="Lift the default size caps.")
    @click.option("--etd-max-n", type=click.IntRange(min=0), default=harness.RunConfig.etd_max_n,
                  show_default=True, help="Largest n for the ETD concept sweep.")
    @click.option("--dt-max-vars", type=click.IntRange(min=1), default=harness.RunConfig.dt_max_vars,
                  show_default=True, help="Largest variable count for decision-tree depth.")
    @functools.wraps(fn)
    def wrapper(*args, threads, max_seconds, force_caps, etd_max_n, dt_max_vars, **kwargs):
        config = harness.RunConfig(etd_max_n=etd_max_n, dt_max_vars=dt_max_vars,
                                   max_seconds=max_seconds, threads=threads, force_caps=force_caps)
        return fn(*args, config=config, **kwargs)
    return wrapper


def class_options(fn):
    fn = click.option("--complement", is_flag=True, help="Use the complement class.")(fn)
    fn = click.option("--anchor", type=int, default=None, help="Anchor instance (dictator).")(fn)
    fn = click.option("--k", "k", type=int, default=None, help="Family parameter k.")(fn)
    fn = click.option("--n", "n", type=click.IntRange(min=0), default=None, help="Number of variables.")(fn)
    fn = click.option("--zoo", "zoo_name", default=None, help="Zoo family name (see `dimlab zoo list`).")(fn)
    return fn


def _spec(zoo_name, n, k, anchor, complement) -> zoo.ClassSpec:
    if zoo_name is None or n is None:
        raise click.UsageError("--zoo and --n are required")
    if zoo_name not in zoo.FAMILIES:
        raise click.UsageError(f"unknown zoo family {zoo_name!r}; try `dimlab zoo list`")
    return zoo.ClassSpec(zoo_name, n, k, anchor, complement)


def _load_subject(zoo_name, n, k, anchor, complement, class_file):
    if class_file:
        if zoo_name:
            raise click.UsageError("give either --zoo or --class-file, not both")
        return load_class(class_file), f"file:{class_file}"
    spec = _spec(zoo_name, n, k, anchor, complement)
    return zoo.build(spec), spec.label()


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="dimlab")
def cli():
    """Exact teaching and evaluation complexity measures of concept classes."""


@cli.command()
@class_options
@click.option("--class-file", type=click.Path(dir_okay=False), default=None, help="Class JSON file.")
@click.option("--measures", default=",".join(harness.MEASURE_NAMES), show_default=True,
              help="Comma-separated measure names.")
@click.option("--out", default=None, help="Output file (default stdout).")
@click.option("--format", "fmt", type=click.Choice(["json", "tsv"]), default="json", show_default=True)
@run_options
def measure(zoo_name, n, k, anchor, complement, class_file, measures, out, fmt, config):
    """Compute selected measures of one class."""
    names = [m.strip() for m in measures.split(",") if m.strip()]
    unknown = [m for m in names if m not in harness.MEASURE_NAMES]
    if unknown:
        raise click.UsageError(f"unknown measures: {', '.join(unknown)}")
    cls, subject = _load_subject(zoo_name, n, k, anchor, complement, class_file)
    report = harness.measure(cls, names, subject, config)
    sink = Output(out)
    if fmt == "tsv":
        sink.text(report.to_tsv())
    else:
        sink.record(_header("measure", config, subject=subject, measures=names))
        sink.record(report.to_record())
    sink.close()


@cli.command()
@class_options
@click.option("--class-file", type=click.Path(dir_okay=False), default=None, help="Class JSON file.")
@click.option("--out", default=None, help="Output file (default stdout).")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@run_options
def verify(zoo_name, n, k, anchor, complement, class_file, out, fmt, config):
    """Check every applicable relation; `--zoo all` sweeps the default zoo."""
    if zoo_name == "all":
        if n is None:
            raise click.UsageError("--zoo all needs --n")
        specs = zoo.default_zoo(n)
        results = harness.verify_many(specs, config)
        subjects = [s.label() for s in specs]
    else:
        cls, subject = _load_subject(zoo_name, n, k, anchor, complement, class_file)
        results = [harness.verify(cls, subject, config)]
        subjects = [subject]
    sink = Output(out)
    if fmt == "table":
        for subject, checks in zip(subjects, results):
            sink.text(f"== {subject}")
            sink.text(render_checks(checks))
    else:
        sink.record(_header("verify", config, zoo=zoo_name, n=n, k=k, anchor=anchor,
                            complement=complement or None, class_file=class_file))
        for checks in results:
            for check in checks:
                sink.record(check.to_record())
    sink.close()


@cli.command()
@click.option("--k", "k", type=int, default=2, show_default=True)
@click.option("--stride", type=click.IntRange(min=1), default=97, show_default=True,
              help="Cross-check the certificate routes on every stride-th input.")
@click.option("--out", default=None, help="Output file (default stdout).")
@run_options
def rubinstein(k, stride, out, config):
    """Exact measures of Rubinstein's function."""
    report, checks = harness.rubinstein_report(k, workers=config.threads, cross_check_stride=stride)
    sink = Output(out)
    sink.record(_header("rubinstein", config, k=k, stride=stride))
    sink.record(report.to_record())
    for check in checks:
        sink.record(check.to_record())
    sink.close()


@cli.command()
@class_options
@click.option("--budget", type=click.IntRange(min=1), default=None,
              help="Permutations examined by the exhaustive phase.")
@click.option("--out", default=None, help="Output file (default stdout).")
@run_options
def symmetry(zoo_name, n, k, anchor, complement, budget, out, config):
    """Weak symmetry of the meta-function and the evasiveness prediction."""
    spec = _spec(zoo_name, n, k, anchor, complement)
    record = harness.symmetry_report(zoo.build(spec), spec.label(), budget, config.dt_max_vars)
    sink = Output(out)
    sink.record(_header("symmetry", config, subject=spec.label(), budget=budget))
    sink.record(record)
    sink.close()


TABLE_FAMILIES = [("monotone_monomials", None), ("monomials", None), ("monotone_kterm_dnf", 2),
                  ("kterm_dnf", 2), ("ltf", None), ("kjuntas", 1), ("kjuntas", 2)]


@cli.command()
@click.option("--n", "ns", type=click.IntRange(min=1), multiple=True, default=(2, 3), show_default=True)
@click.option("--out", default=None, help="Output file (default stdout).")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="table", show_default=True)
@run_options
def table(ns, out, fmt, config):
    """Measured TD, aTD, C1, C0, ETD and MEMB for the classic classes."""
    specs = []
    for n in ns:
        specs += [zoo.ClassSpec(f, n, k) for f, k in TABLE_FAMILIES if k is None or k <= n]
        specs += [zoo.ClassSpec("powerset", n), zoo.ClassSpec("singletons_with_empty", n),
                  zoo.ClassSpec("singletons_with_empty", n, complement=True)]
    rows = harness.table_report(specs, config)
    sink = Output(out)
    if fmt == "table":
        sink.text(render_table(rows, harness.TABLE_COLUMNS))
    else:
        sink.record(_header("table", config, n=list(ns)))
        for row in rows:
            sink.record(harness.table_record(row))
        for rec in harness.complement_atd_report(ns):
            sink.record(rec)
    sink.close()


@cli.group("zoo")
def zoo_group():
    """List or emit zoo classes."""


@zoo_group.command("list")
def zoo_list():
    for name, fam in zoo.FAMILIES.items():
        params = "n" + (", k" if fam.uses_k else "") + (", anchor" if fam.uses_anchor else "")
        click.echo(f"{name:28s} ({params})  {fam.summary}")


@zoo_group.command("emit")
@class_options
@click.option("--out", default=None, help="Output file (default stdout).")
def zoo_emit(zoo_name, n, k, anchor, complement, out):
    """Write a zoo class in the class-file JSON format."""
    cls = zoo.build(_spec(zoo_name, n, k, anchor, complement))
    if out in (None, "-"):
        click.echo(json.dumps(cls.to_dict()))
    else:
        dump_class(cls, out)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="dimlab", standalone_mode=False)
    except CapExceeded as exc:
        click.echo(f"error: cap exceeded: {exc} (use --force-caps to override)", err=True)
        return EXIT_CAP
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (DimlabError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
