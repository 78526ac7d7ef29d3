"""Command line front end.

Exit codes: 0 success, 1 a semantic failure (validation violated, step not
enabled, bound exceeded), 2 usage errors or malformed input.
"""
import json
import sys

import click

from . import acn, bridge, es, morphisms, net, racn, serial
from .errors import (BoundExceeded, MalformedModel, ModelError, NotApplicable,
                     RepeatedFiring, UnsafeMarking)
from .net import DEFAULT_BOUND
from .racn import Racn


def _read_json(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{path}: not valid JSON: {exc}")


def _load_model(path):
    try:
        return serial.load_model(_read_json(path))
    except MalformedModel as exc:
        raise click.UsageError(f"{path}: {exc}")


def _load_morphism(path):
    try:
        return serial.load_morphism(_read_json(path))
    except MalformedModel as exc:
        raise click.UsageError(f"{path}: {exc}")


def _emit(data):
    click.echo(serial.dumps(data), nl=False)


def _semantic_failure(exc):
    click.echo(str(exc), err=True)
    sys.exit(1)


VALIDATORS = {
    "ipt": lambda m: None,
    "pacn": acn.validate_pacn,
    "acn": acn.validate_acn,
    "cn": acn.validate_cn,
    "racn": racn.validate_racn,
    "aes": es.validate_aes,
    "raes": es.validate_raes,
}


@click.group()
def main():
    """Reversible asymmetric event structures and causal nets."""


@main.command()
@click.argument("model")
@click.option("--as", "as_kind", type=click.Choice(sorted(VALIDATORS) + ["sraes"]),
              default=None, help="Validate against this kind instead of the "
              "file's declared kind.")
def validate(model, as_kind):
    """Check a model file against the axioms of its kind."""
    kind, obj = _load_model(model)
    want = as_kind or kind
    if want == "sraes" or kind == "sraes":
        if want != kind:
            raise click.UsageError("merged structures only validate as sraes")
        try:
            es.sraes_to_raes(obj)
        except NotApplicable as exc:
            _semantic_failure(exc)
        _emit({"subject": model, "ok": True, "violations": [], "notes": []})
        return
    if want == "racn" and not isinstance(obj, Racn):
        raise click.UsageError("only a racn file can validate as racn")
    if want in ("pacn", "acn", "cn") and isinstance(obj, Racn):
        obj = obj.forward_restriction()
    if want in ("aes",) and kind in ("raes",):
        obj = obj.forward()
    checker = VALIDATORS[want]
    rep = checker(obj)
    if rep is None:
        _emit({"subject": model, "ok": True, "violations": [], "notes": []})
        return
    rep.subject = model
    _emit(rep.to_json())
    if not rep.ok:
        sys.exit(1)


@main.command()
@click.argument("model")
def relations(model):
    """Print the derived relations of a net, or the conflict and sustained
    causation of a reversible event structure."""
    kind, obj = _load_model(model)
    if isinstance(obj, Racn):
        out = acn.derived_relations(obj.forward_restriction()).to_json()
        out.update(racn.backward_relations(obj).to_json())
        _emit(out)
    elif kind in serial.NET_KINDS:
        _emit(acn.derived_relations(obj).to_json())
    elif kind == "raes":
        _emit({
            "conflict": sorted(sorted(p) for p in obj.conflict()),
            "sustained_causation":
                sorted(map(list, es.sustained_causation(obj))),
        })
    elif kind == "aes":
        _emit({"conflict": sorted(sorted(p) for p in obj.conflict())})
    else:
        raise click.UsageError(f"no relations view for kind {kind!r}")


@main.command()
@click.argument("model")
@click.option("--mixed-steps", is_flag=True,
              help="Allow steps doing/undoing several events at once.")
@click.option("--bound", default=DEFAULT_BOUND, show_default=True)
@click.option("--dot", is_flag=True, help="Emit DOT instead of JSON.")
def configs(model, mixed_steps, bound, dot):
    """Configurations of a structure or net.

    For aes/pacn/acn files: the configuration family.  For raes/racn files:
    the reachable configuration graph."""
    kind, obj = _load_model(model)
    try:
        if kind == "raes":
            g = es.raes_config_graph(obj, mixed_steps=mixed_steps, bound=bound)
            _emit_graph(g, dot)
        elif isinstance(obj, Racn):
            g = racn.racn_configurations(obj, bound=bound)
            _emit_graph(g, dot)
        elif kind == "aes":
            _emit(es.aes_configurations(obj, bound=bound).to_json())
        elif kind in ("pacn", "acn", "ipt", "cn"):
            out = acn.pacn_configurations(obj, bound=bound)
            _emit({"configurations": sorted(sorted(c) for c in out)})
        else:
            raise click.UsageError(f"no configurations for kind {kind!r}")
    except (NotApplicable, BoundExceeded) as exc:
        _semantic_failure(exc)


def _emit_graph(g, dot):
    if dot:
        click.echo(serial.graph_to_dot(g), nl=False)
    else:
        _emit(g.to_json())


@main.command()
@click.argument("model")
@click.option("--bound", default=DEFAULT_BOUND, show_default=True)
def reach(model, bound):
    """Reachable markings of a net."""
    kind, obj = _load_model(model)
    n = obj.net if isinstance(obj, Racn) else obj
    if kind not in serial.NET_KINDS:
        raise click.UsageError("reach works on nets")
    try:
        ms = net.reachable_markings(n, bound=bound)
    except (BoundExceeded, UnsafeMarking) as exc:
        _semantic_failure(exc)
    _emit({"markings": sorted(sorted(m) for m in ms)})


@main.command()
@click.argument("model")
@click.option("--seq", required=True,
              help="Comma-separated transitions, fired one at a time.")
def fire(model, seq):
    """Fire a sequence of transitions from the initial marking."""
    kind, obj = _load_model(model)
    n = obj.net if isinstance(obj, Racn) else obj
    if kind not in serial.NET_KINDS:
        raise click.UsageError("fire works on nets")
    m = n.marking
    trace = [sorted(m)]
    for t in [x.strip() for x in seq.split(",") if x.strip()]:
        try:
            m = n.fire(m, [t])
        except ModelError as exc:
            _semantic_failure(exc)
        trace.append(sorted(m))
    _emit({"marking": sorted(m), "trace": trace})


@main.command()
@click.argument("model")
@click.option("--single-fire/--multi-fire", default=True, show_default=True)
@click.option("--bound", default=DEFAULT_BOUND, show_default=True)
def states(model, single_fire, bound):
    """Sets (or multisets) of transitions fired along executions."""
    kind, obj = _load_model(model)
    n = obj.net if isinstance(obj, Racn) else obj
    if kind not in serial.NET_KINDS:
        raise click.UsageError("states works on nets")
    try:
        out = net.states(n, single_fire=single_fire, bound=bound)
    except (BoundExceeded, RepeatedFiring, UnsafeMarking) as exc:
        _semantic_failure(exc)
    if single_fire:
        _emit({"states": sorted(sorted(s) for s in out)})
    else:
        _emit({"states": sorted([[t, c] for t, c in s] for s in out)})


@main.command()
@click.argument("model")
@click.option("--to", "target", required=True,
              type=click.Choice(["racn", "raes", "acn", "sraes"]))
@click.option("--saturate", is_flag=True,
              help="Close the structure before translating to a net.")
def translate(model, target, saturate):
    """Translate between the models (raes<->racn, cn->acn, raes<->sraes)."""
    kind, obj = _load_model(model)
    try:
        if target == "racn" and kind == "raes":
            _emit(serial.model_to_json(bridge.raes_to_racn(obj, saturate)))
        elif target == "raes" and kind == "racn":
            _emit(serial.model_to_json(bridge.racn_to_raes(obj)))
        elif target == "raes" and kind == "sraes":
            _emit(serial.model_to_json(es.sraes_to_raes(obj)))
        elif target == "sraes" and kind == "raes":
            _emit(serial.model_to_json(es.raes_to_sraes(obj)))
        elif target == "acn" and kind == "cn":
            _emit(serial.model_to_json(acn.cn_to_acn(obj), "acn"))
        else:
            raise click.UsageError(f"cannot translate {kind} to {target}")
    except NotApplicable as exc:
        _semantic_failure(exc)


@main.command("check-morphism")
@click.argument("source")
@click.argument("target")
@click.argument("mapping")
@click.option("--oracle", is_flag=True,
              help="Also replay the source behaviour through the map.")
@click.option("--bound", default=DEFAULT_BOUND, show_default=True)
def check_morphism(source, target, mapping, oracle, bound):
    """Check the morphism axioms for MAPPING between SOURCE and TARGET."""
    skind, src = _load_model(source)
    tkind, dst = _load_model(target)
    f = _load_morphism(mapping)
    try:
        if skind == "raes" and tkind == "raes":
            rep = morphisms.check_raes_morphism(src, dst, f)
            ce = (morphisms.es_preservation_counterexample(src, dst, f,
                                                           bound=bound)
                  if oracle and rep.ok else None)
        elif skind == "aes" and tkind == "aes":
            rep = morphisms.check_aes_morphism(src, dst, f)
            ce = None
        elif isinstance(src, Racn) and isinstance(dst, Racn):
            rep = morphisms.check_racn_morphism(src, dst, f)
            ce = (morphisms.net_preservation_counterexample(src, dst, f,
                                                            bound=bound)
                  if oracle and rep.ok else None)
        elif skind in serial.NET_KINDS and tkind in serial.NET_KINDS:
            rep = morphisms.check_acn_morphism(src, dst, f)
            ce = (morphisms.net_preservation_counterexample(src, dst, f,
                                                            bound=bound)
                  if oracle and rep.ok else None)
        else:
            raise click.UsageError(
                f"cannot compare kinds {skind!r} and {tkind!r}")
    except MalformedModel as exc:
        raise click.UsageError(str(exc))
    except (NotApplicable, BoundExceeded) as exc:
        _semantic_failure(exc)
    out = rep.to_json()
    if oracle:
        out["counterexample"] = list(ce) if ce else None
    _emit(out)
    if not rep.ok or ce:
        sys.exit(1)


@main.command()
@click.argument("left")
@click.argument("right")
@click.option("--inj0", type=click.Path(), default=None,
              help="Write the first injection morphism here.")
@click.option("--inj1", type=click.Path(), default=None,
              help="Write the second injection morphism here.")
def coproduct(left, right, inj0, inj1):
    """Coproduct of two raes or two racn files (written to stdout)."""
    lk, lo = _load_model(left)
    rk, ro = _load_model(right)
    if lk == rk == "raes":
        cop, i0, i1 = es.raes_coproduct(lo, ro)
    elif lk == rk == "racn":
        cop, i0, i1 = racn.racn_coproduct(lo, ro)
    else:
        raise click.UsageError("coproduct needs two raes or two racn files")
    _emit(serial.model_to_json(cop))
    for path, m in ((inj0, i0), (inj1, i1)):
        if path:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(serial.dumps(m.to_json()))


@main.command()
@click.argument("model")
def dot(model):
    """Render a net as DOT."""
    kind, obj = _load_model(model)
    if kind not in serial.NET_KINDS:
        raise click.UsageError("dot works on nets")
    click.echo(serial.net_to_dot(obj), nl=False)


if __name__ == "__main__":
    main()
