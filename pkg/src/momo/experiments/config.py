"""XML experiment configuration: strict parsing, validation, serialization.

The accepted tree mirrors the classic single-process experiment layout::

    experiment[@id]
      process[@algorithm-type]            ea | pso
        mo-strategy[@type]                strategy registry id; param children
        evaluator[@type][@mode]           problem registry id; sequential | parallel
          objectives?                     optional declaration, checked against
            objective[@type][@maximize]   the problem's objective senses
        recombinator[@type][@rec-prob]?   operator registry id; param children
        mutator[@type][@mut-prob]?        operator registry id; param children
        population-size
        max-of-generations
        max-of-evaluations?
        rand-gen-factory[@seed] | rand-gen-factory[@multi] / rand-gen-factory[@seed]*
        listener[@type]*                  pareto_front | comparison

Unknown elements are rejected with their full path.  All referenced registry
ids and numeric ranges are validated here, before anything is executed.
"""

from __future__ import annotations

import hashlib
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from xml.parsers import expat

from ..errors import ConfigurationError
from ..indicators.metrics import UNARY_IDS
from ..problems import make_problem
from ..strategies import ENGINES, strategy_ids, strategy_params
from ..variation import OPERATORS

_LISTENER_TYPES = ("pareto_front", "comparison")


@dataclass
class ListenerSpec:
    type: str
    title: str
    frequency: int | None = None
    indicators: list[str] = field(default_factory=list)
    number_of_algorithms: int | None = None
    number_of_executions: int | None = None
    reference_point: list[float] | None = None


@dataclass
class ExperimentConfig:
    config_id: str
    algorithm: str
    strategy: str
    strategy_params: dict
    problem: str
    evaluator_mode: str
    objectives: list[tuple[str, bool]] | None
    recombinator: str | None
    rec_prob: float
    recombinator_params: dict
    mutator: str | None
    mut_prob: float
    mutator_params: dict
    population_size: int
    max_generations: int
    max_evaluations: int | None
    seeds: list[int]
    listeners: list[ListenerSpec]

    @property
    def title(self) -> str:
        return self.listeners[0].title if self.listeners else "experiment"

    def hash(self) -> str:
        """Stable digest of the semantic content (id excluded)."""
        canon = serialize_config(self, include_id=False)
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


class _Elem(ET.Element):
    """Element subclass so source line numbers can be stashed per node."""


def _parse_with_lines(path: Path):
    builder = ET.TreeBuilder(element_factory=_Elem)
    parser = expat.ParserCreate()

    def start(tag, attrs):
        elem = builder.start(tag, dict(attrs))
        elem._line = parser.CurrentLineNumber

    parser.StartElementHandler = start
    parser.EndElementHandler = builder.end
    parser.CharacterDataHandler = builder.data
    parser.ParseFile(path.open("rb"))
    return builder.close()


def _line(elem) -> str:
    line = getattr(elem, "_line", None)
    return f" (line {line})" if line else ""


def _fail(elem, path: str, message: str):
    raise ConfigurationError(f"{path}: {message}{_line(elem)}")


def _check_children(elem, path: str, allowed: set[str]):
    for child in elem:
        if child.tag not in allowed:
            _fail(child, f"{path}/{child.tag}", "unknown element")


def _require(elem, path: str, tag: str):
    found = elem.findall(tag)
    if not found:
        _fail(elem, path, f"missing required element '{tag}'")
    if len(found) > 1:
        _fail(found[1], f"{path}/{tag}", "element may appear only once")
    return found[0]


def _attr(elem, path: str, name: str, required: bool = True, default=None):
    value = elem.get(name)
    if value is None:
        if required:
            _fail(elem, path, f"missing required attribute '{name}'")
        return default
    return value


def _number(elem, path: str, text, kind, lo=None, hi=None):
    try:
        value = kind(text)
    except (TypeError, ValueError):
        _fail(elem, path, f"expected a {kind.__name__}, got '{text}'")
    if lo is not None and value < lo:
        _fail(elem, path, f"value {value} below minimum {lo}")
    if hi is not None and value > hi:
        _fail(elem, path, f"value {value} above maximum {hi}")
    return value


def _param_children(elem, path: str, allowed: dict) -> dict:
    """Read child elements as named parameters typed after their defaults."""
    out = {}
    for child in elem:
        key = child.tag.replace("-", "_")
        if key not in allowed:
            _fail(child, f"{path}/{child.tag}", "unknown parameter element")
        default = allowed[key]
        kind = type(default) if default is not None else float
        if kind is bool:
            kind = int
        out[key] = _number(child, f"{path}/{child.tag}", (child.text or "").strip(), kind)
    return out


def parse_config(path) -> ExperimentConfig:
    """Parse and validate one experiment configuration file."""
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"configuration file not found: {path}")
    try:
        root = _parse_with_lines(path)
    except expat.ExpatError as exc:
        raise ConfigurationError(
            f"{path}: malformed XML: {expat.errors.messages[exc.code]} "
            f"(line {exc.lineno})") from exc
    if root.tag != "experiment":
        _fail(root, root.tag, "root element must be 'experiment'")
    config_id = root.get("id") or path.stem
    _check_children(root, "experiment", {"process"})
    process = _require(root, "experiment", "process")
    ppath = "experiment/process"
    algorithm = _attr(process, ppath, "algorithm-type")
    if algorithm not in ("ea", "pso"):
        _fail(process, ppath, f"unknown algorithm-type '{algorithm}' (expected ea or pso)")
    _check_children(process, ppath, {
        "mo-strategy", "evaluator", "recombinator", "mutator", "population-size",
        "max-of-generations", "max-of-evaluations", "rand-gen-factory", "listener",
    })

    strat_el = _require(process, ppath, "mo-strategy")
    spath = f"{ppath}/mo-strategy"
    strategy = _attr(strat_el, spath, "type")
    if strategy not in strategy_ids():
        _fail(strat_el, spath, f"unknown strategy id '{strategy}'")
    if ENGINES[strategy] != algorithm:
        _fail(strat_el, spath,
              f"strategy '{strategy}' requires algorithm-type '{ENGINES[strategy]}'")
    sparams = _param_children(strat_el, spath, strategy_params(strategy))

    eval_el = _require(process, ppath, "evaluator")
    epath = f"{ppath}/evaluator"
    problem = _attr(eval_el, epath, "type")
    mode = _attr(eval_el, epath, "mode", required=False, default="sequential")
    if mode not in ("sequential", "parallel"):
        _fail(eval_el, epath, f"unknown evaluator mode '{mode}'")
    try:
        prob = make_problem(problem)
    except ConfigurationError as exc:
        _fail(eval_el, epath, str(exc))
    _check_children(eval_el, epath, {"objectives"})
    objectives = None
    obj_parent = eval_el.find("objectives")
    if obj_parent is not None:
        _check_children(obj_parent, f"{epath}/objectives", {"objective"})
        objectives = []
        for obj in obj_parent.findall("objective"):
            opath = f"{epath}/objectives/objective"
            oid = _attr(obj, opath, "type")
            omax = _attr(obj, opath, "maximize", required=False, default="false")
            if omax not in ("true", "false"):
                _fail(obj, opath, "maximize must be 'true' or 'false'")
            objectives.append((oid, omax == "true"))
        if len(objectives) != prob.m:
            _fail(obj_parent, f"{epath}/objectives",
                  f"problem '{problem}' has {prob.m} objectives, {len(objectives)} declared")
        declared = tuple(mx for _, mx in objectives)
        if declared != prob.sense.maximize:
            _fail(obj_parent, f"{epath}/objectives",
                  f"declared maximize flags {declared} disagree with problem "
                  f"senses {prob.sense.maximize}")

    recombinator, rec_prob, rec_params = None, 0.0, {}
    rec_el = process.find("recombinator")
    if rec_el is not None:
        rpath = f"{ppath}/recombinator"
        recombinator = _attr(rec_el, rpath, "type")
        _validate_operator(rec_el, rpath, recombinator, "crossover")
        rec_prob = _number(rec_el, rpath, _attr(rec_el, rpath, "rec-prob"), float, 0.0, 1.0)
        rec_params = _operator_params(rec_el, rpath, recombinator)
    mutator, mut_prob, mut_params = None, 0.0, {}
    mut_el = process.find("mutator")
    if mut_el is not None:
        mpath = f"{ppath}/mutator"
        mutator = _attr(mut_el, mpath, "type")
        _validate_operator(mut_el, mpath, mutator, "mutation")
        mut_prob = _number(mut_el, mpath, _attr(mut_el, mpath, "mut-prob"), float, 0.0, 1.0)
        mut_params = _operator_params(mut_el, mpath, mutator)
    if algorithm == "ea" and (rec_el is None or mut_el is None):
        _fail(process, ppath, "ea configurations need both recombinator and mutator")
    if algorithm == "pso" and (rec_el is not None or mut_el is not None):
        _fail(process, ppath,
              "pso configurations take no recombinator/mutator; turbulence is a strategy parameter")

    pop_el = _require(process, ppath, "population-size")
    population_size = _number(pop_el, f"{ppath}/population-size",
                              (pop_el.text or "").strip(), int, 1)
    gen_el = _require(process, ppath, "max-of-generations")
    max_generations = _number(gen_el, f"{ppath}/max-of-generations",
                              (gen_el.text or "").strip(), int, 0)
    max_evaluations = None
    ev_el = process.find("max-of-evaluations")
    if ev_el is not None:
        max_evaluations = _number(ev_el, f"{ppath}/max-of-evaluations",
                                  (ev_el.text or "").strip(), int, 1)

    seeds = _parse_seeds(process, ppath)
    listeners = [_parse_listener(el, f"{ppath}/listener") for el in process.findall("listener")]
    titles = {spec.title for spec in listeners}
    if len(titles) > 1:
        _fail(process, ppath, f"listeners must share one report-title, got {sorted(titles)}")
    for spec in listeners:
        if spec.number_of_executions is not None and spec.number_of_executions != len(seeds):
            _fail(process, ppath,
                  f"comparison listener declares {spec.number_of_executions} executions "
                  f"but {len(seeds)} seeds are configured")

    return ExperimentConfig(
        config_id=config_id, algorithm=algorithm, strategy=strategy,
        strategy_params=sparams, problem=problem, evaluator_mode=mode,
        objectives=objectives, recombinator=recombinator, rec_prob=rec_prob,
        recombinator_params=rec_params, mutator=mutator, mut_prob=mut_prob,
        mutator_params=mut_params, population_size=population_size,
        max_generations=max_generations, max_evaluations=max_evaluations,
        seeds=seeds, listeners=listeners,
    )


def _validate_operator(elem, path: str, op_id: str, kind: str):
    if op_id not in OPERATORS:
        _fail(elem, path, f"unknown operator id '{op_id}'")
    if OPERATORS[op_id].kind != kind:
        _fail(elem, path, f"operator '{op_id}' is not a {kind} operator")


def _operator_params(elem, path: str, op_id: str) -> dict:
    allowed = {name: 0.0 for name in OPERATORS[op_id].params}
    return _param_children(elem, path, allowed)


def _parse_seeds(process, ppath: str) -> list[int]:
    factories = process.findall("rand-gen-factory")
    if not factories:
        _fail(process, ppath, "missing required element 'rand-gen-factory'")
    if len(factories) > 1:
        _fail(factories[1], f"{ppath}/rand-gen-factory", "element may appear only once")
    factory = factories[0]
    fpath = f"{ppath}/rand-gen-factory"
    seeds: list[int] = []
    if factory.get("multi") in ("true", "True"):
        _check_children(factory, fpath, {"rand-gen-factory"})
        for sub in factory.findall("rand-gen-factory"):
            seeds.append(_number(sub, f"{fpath}/rand-gen-factory",
                                 _attr(sub, f"{fpath}/rand-gen-factory", "seed"), int, 0))
    else:
        _check_children(factory, fpath, set())
        seeds.append(_number(factory, fpath, _attr(factory, fpath, "seed"), int, 0))
    if not seeds:
        _fail(factory, fpath, "at least one seed is required")
    if len(set(seeds)) != len(seeds):
        _fail(factory, fpath, "seeds must be distinct")
    return seeds


def _parse_listener(elem, path: str) -> ListenerSpec:
    ltype = _attr(elem, path, "type")
    if ltype not in _LISTENER_TYPES:
        _fail(elem, path, f"unknown listener type '{ltype}'")
    allowed = {"report-title"}
    if ltype == "comparison":
        allowed |= {"report-frequency", "number-of-algorithms", "number-of-executions",
                    "indicators", "reference-point"}
    _check_children(elem, path, allowed)
    title_el = _require(elem, path, "report-title")
    title = (title_el.text or "").strip()
    if not title:
        _fail(title_el, f"{path}/report-title", "title must be non-empty")
    spec = ListenerSpec(type=ltype, title=title)
    if ltype == "comparison":
        freq_el = elem.find("report-frequency")
        if freq_el is not None:
            spec.frequency = _number(freq_el, f"{path}/report-frequency",
                                     (freq_el.text or "").strip(), int, 1)
        for tag, attr in (("number-of-algorithms", "number_of_algorithms"),
                          ("number-of-executions", "number_of_executions")):
            el = elem.find(tag)
            if el is not None:
                setattr(spec, attr, _number(el, f"{path}/{tag}",
                                            (el.text or "").strip(), int, 1))
        ind_parent = elem.find("indicators")
        if ind_parent is not None:
            _check_children(ind_parent, f"{path}/indicators", {"indicator"})
            for ind in ind_parent.findall("indicator"):
                ipath = f"{path}/indicators/indicator"
                iid = _attr(ind, ipath, "type")
                if iid not in UNARY_IDS:
                    _fail(ind, ipath,
                          f"unknown or non-unary indicator id '{iid}' "
                          f"(in-run reporting supports {', '.join(UNARY_IDS)})")
                spec.indicators.append(iid)
        if not spec.indicators:
            _fail(elem, path, "comparison listener needs at least one indicator")
        ref_el = elem.find("reference-point")
        if ref_el is not None:
            try:
                spec.reference_point = [float(tok) for tok in (ref_el.text or "").split()]
            except ValueError:
                _fail(ref_el, f"{path}/reference-point", "expected space-separated reals")
    return spec


def serialize_config(config: ExperimentConfig, include_id: bool = True) -> str:
    """Canonical XML rendering; parsing it yields an equal configuration."""
    root = ET.Element("experiment")
    if include_id:
        root.set("id", config.config_id)
    process = ET.SubElement(root, "process", {"algorithm-type": config.algorithm})
    strat = ET.SubElement(process, "mo-strategy", {"type": config.strategy})
    for key in sorted(config.strategy_params):
        ET.SubElement(strat, key.replace("_", "-")).text = _fmt(config.strategy_params[key])
    ev = ET.SubElement(process, "evaluator",
                       {"type": config.problem, "mode": config.evaluator_mode})
    if config.objectives is not None:
        objs = ET.SubElement(ev, "objectives")
        for oid, omax in config.objectives:
            ET.SubElement(objs, "objective",
                          {"type": oid, "maximize": "true" if omax else "false"})
    if config.recombinator:
        rec = ET.SubElement(process, "recombinator",
                            {"type": config.recombinator, "rec-prob": _fmt(config.rec_prob)})
        for key in sorted(config.recombinator_params):
            ET.SubElement(rec, key.replace("_", "-")).text = _fmt(config.recombinator_params[key])
    if config.mutator:
        mut = ET.SubElement(process, "mutator",
                            {"type": config.mutator, "mut-prob": _fmt(config.mut_prob)})
        for key in sorted(config.mutator_params):
            ET.SubElement(mut, key.replace("_", "-")).text = _fmt(config.mutator_params[key])
    ET.SubElement(process, "population-size").text = str(config.population_size)
    ET.SubElement(process, "max-of-generations").text = str(config.max_generations)
    if config.max_evaluations is not None:
        ET.SubElement(process, "max-of-evaluations").text = str(config.max_evaluations)
    factory = ET.SubElement(process, "rand-gen-factory", {"multi": "true"})
    for seed in config.seeds:
        ET.SubElement(factory, "rand-gen-factory", {"seed": str(seed)})
    for spec in config.listeners:
        listener = ET.SubElement(process, "listener", {"type": spec.type})
        ET.SubElement(listener, "report-title").text = spec.title
        if spec.type == "comparison":
            if spec.frequency is not None:
                ET.SubElement(listener, "report-frequency").text = str(spec.frequency)
            if spec.number_of_algorithms is not None:
                ET.SubElement(listener, "number-of-algorithms").text = str(spec.number_of_algorithms)
            if spec.number_of_executions is not None:
                ET.SubElement(listener, "number-of-executions").text = str(spec.number_of_executions)
            inds = ET.SubElement(listener, "indicators")
            for iid in spec.indicators:
                ET.SubElement(inds, "indicator", {"type": iid})
            if spec.reference_point is not None:
                ET.SubElement(listener, "reference-point").text = " ".join(
                    _fmt(v) for v in spec.reference_point)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)
