"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import json
import sys

import click

from . import engine
from . import match as matching
from . import cluster as clustering
from .config import Config
from .ontology import (InstanceStore, StoreFormatError, dump_json,
                       export_triples, load_store, save_store, store_to_doc,
                       validate_store)


def _load_config(path: str | None) -> Config:
    if path is None:
        return Config()
    with open(path, encoding="utf-8") as fh:
        return Config.from_doc(json.load(fh))


def _load(path: str) -> InstanceStore:
    try:
        return load_store(path)
    except StoreFormatError as exc:
        click.echo(f"store format error: {exc}", err=True)
        sys.exit(2)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"cannot read store: {exc}", err=True)
        sys.exit(2)


def _emit(doc, out: str | None):
    text = dump_json(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None, help="Config JSON file.")
@click.pass_context
def main(ctx, config_path):
    """Semantic internship assignment engine."""
    ctx.obj = _load_config(config_path)


@main.command()
@click.argument("store_path", type=click.Path(exists=True))
def validate(store_path):
    """Validate a store file; exit 1 if violations exist."""
    report = validate_store(_load(store_path))
    _emit({"report": [list(r) for r in report]}, None)
    if report:
        sys.exit(1)


@main.command()
@click.argument("store_path", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None,
              help="Write annotated store here (default: overwrite input).")
@click.option("--log", "log_path", type=click.Path(), default=None,
              help="Write JSON-lines annotation log.")
def annotate(store_path, out, log_path):
    """Annotate every mission that has raw text."""
    store = _load(store_path)
    annotated, log = engine.annotate_all(store)
    save_store(annotated, out or store_path)
    if log_path:
        with open(log_path, "w", encoding="utf-8") as fh:
            for entry in log:
                fh.write(json.dumps(entry, sort_keys=True, ensure_ascii=False)
                         + "\n")
    click.echo(f"annotated {len(log)} mission(s)")


@main.command()
@click.argument("store_path", type=click.Path(exists=True))
@click.option("--k", type=int, default=None, help="Fixed cluster count.")
@click.option("--k-auto", "k_auto", is_flag=True,
              help="Choose k by silhouette over [kMin, kMax] from config.")
@click.option("--seed", type=int, default=None, help="Clustering seed.")
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def cluster(config: Config, store_path, k, k_auto, seed, out):
    """Cluster annotated missions."""
    if k is not None and k_auto:
        click.echo("use either --k or --k-auto", err=True)
        sys.exit(2)
    store = _load(store_path)
    if k is not None:
        config.clusterK = k
    elif k_auto:
        config.clusterK = None
    if seed is not None:
        config.clusterSeed = seed
    try:
        model = engine.build_cluster_model(store, config)
    except (engine.PipelineError, clustering.ClusteringError) as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    _emit(model.to_doc(), out)


@main.command()
@click.argument("store_path", type=click.Path(exists=True))
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def kb(config: Config, store_path, seed, out):
    """Build the past-success knowledge base."""
    store = _load(store_path)
    if seed is not None:
        config.clusterSeed = seed
    model = engine.build_cluster_model(store, config)
    knowledge = matching.build_knowledge_base(store, model)
    _emit(knowledge.to_doc(), out)


@main.command("match")
@click.argument("store_path", type=click.Path(exists=True))
@click.option("--mission", "mission_id", default=None)
@click.option("--student", "student_id", default=None)
@click.option("--limit", type=int, default=None)
@click.option("--seed", type=int, default=None, help="Clustering seed.")
@click.option("--locale", type=click.Choice(["en", "fr"]), default="en")
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def match_cmd(config: Config, store_path, mission_id, student_id, limit, seed,
              locale, out):
    """Ranked candidates for a mission, or missions for a student."""
    if (mission_id is None) == (student_id is None):
        click.echo("use exactly one of --mission / --student", err=True)
        sys.exit(2)
    store = _load(store_path)
    if seed is not None:
        config.clusterSeed = seed
    model = engine.build_cluster_model(store, config)
    knowledge = matching.build_knowledge_base(store, model)
    if mission_id is not None:
        mission = store.mission(mission_id)
        if mission is None:
            click.echo(f"unknown mission {mission_id}", err=True)
            sys.exit(1)
        ranked = matching.rank_candidates(
            mission, sorted(store.students, key=lambda s: s.id), knowledge,
            store, config.matchWeights)
        doc = engine.ranked_list_doc(ranked, store, knowledge, config, limit,
                                     locale)
    else:
        student = store.student(student_id)
        if student is None:
            click.echo(f"unknown student {student_id}", err=True)
            sys.exit(1)
        ranking = matching.rank_missions(student,
                                         engine.annotated_missions(store),
                                         knowledge, store, config.matchWeights)
        doc = engine.mission_ranking_doc(ranking, store, knowledge, config,
                                         limit, locale)
    _emit(doc, out)


@main.command("assign")
@click.argument("store_path", type=click.Path(exists=True))
@click.option("--seed", type=int, default=None, help="GA seed.")
@click.option("--pop", type=int, default=None, help="GA population size.")
@click.option("--gens", type=int, default=None, help="GA generation limit.")
@click.option("--weights", default=None,
              help="Match weights alpha,beta,gamma (e.g. 0.6,0.2,0.2).")
@click.option("--cluster-seed", type=int, default=None)
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def assign_cmd(config: Config, store_path, seed, pop, gens, weights,
               cluster_seed, out):
    """Run the full pipeline and compute a balanced assignment plan."""
    store = _load(store_path)
    if cluster_seed is not None:
        config.clusterSeed = cluster_seed
    if weights is not None:
        try:
            alpha, beta, gamma = (float(x) for x in weights.split(","))
        except ValueError:
            click.echo("--weights expects alpha,beta,gamma", err=True)
            sys.exit(2)
        config.matchWeights = (alpha, beta, gamma)
    ga = config.ga
    if seed is not None:
        ga.seed = seed
    if pop is not None:
        ga.populationSize = pop
    if gens is not None:
        ga.generations = gens
    try:
        model = engine.build_cluster_model(store, config)
    except engine.PipelineError as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    knowledge = matching.build_knowledge_base(store, model)
    rankings = engine.build_rankings(store, knowledge, config)
    doc = engine.run_assignment(store, knowledge, rankings, config, ga)
    _emit(doc, out)


@main.command("export-triples")
@click.argument("store_path", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def export_triples_cmd(store_path, out):
    """Export the store as sorted tab-separated triples."""
    store = _load(store_path)
    report = validate_store(store)
    if report:
        click.echo("store invalid:", err=True)
        for entity, violation in report:
            click.echo(f"  {entity}: {violation}", err=True)
        sys.exit(1)
    text = export_triples(store)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("store_path", type=click.Path(exists=True), required=False)
@click.option("--listen", default=None, help="host:port")
@click.option("--rounds-dir", default=None, type=click.Path())
@click.pass_obj
def serve(config: Config, store_path, listen, rounds_dir):
    """Run the HTTP service."""
    import uvicorn

    from .api import create_app

    store = _load(store_path) if store_path else InstanceStore()
    app = create_app(config=config, store=store,
                     rounds_dir=rounds_dir or config.roundsDir)
    host, _, port = (listen or config.listen).partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))


@main.command("export-store")
@click.argument("store_path", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def export_store_cmd(store_path, out):
    """Re-emit a store file in canonical form."""
    _emit(store_to_doc(_load(store_path)), out)


if __name__ == "__main__":
    main()
