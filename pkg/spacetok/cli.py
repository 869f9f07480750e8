#
# Copyright (C) 2026 The spacetok Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""The spacetok command line.

    spacetok train corpus.txt -o model.txt --algorithm unigram --mode isolated
    spacetok tokenize model.txt input.txt --no-spaces
    spacetok evaluate model.txt ladec=ladec.csv morpholex=morpholex.tsv
    spacetok analyze bpe.txt bpe-isolated.txt
    spacetok segment-demo unigram-isolated.txt thisisasentencethatneedstobesegmented
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Optional

import click

from spacetok.bpe import RewriteStrategy, train_bpe
from spacetok.config import Algorithm, release
from spacetok.datasets import DatasetFormat, read_dataset, write_normalized
from spacetok.errors import IO_EXIT_CODE, ConfigError, SpacetokError
from spacetok.model import SubwordModel
from spacetok.modelfile import load_model, save_model
from spacetok.morphoeval import (
    AffixSubset,
    evaluate,
    filter_affix_subset,
    tokenize_word,
)
from spacetok.paths import resolve_input
from spacetok.printers import StdoutPrinter
from spacetok.report import (
    DatasetResult,
    PairAnalysis,
    Report,
    TrainingReport,
    VocabAnalysis,
    write_json,
)
from spacetok.runconfig import RunConfig
from spacetok.textnorm import (
    Corpus,
    SpaceMode,
    UnicodeNormalization,
    decode_line,
    pretokenize_line,
    read_corpus,
)
from spacetok.timer import Timer
from spacetok.unigram import train_unigram
from spacetok.vocabstats import (
    AffixLexicon,
    affix_counts,
    converse_overlap,
    deduplicate,
    degeneracy,
    load_lexicon,
    overlap,
    sequence_length,
    unique_elements,
)
from spacetok.wordpiece import train_wordpiece
from spacetok.workqueue import BaseWorkQueue, make_workqueue

STORED_MODES = [SpaceMode.ATTACHED.value, SpaceMode.ISOLATED.value]


def logger() -> logging.Logger:
    """Returns the module logger."""
    return logging.getLogger(__name__)


class SpacetokGroup(click.Group):
    """Turns spacetok errors into messages and distinct exit codes."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except SpacetokError as ex:
            click.echo(f"error: {ex}", err=True)
            ctx.exit(ex.exit_code)
        except OSError as ex:
            click.echo(f"error: {ex}", err=True)
            ctx.exit(IO_EXIT_CODE)


@click.group(cls=SpacetokGroup)
@click.version_option(release)
@click.option(
    "-v",
    "--verbose",
    count=True,
    default=0,
    help="Increase verbosity (repeatable).",
)
def cli(verbose: int) -> None:
    """Trains, applies and evaluates subword tokenisers."""
    log_levels = [logging.WARNING, logging.INFO, logging.DEBUG]
    logging.basicConfig(level=log_levels[min(verbose, len(log_levels) - 1)])


def train_model(
    corpus: Corpus, config: RunConfig, workqueue: BaseWorkQueue
) -> SubwordModel:
    if config.algorithm is Algorithm.BPE:
        return train_bpe(
            corpus,
            config.vocab_size,
            config.mode,
            config.norm,
            config.bpe_strategy,
            workqueue,
        )
    if config.algorithm is Algorithm.WORDPIECE:
        return train_wordpiece(
            corpus,
            config.vocab_size,
            config.mode,
            config.norm,
            config.bpe_strategy,
            workqueue,
        )
    return train_unigram(corpus, config.unigram, config.mode, config.norm, workqueue)


def run_training(config: RunConfig) -> TrainingReport:
    """Trains and saves a model as configured. Returns the training report."""
    if config.corpus is None or config.output is None:
        raise ConfigError("A corpus and an output path are required.")
    norm = config.norm
    with Timer("training") as timer:
        corpus = read_corpus(resolve_input(config.corpus), config.mode, norm)
        with make_workqueue(config.threads) as workqueue:
            model = train_model(corpus, config, workqueue)
    save_model(model, config.output)
    assert timer.seconds is not None
    report = TrainingReport(
        algorithm=config.algorithm.value,
        mode=config.mode.value,
        requested_vocab_size=config.vocab_size,
        vocab_size=model.vocab_size,
        entries=model.num_entries,
        sentences=len(corpus),
        pretokens=corpus.num_pretokens,
        characters=corpus.num_characters,
        seconds=round(timer.seconds, 3),
    )
    report_path = config.report
    if report_path is None:
        report_path = config.output.with_name(config.output.name + ".report.json")
    write_json(report.as_dict(), report_path)
    return report


@cli.command()
@click.argument("corpus", required=False, type=click.Path(path_type=Path))
@click.option("-o", "--output", type=click.Path(path_type=Path), help="Model file.")
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path),
    help="JSON run configuration; flags override it.",
)
@click.option("--algorithm", type=click.Choice([a.value for a in Algorithm]))
@click.option("--mode", type=click.Choice(STORED_MODES))
@click.option("--vocab-size", type=int, help="Target size, specials included.")
@click.option("--space-symbol", help="Character standing in for spaces.")
@click.option("--nfkc/--no-nfkc", default=None, help="Apply NFKC normalization.")
@click.option(
    "--collapse-whitespace/--keep-whitespace",
    default=None,
    help="Collapse runs of whitespace into one space.",
)
@click.option("--seed-size", type=int, help="Unigram candidate pieces.")
@click.option("--max-piece-length", type=int, help="Longest unigram piece.")
@click.option("--em-iterations", type=int, help="Unigram EM steps per round.")
@click.option("--shrink-factor", type=float, help="Unigram pruning ratio.")
@click.option(
    "--bpe-strategy",
    type=click.Choice([s.value for s in RewriteStrategy]),
    help="Force recounting or incremental updates when merging.",
)
@click.option("--threads", type=int, help="Worker processes.")
@click.option("--report", type=click.Path(path_type=Path), help="JSON report file.")
def train(
    corpus: Optional[Path],
    output: Optional[Path],
    config_path: Optional[Path],
    algorithm: Optional[str],
    mode: Optional[str],
    vocab_size: Optional[int],
    space_symbol: Optional[str],
    nfkc: Optional[bool],
    collapse_whitespace: Optional[bool],
    seed_size: Optional[int],
    max_piece_length: Optional[int],
    em_iterations: Optional[int],
    shrink_factor: Optional[float],
    bpe_strategy: Optional[str],
    threads: Optional[int],
    report: Optional[Path],
) -> None:
    """Trains a tokeniser on CORPUS, one sentence per line."""
    config = RunConfig.load(config_path) if config_path is not None else RunConfig()
    normalization = None
    if nfkc is not None:
        normalization = (
            UnicodeNormalization.NFKC if nfkc else UnicodeNormalization.NONE
        )
    config = config.with_overrides(
        corpus=corpus,
        output=output,
        report=report,
        algorithm=Algorithm(algorithm) if algorithm else None,
        mode=SpaceMode(mode) if mode else None,
        vocab_size=vocab_size,
        space_symbol=space_symbol,
        unicode_normalization=normalization,
        collapse_whitespace=collapse_whitespace,
        seed_size=seed_size,
        max_piece_length=max_piece_length,
        em_iterations=em_iterations,
        shrink_factor=shrink_factor,
        bpe_strategy=RewriteStrategy(bpe_strategy) if bpe_strategy else None,
        threads=threads,
    )
    StdoutPrinter().print_training(run_training(config))


@cli.command()
@click.argument("model_path", type=click.Path(path_type=Path))
@click.argument("input_path", default="-")
@click.option("--ids", is_flag=True, help="Print token IDs instead of tokens.")
@click.option("--no-spaces", is_flag=True, help="Drop standalone space tokens.")
@click.option(
    "--algorithm",
    type=click.Choice([a.value for a in Algorithm]),
    help="Fail unless the model uses this algorithm.",
)
def tokenize(
    model_path: Path,
    input_path: str,
    ids: bool,
    no_spaces: bool,
    algorithm: Optional[str],
) -> None:
    """Tokenizes INPUT_PATH (default stdin) line by line."""
    model = load_model(model_path, Algorithm(algorithm) if algorithm else None)
    mode = SpaceMode.ISOLATED_NO_SPACES if no_spaces else None
    with click.open_file(input_path, "rb") as input_file:
        for number, raw in enumerate(input_file, start=1):
            text = decode_line(raw, number)
            tokens = model.tokenize_in_mode(text, mode)
            if ids:
                click.echo(",".join(str(i) for i in tokens.ids))
            else:
                click.echo(" ".join(tokens.tokens))


def parse_dataset_arg(
    arg: str, default_format: DatasetFormat
) -> tuple[DatasetFormat, Path]:
    """Splits FORMAT=PATH; a bare PATH uses default_format.

    >>> fmt, path = parse_dataset_arg("ladec=ladec.csv", DatasetFormat.CUSTOM)
    >>> fmt.value, str(path)
    ('ladec', 'ladec.csv')
    """
    name, sep, path = arg.partition("=")
    if sep and name.lower() in {f.value for f in DatasetFormat}:
        return DatasetFormat.parse(name), Path(path)
    return default_format, Path(arg)


def _optional_lexicon(path: Optional[Path]) -> Optional[AffixLexicon]:
    if path is not None and not path.exists():
        logger().warning("Lexicon %s not found; affix counts omitted", path)
        return None
    return load_lexicon(path)


@cli.command(name="evaluate")
@click.argument("model_path", type=click.Path(path_type=Path))
@click.argument("datasets", nargs=-1, required=True)
@click.option(
    "--format",
    "default_format",
    type=click.Choice([f.value for f in DatasetFormat]),
    default=DatasetFormat.CUSTOM.value,
    show_default=True,
    help="Format of datasets given without a FORMAT= prefix.",
)
@click.option(
    "--subset",
    type=click.Choice([s.value for s in AffixSubset]),
    help="Only words with prefixes (or suffixes) and no affix of the other kind.",
)
@click.option(
    "--lexicon",
    type=click.Path(path_type=Path),
    help="Affix lexicon for --subset on unannotated datasets.",
)
@click.option("--macro", is_flag=True, help="Average per-word scores.")
@click.option("--lowercase", is_flag=True, help="Lowercase dataset words.")
@click.option("--keep-duplicates", is_flag=True, help="Keep repeated words.")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--report", type=click.Path(path_type=Path), help="JSON report file.")
def evaluate_command(
    model_path: Path,
    datasets: Sequence[str],
    default_format: str,
    subset: Optional[str],
    lexicon: Optional[Path],
    macro: bool,
    lowercase: bool,
    keep_duplicates: bool,
    threads: int,
    report: Optional[Path],
) -> None:
    """Scores a model's boundaries against gold segmentations.

    Each DATASET is a path, optionally prefixed with its format as
    FORMAT=PATH.
    """
    model = load_model(model_path)
    affixes = load_lexicon(lexicon) if subset is not None else None
    results = Report(str(model_path))
    with make_workqueue(threads) as workqueue:
        for arg in datasets:
            fmt, path = parse_dataset_arg(arg, DatasetFormat(default_format))
            records, stats = read_dataset(
                resolve_input(path),
                fmt,
                not keep_duplicates,
                lowercase,
                model.space_symbol,
            )
            if subset is not None:
                records = filter_affix_subset(records, affixes, subset)
                logger().info("%d records in the %s subset", len(records), subset)
            scores = evaluate(model, records, macro, workqueue)
            results.add_result(
                DatasetResult(path.name, fmt.value, stats, scores, subset)
            )
    StdoutPrinter().print_evaluation(results)
    if report is not None:
        write_json(results.as_dict(), report)


def analyze_vocab(
    name: str,
    model: SubwordModel,
    lexicon: Optional[AffixLexicon],
    corpus: Optional[Path] = None,
) -> VocabAnalysis:
    vocab = model.vocab
    length = None
    if corpus is not None:
        # Each model pretokenizes the corpus in its own space mode.
        sentences = read_corpus(corpus, model.space_mode, model.norm).sentences
        length = sequence_length(
            (model.tokenize_pretokens(s).surfaces for s in sentences),
            model.space_symbol,
        )
    degenerate = degeneracy(vocab, model.space_symbol)
    prefixes = suffixes = None
    if lexicon is not None:
        prefixes, suffixes = affix_counts(vocab, lexicon, model.space_symbol)
    return VocabAnalysis(
        model=name,
        algorithm=model.algorithm.value,
        mode=model.space_mode.value,
        vocab_size=model.vocab_size,
        deduplicated_size=len(deduplicate(vocab, model.space_symbol)),
        degeneracy=degenerate.ratio,
        duplicates=len(degenerate.duplicates),
        prefixes=prefixes,
        suffixes=suffixes,
        sequence_length=length,
    )


def analyze_pair(
    default: tuple[str, SubwordModel], modified: tuple[str, SubwordModel]
) -> PairAnalysis:
    symbol = default[1].space_symbol
    default_vocab = default[1].vocab
    modified_vocab = modified[1].vocab
    return PairAnalysis(
        default_model=default[0],
        modified_model=modified[0],
        overlap=overlap(default_vocab, modified_vocab, symbol),
        converse_overlap=converse_overlap(default_vocab, modified_vocab, symbol),
        unique_default=unique_elements(default_vocab, modified_vocab, symbol),
        unique_modified=unique_elements(modified_vocab, default_vocab, symbol),
    )


@cli.command()
@click.argument(
    "model_paths", nargs=-1, required=True, type=click.Path(path_type=Path)
)
@click.option(
    "--lexicon",
    type=click.Path(path_type=Path),
    help="Affix lexicon; defaults to the bundled English list.",
)
@click.option(
    "--corpus",
    type=click.Path(path_type=Path),
    help="Also count the tokens each model spends on this corpus.",
)
@click.option("--report", type=click.Path(path_type=Path), help="JSON report file.")
def analyze(
    model_paths: Sequence[Path],
    lexicon: Optional[Path],
    corpus: Optional[Path],
    report: Optional[Path],
) -> None:
    """Reports vocabulary size, degeneracy, affixes and attached/isolated overlap.

    Overlap is reported when exactly two models are given, one attached and
    one isolated.
    With --corpus, each model also reports its tokens per sentence there.
    """
    models = [(str(path), load_model(path)) for path in model_paths]
    affixes = _optional_lexicon(lexicon)
    corpus_path = resolve_input(corpus) if corpus is not None else None
    rows = [
        analyze_vocab(name, model, affixes, corpus_path) for name, model in models
    ]
    pair: Optional[PairAnalysis] = None
    if len(models) == 2:
        attached = [m for m in models if not m[1].space_mode.isolated]
        isolated = [m for m in models if m[1].space_mode.isolated]
        if len(attached) == 1 and len(isolated) == 1:
            pair = analyze_pair(attached[0], isolated[0])
        else:
            logger().warning("Overlap needs one attached and one isolated model")
    StdoutPrinter().print_analysis(rows, pair)
    if report is not None:
        write_json(
            {
                "models": [row.as_dict() for row in rows],
                "pair": pair.as_dict() if pair is not None else None,
            },
            report,
        )


@cli.command(name="segment-demo")
@click.argument("model_path", type=click.Path(path_type=Path))
@click.argument("text", default="")
def segment_demo(model_path: Path, text: str) -> None:
    """Segments unspaced TEXT with an isolated-mode unigram model."""
    model = load_model(model_path, Algorithm.UNIGRAM)
    if not model.space_mode.isolated:
        raise ConfigError(
            "segment-demo needs an isolated-mode model; attached pieces rely on "
            "the spaces this text does not have."
        )
    tokens = model.tokenize_pretokens(
        pretokenize_line(text, SpaceMode.ISOLATED, model.norm)
    )
    click.echo(" ".join(tokens.tokens))


@cli.command()
@click.argument(
    "model_paths", nargs=-1, required=True, type=click.Path(path_type=Path)
)
@click.option(
    "-w", "--word", "words", multiple=True, required=True, help="Word to tokenize."
)
def compare(model_paths: Sequence[Path], words: Sequence[str]) -> None:
    """Shows how each model tokenizes each word on its own."""
    models = [load_model(path) for path in model_paths]
    rows = [
        (word, [" ".join(tokenize_word(model, word).tokens) for model in models])
        for word in words
    ]
    StdoutPrinter().print_comparison([path.name for path in model_paths], rows)


@cli.command()
@click.argument("raw_path", type=click.Path(path_type=Path))
@click.argument("dataset_format", type=click.Choice([f.value for f in DatasetFormat]))
@click.argument("output", type=click.Path(path_type=Path))
@click.option("--lowercase", is_flag=True, help="Lowercase words and morphemes.")
@click.option("--keep-duplicates", is_flag=True, help="Keep repeated words.")
def convert(
    raw_path: Path,
    dataset_format: str,
    output: Path,
    lowercase: bool,
    keep_duplicates: bool,
) -> None:
    """Converts a published dataset layout to word<TAB>morphemes."""
    records, stats = read_dataset(
        resolve_input(raw_path), dataset_format, not keep_duplicates, lowercase
    )
    write_normalized(records, output)
    click.echo(
        f"kept {stats.kept} of {stats.rows} rows "
        f"(non-concatenative {stats.non_concatenative}, "
        f"multi-parse {stats.multi_parse}, malformed {stats.malformed}, "
        f"whitespace {stats.whitespace}, duplicates {stats.duplicates})"
    )


def main() -> None:
    cli()  # pylint: disable=no-value-for-parameter


if __name__ == "__main__":
    main()
