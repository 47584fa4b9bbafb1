#!/usr/bin/env python3
# Copyright 2024 The wyckoff_detector Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Wyckoff phase detector main entry point.
"""
import logging
import sys

import click

from wyckoff_detector.cli.evaluate import eval_command
from wyckoff_detector.cli.gen import gen_command
from wyckoff_detector.cli.gradcheck import gradcheck_command
from wyckoff_detector.cli.plot import plot_command
from wyckoff_detector.cli.scan import scan_command
from wyckoff_detector.cli.train import train_command
from wyckoff_detector.config import config_to_string, set_config
from wyckoff_detector.constants import EXIT_DATA, EXIT_OK, EXIT_USAGE
from wyckoff_detector.errors import WyckoffError
from wyckoff_detector.utils import set_program_log_level

logging.basicConfig()
LOG = logging.getLogger(__name__)

PHASE_CHOICE = click.Choice(["tr", "st"], case_sensitive=False)


class ExitCodeGroup(click.Group):
    """A click group that maps failures onto this program's exit codes:
    1 usage, 2 data, 3 numeric."""

    def main(self, *args, **kwargs):
        kwargs["standalone_mode"] = False
        try:
            result = super().main(*args, **kwargs)
        except click.UsageError as error:
            error.show()
            sys.exit(EXIT_USAGE)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except click.ClickException as error:
            error.show()
            sys.exit(EXIT_DATA)
        except WyckoffError as error:
            LOG.debug("Command failed.", exc_info=True)
            click.echo("Error: {}".format(error), err=True)
            sys.exit(error.exit_code)
        except UnicodeDecodeError as error:
            click.echo("Error: input is not valid UTF-8: {}".format(error),
                       err=True)
            sys.exit(EXIT_DATA)
        except ValueError as error:
            LOG.debug("Invalid argument.", exc_info=True)
            click.echo("Error: {}".format(error), err=True)
            sys.exit(EXIT_USAGE)
        except OSError as error:
            click.echo("Error: {}".format(error), err=True)
            sys.exit(EXIT_DATA)
        sys.exit(result if isinstance(result, int) else EXIT_OK)


@click.group(cls=ExitCodeGroup)
@click.option("-c",
              "--config_file",
              required=False,
              help="Path to the configuration file to use.",
              default="./default.cfg")
@click.option("-l",
              "--log_level",
              required=False,
              help="Set log level.",
              default=None)
@click.pass_context
def main(context: click.Context, **kwargs) -> None:
    """
    Wyckoff accumulation phase detector. Generates synthetic trading range
    and secondary test patterns, trains an LSTM classifier on them, and
    scans price files for matching swing structures.
    """
    context.obj = kwargs


def init(config_file: str = "./default.cfg", log_level: str = None) -> None:
    """
    Top-level initialization.
    Keyword Arguments:
        config_file {str} -- Path to config file. (default: {"./default.cfg"})
        log_level {str} -- Desired log level. (default: {None})
    """
    config = set_config(config_file)
    if config.sections():
        print("Configuration parsed: \n{}".format(config_to_string(config)),
              file=sys.stderr)
    set_program_log_level(log_level, config)


@main.command(name="gen")
@click.option("--phase", type=PHASE_CHOICE, required=True,
              help="Pattern phase to generate.")
@click.option("--valid", "n_valid", type=click.IntRange(min=0), required=True,
              help="Number of valid-branch samples.")
@click.option("--invalid", "n_invalid", type=click.IntRange(min=0),
              required=True, help="Number of invalid-branch samples.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0,
              show_default=True, help="Generation seed.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              required=True, help="Destination CSV.")
@click.option("--sigma", type=float, default=None,
              help="ST retest spread around the prior low.")
@click.option("--fillers", type=click.IntRange(min=0), default=None,
              help="ST filler values per gap.")
@click.option("--up-fillers", type=click.IntRange(min=0), default=None,
              help="ST up-filler values per swing.")
@click.pass_context
def cmd_gen(context: click.Context, **kwargs) -> None:
    """
    Generate a labeled TR or ST pattern dataset. Valid-branch samples come
    first, then invalid-branch samples; the seed fully determines the file.
    """
    init(**context.obj)
    return gen_command(**kwargs)


@main.command(name="train")
@click.option("--data", "data_path", type=click.Path(dir_okay=False),
              required=True, help="Dataset CSV from gen.")
@click.option("--model-out", type=click.Path(dir_okay=False), required=True,
              help="Checkpoint destination.")
@click.option("--history-out", type=click.Path(dir_okay=False), default=None,
              help="Per-epoch history CSV destination.")
@click.option("--epochs", type=click.IntRange(min=1), default=None)
@click.option("--lr", type=float, default=None, help="Adam learning rate.")
@click.option("--batch", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=click.IntRange(min=0), default=0,
              show_default=True, help="Split and shuffle seed.")
@click.option("--init-seed", type=click.IntRange(min=0), default=None,
              help="Initialization seed (defaults to --seed).")
@click.option("--hidden", type=click.IntRange(min=1), default=None,
              help="LSTM cell width.")
@click.option("--kernel-step-scale", type=float, default=None,
              help="Adam step multiplier for the input kernels.")
@click.option("--test-fraction", type=float, default=None)
@click.option("--sequential", is_flag=True,
              help="Feed one value per time step.")
@click.option("--deterministic", is_flag=True,
              help="Measure on a single thread.")
@click.pass_context
def cmd_train(context: click.Context, **kwargs) -> None:
    """
    Train a classifier on a dataset. Prints the final test loss and
    accuracy.
    """
    init(**context.obj)
    return train_command(**kwargs)


@main.command(name="eval")
@click.option("--model", "model_path", type=click.Path(dir_okay=False),
              required=True, help="Checkpoint from train.")
@click.option("--data", "data_path", type=click.Path(dir_okay=False),
              required=True, help="Dataset CSV.")
@click.option("--roc-out", type=click.Path(dir_okay=False), default=None,
              help="ROC curve CSV destination.")
@click.option("--threshold", type=click.FloatRange(0.0, 1.0), default=0.5,
              show_default=True)
@click.option("--deterministic", is_flag=True,
              help="Score on a single thread.")
@click.pass_context
def cmd_eval(context: click.Context, **kwargs) -> None:
    """
    Evaluate a saved model on a dataset: loss, accuracy, AUC and confusion
    counts.
    """
    init(**context.obj)
    return eval_command(**kwargs)


@main.command(name="scan")
@click.option("--ohlc", "ohlc_path", type=click.Path(dir_okay=False),
              required=True, help="CSV with timestamp,open,high,low,close.")
@click.option("--model", "model_path", type=click.Path(dir_okay=False),
              required=True, help="Checkpoint from train.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              required=True, help="Destination CSV.")
@click.option("-k", "--lookback", "k", type=click.IntRange(min=1),
              default=None, help="Swing lookback bars on each side.")
@click.option("--phase", type=PHASE_CHOICE, default="tr", show_default=True,
              help="Phase to scan for; st is experimental.")
@click.option("--threshold", type=click.FloatRange(0.0, 1.0), default=None)
@click.option("--deterministic", is_flag=True,
              help="Score on a single thread.")
@click.pass_context
def cmd_scan(context: click.Context, **kwargs) -> None:
    """
    Scan an OHLC price file: extract swings from the close, score every
    window of consecutive swings, and write one row per window.
    """
    init(**context.obj)
    return scan_command(**kwargs)


@main.command(name="plot")
@click.option("--history", "histories", type=click.Path(dir_okay=False),
              multiple=True, help="History CSV from train; repeatable.")
@click.option("--roc", "rocs", type=click.Path(dir_okay=False), multiple=True,
              help="ROC CSV from eval; repeatable.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".",
              show_default=True, help="Directory for the PNG figures.")
@click.pass_context
def cmd_plot(context: click.Context, **kwargs) -> None:
    """
    Draw accuracy and loss by epoch from history files, and one combined
    ROC figure from ROC files.
    """
    init(**context.obj)
    return plot_command(**kwargs)


@main.command(name="gradcheck")
@click.option("--trials", type=click.IntRange(min=1), default=20,
              show_default=True)
@click.option("--hidden", "hiddens", type=click.IntRange(min=1),
              multiple=True, default=(2, 4, 8), show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0,
              show_default=True)
@click.option("--delta", type=click.FloatRange(1e-7, 1e-3), default=1e-5,
              show_default=True)
@click.option("--sequential", is_flag=True,
              help="Check the one-value-per-step layout.")
@click.option("--phase", type=PHASE_CHOICE, default=None,
              help="Check only this phase (default: both).")
@click.pass_context
def cmd_gradcheck(context: click.Context, **kwargs) -> None:
    """
    Verify backpropagation against central finite differences on random
    small models.
    """
    init(**context.obj)
    return gradcheck_command(**kwargs)


def run() -> None:
    """Console script entry point."""
    main()  # pylint: disable=no-value-for-parameter


if __name__ == "__main__":
    run()
