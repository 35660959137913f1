"""Command-line front end for the resampling pipelines.

Subcommands: ``down``, ``up``, ``demo-sinc``, ``advantage``. Exit codes:
0 success, 2 configuration error, 3 file error, 4 register capacity
error. Every run writes a JSON record next to its outputs with the
parameters needed to reproduce it.
"""

from __future__ import annotations

import functools
import math
import sys
from pathlib import Path

import click
import numpy as np

from .analysis import AdvantageParams, advantage_map, sample_shots
from .codec import Signal, decode_exact, encode, reconstruct_from_shots
from .errors import CapacityError
from .fileio import (
    read_signal,
    write_advantage_csv,
    write_metadata,
    write_signal,
)
from .resample import (
    VARIANTS,
    ResampleParams,
    downsample,
    patch_resample,
    upsample,
)


def _guard(fn):
    """Map pipeline exceptions onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except CapacityError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(4)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)
        except ValueError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _meta_path(output: Path) -> Path:
    return output.with_name(output.name + ".meta.json")


def _sub_seed(seed: int, stream: int) -> int:
    return int(np.random.SeedSequence(entropy=(seed, stream)).generate_state(1)[0])


def _check_shots(mode: str, shots: int | None) -> None:
    if mode == "shots" and shots is None:
        raise click.UsageError("--mode shots requires --shots")
    if mode == "exact" and shots is not None:
        raise click.UsageError("--shots only applies to --mode shots")


def _resample_command(direction: str):
    """Shared body of the down and up subcommands."""

    flag = "--discard" if direction == "down" else "--pad"

    def run(
        input_path: str,
        output_path: str,
        dims: int | None,
        octaves: int,
        mode: str,
        shots: int | None,
        seed: int,
        patch: int | None,
        bit_depth: int | None,
        variant: str,
    ) -> None:
        _check_shots(mode, shots)
        inp = Path(input_path)
        out = Path(output_path)
        signal = read_signal(inp, dims=dims, levels=bit_depth)
        record: dict = {
            "command": direction,
            "input": inp.name,
            "output": out.name,
            "dims": signal.ndim,
            flag.lstrip("-"): octaves,
            "mode": mode,
            "shots": shots,
            "seed": seed if mode == "shots" else None,
            "patch": patch,
            "bit_depth": bit_depth,
            "input_rates": None,
            "output_rates": None,
        }
        if direction == "up":
            record["variant"] = variant

        if patch is not None:
            decoded, summary = patch_resample(
                signal,
                patch,
                direction,
                octaves,
                variant=variant,
                mode=mode,
                shots=shots,
                seed=seed,
            )
            halfwidths = summary.ci_halfwidths
            record.update(
                {
                    "input_qubits_per_axis": patch.bit_length() - 1,
                    "output_qubits_per_axis": (
                        patch.bit_length() - 1 - octaves
                        if direction == "down"
                        else patch.bit_length() - 1 + octaves
                    ),
                    "ratio": None if summary.ratio is None else str(summary.ratio),
                    "input_intensity": summary.input_intensities.tolist(),
                    "output_intensity": summary.output_intensities.tolist(),
                    "zero_patches": summary.zero_patches,
                }
            )
        else:
            state, intensity = encode(signal)
            params = ResampleParams(octaves)
            if direction == "down":
                result = downsample(state, params, intensity=intensity)
            else:
                _, result = upsample(state, params, intensity=intensity, variant=variant)
            if mode == "exact":
                decoded = decode_exact(result.distribution, result.output_intensity)
                halfwidths = None
            else:
                hist = sample_shots(result.distribution, shots, seed)
                levels = bit_depth if direction == "up" else None
                decoded, halfwidths = reconstruct_from_shots(
                    hist, result.output_intensity, levels=levels
                )
            record.update(
                {
                    "input_qubits_per_axis": state.layout.qubits_per_axis,
                    "output_qubits_per_axis": result.output_layout.qubits_per_axis,
                    "ratio": str(result.ratio),
                    "input_intensity": intensity,
                    "output_intensity": result.output_intensity,
                }
            )

        maxval = bit_depth - 1 if bit_depth else (signal.levels - 1 if signal.levels else None)
        write_signal(out, decoded, maxval=maxval)
        record["ci_halfwidths"] = None if halfwidths is None else halfwidths.reshape(-1).tolist()
        write_metadata(_meta_path(out), record)
        click.echo(f"wrote {out} and {_meta_path(out).name}")

    return run


def _range_option(text: str, name: str) -> range:
    lo, sep, hi = text.partition(":")
    if not sep:
        lo = hi = text
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise click.UsageError(f"{name} must look like MIN:MAX, got {text!r}")
    if b < a:
        raise click.UsageError(f"{name} is empty: {text!r}")
    return range(a, b + 1)


@click.group()
def main() -> None:
    """Quantum-register frequency resampling of digital signals."""


def _common_options(fn):
    fn = click.option(
        "--bit-depth",
        type=click.IntRange(min=2),
        default=None,
        help="Quantization level count of the signal values.",
    )(fn)
    fn = click.option(
        "--patch",
        type=click.IntRange(min=2),
        default=None,
        help="Resample independent hyper-cubic patches of this side length.",
    )(fn)
    fn = click.option("--seed", type=int, default=0, show_default=True, help="Sampling seed.")(fn)
    fn = click.option("--shots", type=click.IntRange(min=1), default=None, help="Shot count.")(fn)
    fn = click.option(
        "--mode",
        type=click.Choice(["exact", "shots"]),
        default="exact",
        show_default=True,
        help="Exact distribution or finite-shot reconstruction.",
    )(fn)
    fn = click.option(
        "--dims",
        type=click.IntRange(min=1, max=3),
        default=None,
        help="Dimensions of a flat CSV signal (PGM is always 2).",
    )(fn)
    fn = click.option("--output", "output_path", required=True, type=click.Path())(fn)
    fn = click.option(
        "--input", "input_path", required=True, type=click.Path(exists=False)
    )(fn)
    return fn


@main.command("down")
@_common_options
@click.option(
    "--discard",
    "octaves",
    type=click.IntRange(min=1),
    required=True,
    help="Octaves to remove: every axis shrinks by 2**discard.",
)
@_guard
def cmd_down(octaves, **kwargs):
    """Downsample a signal to block means."""
    _resample_command("down")(octaves=octaves, variant="swap-padding", **kwargs)


@main.command("up")
@_common_options
@click.option(
    "--pad",
    "octaves",
    type=click.IntRange(min=1),
    required=True,
    help="Octaves to add: every axis grows by 2**pad.",
)
@click.option(
    "--variant",
    type=click.Choice(list(VARIANTS)),
    default="swap-padding",
    show_default=True,
    help="Padding construction for the enlarged register.",
)
@_guard
def cmd_up(octaves, variant, **kwargs):
    """Upsample a signal by nearest-neighbor replication."""
    _resample_command("up")(octaves=octaves, variant=variant, **kwargs)


DEMO_SAMPLES = 512
DEMO_RATE = 256.0
DEMO_LEVELS = 256
DEMO_DOWN_OCTAVES = 3
DEMO_UP_OCTAVES = 4


def demo_source() -> Signal:
    """The demo waveform: a shifted, truncated sinc, quantized to 256 levels.

    512 samples on [0, 2) s at 256 Hz of 1 + sinc(8 (t - 1)), scaled to
    the quantization range [0, 255].
    """
    t = np.arange(DEMO_SAMPLES) / DEMO_RATE
    y = 1.0 + np.sinc(8.0 * (t - 1.0))
    samples = np.round(y * (DEMO_LEVELS - 1) / 2.0)
    return Signal(samples, rates=(DEMO_RATE,), levels=DEMO_LEVELS)


@main.command("demo-sinc")
@click.option("--output", "output_dir", required=True, type=click.Path())
@click.option("--seed", type=int, default=0, show_default=True)
@_guard
def cmd_demo_sinc(output_dir, seed):
    """Run the three-stage sinc demonstration (source, down, up)."""
    outdir = Path(output_dir)
    outdir.mkdir(parents=True, exist_ok=True)

    source = demo_source()
    state, intensity = encode(source)

    down = downsample(
        state, ResampleParams(DEMO_DOWN_OCTAVES), intensity=intensity, rates=source.rates
    )
    down_exact = decode_exact(
        down.distribution, down.output_intensity, rates=down.output_rates
    )
    down_qubits = down.output_layout.qubits_per_axis
    down_shots = DEMO_LEVELS**2 * (1 << down_qubits)
    down_seed = _sub_seed(seed, 0)
    down_hist = sample_shots(down.distribution, down_shots, down_seed)
    down_sampled, down_hw = reconstruct_from_shots(
        down_hist, down.output_intensity, rates=down.output_rates
    )

    up_state, up_intensity = encode(down_exact)
    _, up = upsample(
        up_state,
        ResampleParams(DEMO_UP_OCTAVES),
        intensity=up_intensity,
        rates=down_exact.rates,
    )
    up_exact = decode_exact(up.distribution, up.output_intensity, rates=up.output_rates)
    up_qubits = up.output_layout.qubits_per_axis
    up_shots = DEMO_LEVELS**2 * (1 << up_qubits)
    up_seed = _sub_seed(seed, 1)
    up_hist = sample_shots(up.distribution, up_shots, up_seed)
    up_sampled, up_hw = reconstruct_from_shots(
        up_hist, up.output_intensity, rates=up.output_rates
    )

    stages = {
        "source.csv": source,
        "down_exact.csv": down_exact,
        "down_shots.csv": down_sampled,
        "up_exact.csv": up_exact,
        "up_shots.csv": up_sampled,
    }
    for name, sig in stages.items():
        write_signal(outdir / name, sig)

    record = {
        "command": "demo-sinc",
        "samples": DEMO_SAMPLES,
        "bit_depth": DEMO_LEVELS,
        "seed": seed,
        "stages": [
            {
                "name": "source",
                "file": "source.csv",
                "qubits": state.layout.qubits_per_axis,
                "rate_hz": DEMO_RATE,
                "intensity": intensity,
            },
            {
                "name": "down",
                "files": ["down_exact.csv", "down_shots.csv"],
                "discard": DEMO_DOWN_OCTAVES,
                "qubits": down_qubits,
                "rate_hz": down.output_rates[0],
                "intensity": down.output_intensity,
                "ratio": str(down.ratio),
                "shots": down_shots,
                "seed": down_seed,
                "ci_halfwidths": down_hw.reshape(-1).tolist(),
            },
            {
                "name": "up",
                "files": ["up_exact.csv", "up_shots.csv"],
                "pad": DEMO_UP_OCTAVES,
                "qubits": up_qubits,
                "rate_hz": up.output_rates[0],
                "intensity": up.output_intensity,
                "ratio": str(up.ratio),
                "shots": up_shots,
                "seed": up_seed,
                "ci_halfwidths": up_hw.reshape(-1).tolist(),
            },
        ],
    }
    write_metadata(outdir / "metadata.json", record)
    click.echo(f"wrote {len(stages)} stage files and metadata.json to {outdir}")


@main.command("advantage")
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--dims", type=click.IntRange(min=1), default=1, show_default=True)
@click.option(
    "--bit-depth",
    type=click.IntRange(min=2),
    default=2,
    show_default=True,
    help="Quantization level count (must be a power of two).",
)
@click.option(
    "--mse-target",
    type=float,
    default=None,
    help="Target mean squared error [default: 1 / bit-depth**2].",
)
@click.option("--n0-range", default="2:16", show_default=True, help="Register widths MIN:MAX.")
@click.option("--ntilde-range", default="1:15", show_default=True, help="Octave counts MIN:MAX.")
@_guard
def cmd_advantage(output_path, dims, bit_depth, mse_target, n0_range, ntilde_range):
    """Tabulate the classical-to-quantum cost ratio over a grid."""
    level_bits = round(math.log2(bit_depth))
    if 1 << level_bits != bit_depth:
        raise click.UsageError(f"--bit-depth must be a power of two, got {bit_depth}")
    if mse_target is None:
        mse_target = 1.0 / bit_depth**2
    widths = _range_option(n0_range, "--n0-range")
    octaves = _range_option(ntilde_range, "--ntilde-range")
    params = AdvantageParams(ndim=dims, level_bits=level_bits, mse_target=mse_target)
    cells = advantage_map(params, widths, octaves)
    if not cells:
        raise click.UsageError(
            "grid contains no valid cells (octaves must satisfy 1 <= ntilde < n0)"
        )
    out = Path(output_path)
    write_advantage_csv(out, cells)
    record = {
        "command": "advantage",
        "output": out.name,
        "dims": dims,
        "bit_depth": bit_depth,
        "level_bits": level_bits,
        "mse_target": mse_target,
        "n0_range": [widths.start, widths.stop - 1],
        "ntilde_range": [octaves.start, octaves.stop - 1],
        "rows": len(cells),
    }
    write_metadata(_meta_path(out), record)
    click.echo(f"wrote {len(cells)} grid cells to {out}")


if __name__ == "__main__":
    main()
