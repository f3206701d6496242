"""Command-line entry point wiring the modules into file-based pipelines."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import analyzer, capture_io, jammer, raster, synth, timing
from .errors import EmleakError
from .frame import FrameImage, load_image, test_card, write_pgm


def _parse_mode(spec: str) -> timing.DisplayMode:
    try:
        res, refresh = spec.split("@")
        w, h = res.lower().split("x")
        return timing.lookup_mode(int(w), int(h), float(refresh))
    except ValueError:
        raise EmleakError(f"mode must look like 1280x720@60, got {spec!r}") from None


def _load_frame(args, mode: timing.DisplayMode) -> FrameImage:
    if args.image is not None:
        return load_image(args.image)
    return test_card(args.card, mode)


def _add_frame_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--image", help="interface image (PGM P5 or 8-bit PNG)")
    src.add_argument(
        "--card",
        choices=("black", "white", "bars", "ballot_card"),
        default="ballot_card",
        help="built-in test card when no --image is given",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emleak",
        description="Pre-characterize, synthesize, analyze and jam-plan the "
        "electromagnetic emission signature of a video display.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("modes", help="list the display timing table")

    p = sub.add_parser("synth", help="synthesize a baseband IQ capture")
    _add_frame_args(p)
    p.add_argument("--mode", required=True)
    p.add_argument("--fs", type=float, required=True, help="sample rate in Hz")
    p.add_argument("--k", type=int, default=1, help="harmonic index (0 = baseband)")
    p.add_argument("--frames", type=int, default=1)
    p.add_argument("--duty", type=float, default=0.9)
    p.add_argument("--oversample", type=int, default=4)
    p.add_argument("--snr", type=float, default=None, help="SNR in dB (omit for noiseless)")
    p.add_argument("--attenuation", type=float, default=0.0, help="attenuation in dB")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--edge-emphasis", action="store_true")
    p.add_argument("--blanking-level", type=float, default=0.0)
    p.add_argument("--out", required=True, help="output capture (cf32 + sidecar)")

    p = sub.add_parser("signature", help="pre-characterize the harmonic signature")
    _add_frame_args(p)
    p.add_argument("--mode", required=True)
    p.add_argument("--duty", type=float, default=0.9)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--out", required=True, help="output signature JSON")

    p = sub.add_parser("analyze", help="PSD, comb detection and rate estimates")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--mode", required=True)
    p.add_argument("--fs", type=float, default=None, help="override when no sidecar")
    p.add_argument("--segment", type=int, default=4096)
    p.add_argument("--overlap", type=float, default=0.5)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--min-prominence", type=float, default=10.0)
    p.add_argument("--span", type=float, default=0.5, help="frame-rate search span, Hz")
    p.add_argument("--line-span", type=float, default=60.0, help="line-rate search span, Hz")
    p.add_argument("--candidates", type=int, default=41)
    p.add_argument("--psd-out", help="write the PSD as freq_hz,power_db CSV")

    p = sub.add_parser("raster", help="line-wise DFT raster view of a capture")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--mode", required=True)
    p.add_argument("--fs", type=float, default=None)
    p.add_argument("--no-dc-center", action="store_true")
    p.add_argument("--out", required=True, help="output raster PGM")
    p.add_argument("--csv", help="optional CSV dump of raster values")

    p = sub.add_parser("reconstruct", help="reconstruct the screen image")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--mode", required=True)
    p.add_argument("--fs", type=float, default=None)
    p.add_argument("--frames", type=int, default=1)
    p.add_argument("--out", required=True, help="output image PGM")

    p = sub.add_parser("plan-jam", help="rank jamming bands for a device profile")
    _add_frame_args(p)
    p.add_argument("--mode", required=True)
    p.add_argument("--model", default="unnamed-device")
    p.add_argument("--duty", type=float, default=0.9)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--guard", type=float, default=3.0)
    p.add_argument("--out", help="plan JSON")
    p.add_argument("--flat-out", help="flat `center bandwidth priority` export")

    return parser


def _cmd_modes(_args) -> int:
    for m in timing.available_modes():
        print(
            f"{m.name}  totals {m.total_width}x{m.total_height}  "
            f"pixel_rate {timing.pixel_rate(m):,.0f} Hz  "
            f"line_rate {timing.line_rate(m):,.0f} Hz"
        )
    return 0


def _cmd_synth(args) -> int:
    mode = _parse_mode(args.mode)
    frame = _load_frame(args, mode)
    from .frame import compose_pixel_sequence

    pixseq = compose_pixel_sequence(frame, mode, blanking_level=args.blanking_level)
    capture = synth.synthesize_baseband(
        pixseq,
        synth.PulseSpec(duty=args.duty),
        harmonic_k=args.k,
        sample_rate_hz=args.fs,
        n_frames=args.frames,
        oversample=args.oversample,
        channel=synth.ChannelSpec(
            attenuation_db=args.attenuation, snr_db=args.snr, seed=args.seed
        ),
        edge_emphasis=args.edge_emphasis,
    )
    capture_io.write_capture(capture, args.out)
    print(f"wrote {len(capture)} samples to {args.out}")
    return 0


def _cmd_signature(args) -> int:
    mode = _parse_mode(args.mode)
    frame = _load_frame(args, mode)
    sig = analyzer.signature_from_public_image(
        frame, mode, synth.PulseSpec(duty=args.duty), args.kmax
    )
    analyzer.write_signature(sig, args.out)
    for e in sig.entries:
        print(f"k={e.k}  {e.center_freq_hz:,.0f} Hz  rel_power {e.predicted_rel_power:.4f}")
    return 0


def _cmd_analyze(args) -> int:
    mode = _parse_mode(args.mode)
    capture = capture_io.read_capture(args.infile, sample_rate_hz=args.fs)
    spectrum = analyzer.psd(capture, segment_len=args.segment, overlap_fraction=args.overlap)
    if args.psd_out:
        np.savetxt(
            args.psd_out,
            np.column_stack([spectrum.freqs_hz, spectrum.power_db]),
            delimiter=",",
            fmt="%.8g",
            header="freq_hz,power_db",
            comments="",
        )
    detections = analyzer.detect_harmonic_comb(
        spectrum,
        mode,
        capture.meta.center_freq_hz,
        range(0, args.kmax + 1),
        args.min_prominence,
    )
    for k, f, prom in detections:
        print(f"harmonic k={k}  offset {f:,.1f} Hz  prominence {prom:.1f} dB")
    if not detections:
        print("no harmonics above the prominence threshold")
    fv = analyzer.estimate_frame_rate(
        capture, mode.refresh_hz, args.span, args.candidates
    )
    fh = analyzer.estimate_line_rate(capture, mode, args.line_span, args.candidates)
    flag = " (low confidence)" if fv.flagged else ""
    print(f"frame rate {fv.freq_hz:.4f} Hz{flag}")
    flag = " (low confidence)" if fh.flagged else ""
    print(f"line rate {fh.freq_hz:.2f} Hz{flag}")
    return 0


def _raster_to_pgm(img: raster.RasterImage, path: str) -> None:
    vals = img.values
    lo, hi = vals.min(), vals.max()
    norm = (vals - lo) / (hi - lo) if hi > lo else np.zeros_like(vals)
    write_pgm(FrameImage(img.cols, img.rows, norm), path)


def _cmd_raster(args) -> int:
    mode = _parse_mode(args.mode)
    capture = capture_io.read_capture(args.infile, sample_rate_hz=args.fs)
    spl = round(timing.samples_per_line(mode, capture.meta.sample_rate_hz))
    view = raster.line_dft_raster(capture, spl, dc_centered=not args.no_dc_center)
    _raster_to_pgm(view, args.out)
    if args.csv:
        raster.raster_to_csv(view, args.csv)
    print(f"wrote {view.rows}x{view.cols} raster to {args.out}")
    return 0


def _cmd_reconstruct(args) -> int:
    mode = _parse_mode(args.mode)
    capture = capture_io.read_capture(args.infile, sample_rate_hz=args.fs)
    img = raster.reconstruct_image(capture, mode, args.frames, output_path=args.out)
    print(f"wrote {img.width}x{img.height} image to {args.out}")
    return 0


def _cmd_plan_jam(args) -> int:
    mode = _parse_mode(args.mode)
    profile = jammer.DeviceProfile(
        model_name=args.model, mode=mode, interface_image_path=args.image
    )
    plan = jammer.plan_jamming(
        profile, synth.PulseSpec(duty=args.duty), k_max=args.kmax, guard_factor=args.guard
    )
    if args.out:
        jammer.write_plan(plan, args.out)
    if args.flat_out:
        jammer.write_plan_flat(plan, args.flat_out)
    for b in sorted(plan.bands, key=lambda b: b.priority):
        print(
            f"priority {b.priority}: {b.center_freq_hz:,.0f} Hz "
            f"(bandwidth {b.bandwidth_hz:,.0f} Hz)"
        )
    for note in plan.notes:
        print(f"note: {note}")
    return 0


_COMMANDS = {
    "modes": _cmd_modes,
    "synth": _cmd_synth,
    "signature": _cmd_signature,
    "analyze": _cmd_analyze,
    "raster": _cmd_raster,
    "reconstruct": _cmd_reconstruct,
    "plan-jam": _cmd_plan_jam,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _COMMANDS[args.command](args)
    except EmleakError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
