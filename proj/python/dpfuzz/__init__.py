"""Python bindings for the dpfuzz engine."""

from ._core import ConfigError, InputError, fit, fuzz, run_cli, run_target, targets

__all__ = ["ConfigError", "InputError", "fit", "fuzz", "run_cli", "run_target", "targets", "main"]


def main(argv=None):
    import sys

    code, out, err = run_cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
