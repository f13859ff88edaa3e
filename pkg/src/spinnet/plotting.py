"""Static figures for the CLI report paths (Agg backend, files only)."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_RC = {"figure.figsize": (6.4, 4.0), "axes.grid": True, "grid.alpha": 0.3,
       "font.size": 10, "savefig.dpi": 120, "svg.hashsalt": "spinnet"}


def _save(fig, path):
    # fixed metadata keeps repeated runs byte-identical
    meta = {"Software": None} if str(path).endswith(".png") else {"Date": None}
    fig.savefig(path, bbox_inches="tight", metadata=meta)
    plt.close(fig)


def _logabs(values):
    out = []
    for v in values:
        a = abs(float(v)) if v is not None else 0.0
        out.append(np.log10(a) if a > 0 and np.isfinite(a) else np.nan)
    return np.array(out)


def plot_sequence(ns, values, path, title=""):
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.plot(ns, _logabs(values), ".-", lw=0.8)
        ax.set_xlabel("n")
        ax.set_ylabel("log10 |a_n|")
        ax.set_title(title)
        _save(fig, path)


def plot_prediction(ns, exact, pred, rel, path, title=""):
    with plt.rc_context(_RC):
        fig, (ax0, ax1) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 6.0))
        ax0.plot(ns, [float(x) for x in exact], "o", ms=3, label="exact")
        ax0.plot(ns, [float(x) for x in pred], "-", lw=1, label="expansion")
        ax0.set_ylabel("U value")
        ax0.legend()
        ax0.set_title(title)
        ax1.semilogy(ns, [float(x) for x in rel], ".-", lw=0.8)
        ax1.set_xlabel("n")
        ax1.set_ylabel("relative error")
        _save(fig, path)


def plot_radius(ns, values, estimate, path, title=""):
    ns = np.asarray(ns, dtype=float)
    logs = _logabs(values)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        with np.errstate(invalid="ignore", divide="ignore"):
            ax.plot(ns[1:], 10 ** (logs[1:] / ns[1:]), ".", ms=3, label="|a_n|^(1/n)")
        ax.axhline(estimate, color="k", lw=0.8, ls="--", label=f"estimate {estimate:.4g}")
        ax.set_xlabel("n")
        ax.legend()
        ax.set_title(title)
        _save(fig, path)
