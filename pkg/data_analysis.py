import os
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from matplotlib.ticker import FuncFormatter

# Metric column -> y-axis label; one figure per metric, one line per operation
METRICS = {
    "time_ns": "Time (ns)",
    "moves": "Certificate moves",
}

def load_results(folder="benchmark_results"):
    """
    Loads CSV results of benchmark runs from a specified folder.

    Args:
        folder (str): folder path containing the CSV files.

    Raises:
        FileNotFoundError: if no CSV files are found in the specified folder.

    Returns:
        (dataframe): A concatenated DataFrame containing all results from the CSV files.
    """
    dfs = []
    for file in os.listdir(folder):
        if file.endswith('.csv'):
            file_name = os.path.join(folder, file)
            df = pd.read_csv(file_name)
            print(f"Loaded {file_name} with shape {df.shape}")
            dfs.append(df)
    if dfs != []:
        return pd.concat(dfs, ignore_index=True)
    else:
        raise FileNotFoundError(f"No CSV results found in {folder}/")


def plot_metric(df, metric, label, out_dir="result_graphs"):
    os.makedirs(out_dir, exist_ok=True)

    df = df.copy()
    df["crosscaps"] = pd.to_numeric(df["crosscaps"], errors="coerce")
    df[metric] = pd.to_numeric(df[metric], errors="coerce")
    df = df.dropna(subset=["crosscaps", metric])
    df = df[df[metric] > 0]

    plt.figure(figsize=(10, 8))
    ax = plt.gca()

    all_sizes = np.sort(df["crosscaps"].unique())
    ax.set_xticks(all_sizes)
    ax.set_xticklabels([f"{int(s)}" for s in all_sizes])

    for operation in df["operation"].unique():
        op_df = df[df["operation"] == operation]
        grouped = (op_df.groupby("crosscaps")[metric]
                        .mean()
                        .reset_index()
                        .sort_values("crosscaps"))
        ax.plot(grouped["crosscaps"], grouped[metric], marker="o", label=operation)

    ax.set_yscale("log")
    ax.yaxis.set_major_formatter(FuncFormatter(lambda v, pos: f"{int(v):,}"))

    plt.title(f"Benchmark Results — {label}")
    plt.xlabel("Crosscaps (n)")
    plt.ylabel(label)
    plt.legend(title="Operation")
    plt.grid(True, which="both", linestyle="--", alpha=0.3)
    plt.tight_layout()

    path = os.path.join(out_dir, f"{metric}_plot.png")
    plt.savefig(path)
    plt.close()
    return path

if __name__ == "__main__":
    folder = "benchmark_results"
    os.makedirs(folder, exist_ok=True)

    df = load_results(folder)

    for metric, label in METRICS.items():
        plot_metric(df, metric, label)

    print("Plots saved in 'result_graphs/' folder.")
