//! Adapter for an external Mt-KaHyPar-compatible binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use super::{PartitionAssignment, PartitionError, SolverConfig};
use crate::hypergraph::{write_hgr, HgrMode, Hypergraph};

/// One label per line; blank lines are skipped.
pub fn parse_label_file(text: &str) -> Result<Vec<usize>, PartitionError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(line, l)| {
            l.parse().map_err(|_| PartitionError::BadLabel {
                line,
                text: l.to_string(),
            })
        })
        .collect()
}

pub fn write_label_file(labels: &[usize]) -> String {
    labels.iter().map(|l| format!("{l}\n")).collect()
}

pub(crate) fn command(input: &Path, config: &SolverConfig, binary: &Path, threads: usize) -> Command {
    let mut cmd = Command::new(binary);
    cmd.arg("-h")
        .arg(input)
        .args(["-k", &config.k.to_string()])
        .args(["-e", &config.imbalance.to_string()])
        .args(["-o", "km1"])
        .args(["-m", "direct"])
        .args(["--preset-type", "default"])
        .args(["--seed", &config.seed.to_string()])
        .args(["-t", &threads.to_string()])
        .arg("--write-partition-file=true");
    cmd
}

fn expected_partition_file(input: &Path, config: &SolverConfig) -> PathBuf {
    let mut name = input.as_os_str().to_owned();
    name.push(format!(
        ".part{}.epsilon{}.seed{}.KaHyPar",
        config.k, config.imbalance, config.seed
    ));
    PathBuf::from(name)
}

/// Newest `*.part*` file next to `input`, other than `input` itself.
fn discover_partition_file(input: &Path) -> Option<PathBuf> {
    let dir = input.parent()?;
    let stem = input.file_name()?.to_string_lossy().into_owned();
    fs::read_dir(dir)
        .ok()?
        .filter_map(Result::ok)
        .filter(|e| {
            let name = e.file_name().to_string_lossy().into_owned();
            name != stem && name.contains(".part")
        })
        .filter_map(|e| Some((e.metadata().ok()?.modified().ok()?, e.path())))
        .max()
        .map(|(_, p)| p)
}

pub(crate) fn run(
    hg: &Hypergraph,
    config: &SolverConfig,
    binary: &Path,
    threads: usize,
) -> Result<PartitionAssignment, PartitionError> {
    let dir = tempfile::tempdir()?;
    let input = dir.path().join("circuit.hgr");
    fs::write(&input, write_hgr(hg, HgrMode::Standard))?;

    let output = command(&input, config, binary, threads)
        .output()
        .map_err(|e| PartitionError::ExternalFailed(format!("{}: {e}", binary.display())))?;
    if !output.status.success() {
        let stderr = String::from_utf8_lossy(&output.stderr);
        return Err(PartitionError::ExternalFailed(format!(
            "{}: {}",
            output.status,
            stderr.trim()
        )));
    }

    let expected = expected_partition_file(&input, config);
    let path = if expected.exists() {
        expected
    } else {
        discover_partition_file(&input).ok_or(PartitionError::MissingPartitionFile(expected))?
    };
    let labels = parse_label_file(&fs::read_to_string(&path)?)?;
    if labels.len() != hg.num_nodes() {
        return Err(PartitionError::LabelCountMismatch {
            expected: hg.num_nodes(),
            found: labels.len(),
        });
    }
    PartitionAssignment::new(labels, config.k)
}
