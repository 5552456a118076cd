use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::Value;

use super::commands::{DIAGNOSTICS_FILE, LAMBDA_SCAN_FILE, PROBE_FILE, THRESHOLDS_FILE};
use super::CliError;
use crate::dynamics::read_diagnostics_csv;
use crate::spectral::snapshot::write_atomic;

fn read_json(path: &Path) -> Result<Option<Value>, CliError> {
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path)?;
    Ok(Some(serde_json::from_str(&text)?))
}

fn number(v: &Value) -> Result<f64, CliError> {
    v.as_f64()
        .ok_or_else(|| CliError::Io(format!("expected a number, found {v}")))
}

fn scan_columns(points: &Value) -> Result<String, CliError> {
    let mut s = String::from("lambda,ratio\n");
    for p in points.as_array().into_iter().flatten() {
        writeln!(s, "{:.16e},{:.16e}", number(&p["lambda"])?, number(&p["ratio"])?).expect("write to string");
    }
    Ok(s)
}

/// Writes plain CSV columns derived from the artifacts found in `dir`:
///
/// * `plot_mass.csv` (`t,mass`) from the diagnostics;
/// * `plot_xt.csv` (`t,X_t,x0`) when a threshold report carries `x0`;
/// * `plot_gn.csv` and `plot_gn_flat.csv` (`lambda,ratio`) from a λ-scan;
/// * `plot_strichartz.csv` (`N,ratio`) from a probe report.
///
/// Fails with [`CliError::MissingArtifact`] if none of these can be made.
pub fn emit_plotdata(dir: &Path, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    if !dir.is_dir() {
        return Err(CliError::MissingArtifact(format!("{} is not a directory", dir.display())));
    }
    let mut outputs: Vec<(&str, String)> = Vec::new();

    let diag_path = dir.join(DIAGNOSTICS_FILE);
    let rows = if diag_path.exists() {
        Some(read_diagnostics_csv(&diag_path).map_err(|e| CliError::Io(e.to_string()))?)
    } else {
        None
    };
    if let Some(rows) = &rows {
        let mut s = String::from("t,mass\n");
        for r in rows {
            writeln!(s, "{:.16e},{:.16e}", r.t, r.mass).expect("write to string");
        }
        outputs.push(("plot_mass.csv", s));
    }

    if let (Some(rows), Some(th)) = (&rows, read_json(&dir.join(THRESHOLDS_FILE))?) {
        if let Some(x0) = th["report"]["x0"].as_f64() {
            let mut s = String::from("t,X_t,x0\n");
            for r in rows {
                writeln!(s, "{:.16e},{:.16e},{:.16e}", r.t, r.x_t, x0).expect("write to string");
            }
            outputs.push(("plot_xt.csv", s));
        }
    }

    if let Some(scan) = read_json(&dir.join(LAMBDA_SCAN_FILE))? {
        outputs.push(("plot_gn.csv", scan_columns(&scan["concentration"]["points"])?));
        outputs.push(("plot_gn_flat.csv", scan_columns(&scan["flat"]["points"])?));
    }

    if let Some(probe) = read_json(&dir.join(PROBE_FILE))? {
        let mut s = String::from("N,ratio\n");
        for p in probe["per_scale"].as_array().into_iter().flatten() {
            writeln!(s, "{},{:.16e}", number(&p["N"])?, number(&p["max_ratio"])?).expect("write to string");
        }
        outputs.push(("plot_strichartz.csv", s));
    }

    if outputs.is_empty() {
        return Err(CliError::MissingArtifact(format!(
            "{} holds no diagnostics, lambda scan or probe report",
            dir.display()
        )));
    }
    let mut written = Vec::with_capacity(outputs.len());
    for (name, text) in outputs {
        let path = out.join(name);
        write_atomic(&path, text.as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_directory_is_missing_artifact() {
        let dir = tempfile::tempdir().unwrap();
        let err = emit_plotdata(dir.path(), dir.path()).unwrap_err();
        assert!(matches!(err, CliError::MissingArtifact(_)));
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn probe_report_projects_to_columns() {
        let dir = tempfile::tempdir().unwrap();
        let json = r#"{"exponents":{"s":0.0,"b":0.375},"per_scale":[{"N":1,"max_ratio":0.5,"mean_ratio":0.4},{"N":2,"max_ratio":0.25,"mean_ratio":0.2}],"slope":-1.0,"trials":1,"seed":0}"#;
        std::fs::write(dir.path().join(PROBE_FILE), json).unwrap();
        let written = emit_plotdata(dir.path(), dir.path()).unwrap();
        assert_eq!(written.len(), 1);
        let text = std::fs::read_to_string(&written[0]).unwrap();
        assert_eq!(text.lines().next(), Some("N,ratio"));
        assert_eq!(text.lines().count(), 3);
    }
}
