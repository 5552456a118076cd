use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DynamicsError, Sign};
use crate::functionals;
use crate::spectral::{self, snapshot::write_atomic, Field};

pub const DIAGNOSTICS_HEADER: &str = "t,mass,energy,grad_norm_sq,linf,X_t";

/// Conserved quantities and norms at one time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub mass: f64,
    pub energy: f64,
    pub grad_norm_sq: f64,
    pub linf: f64,
    /// `||grad u(t)||^2 + C_T ||u_0||^2`.
    #[serde(rename = "X_t")]
    pub x_t: f64,
}

pub fn diagnostics(u: &Field, t: f64, k: u32, sign: Sign, c_kt: f64, mass0: f64) -> DiagnosticsRow {
    let grad_norm_sq = spectral::grad_norm_sq(u);
    DiagnosticsRow {
        t,
        mass: functionals::mass(u),
        energy: functionals::energy_signed(u, k, sign),
        grad_norm_sq,
        linf: u.max_abs(),
        x_t: grad_norm_sq + c_kt * mass0,
    }
}

pub fn write_diagnostics_csv(path: &Path, rows: &[DiagnosticsRow]) -> Result<(), DynamicsError> {
    let mut s = String::from(DIAGNOSTICS_HEADER);
    s.push('\n');
    for r in rows {
        writeln!(
            s,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.t, r.mass, r.energy, r.grad_norm_sq, r.linf, r.x_t
        )
        .expect("write to string");
    }
    write_atomic(path, s.as_bytes())?;
    Ok(())
}

pub fn read_diagnostics_csv(path: &Path) -> Result<Vec<DiagnosticsRow>, DynamicsError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(DIAGNOSTICS_HEADER) {
        return Err(DynamicsError::InvalidConfig(format!(
            "{}: unexpected diagnostics header",
            path.display()
        )));
    }
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        let vals: Result<Vec<f64>, _> = line.split(',').map(str::parse::<f64>).collect();
        match vals {
            Ok(v) if v.len() == 6 => rows.push(DiagnosticsRow {
                t: v[0],
                mass: v[1],
                energy: v[2],
                grad_norm_sq: v[3],
                linf: v[4],
                x_t: v[5],
            }),
            _ => {
                return Err(DynamicsError::InvalidConfig(format!(
                    "{}: malformed row {}",
                    path.display(),
                    n + 2
                )))
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let rows = vec![
            DiagnosticsRow {
                t: 0.0,
                mass: 1.0 / 3.0,
                energy: -2.5e-17,
                grad_norm_sq: std::f64::consts::PI,
                linf: 1e300,
                x_t: 4.0,
            },
            DiagnosticsRow {
                t: 0.1,
                mass: 0.1 + 0.2,
                energy: 7.0,
                grad_norm_sq: 0.0,
                linf: 1.0,
                x_t: 1.0e-5,
            },
        ];
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("d.csv");
        write_diagnostics_csv(&p, &rows).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert!(text.starts_with("t,mass,energy,grad_norm_sq,linf,X_t\n"));
        assert!(text.contains("3.3333333333333331e-1"));
        assert_eq!(read_diagnostics_csv(&p).unwrap(), rows);
    }
}
