use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DVector;

use super::run::HarnessError;
use crate::core::Trajectory;

/// Render the trajectory as CSV with header t,x_0..x_{n-1},u_0..u_{m-1}.
/// The final row carries the terminal state with empty control cells.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let n = traj.states()[0].len();
    let m = traj.controls().first().map_or(0, |u| u.len());
    let mut out = String::from("t");
    for i in 0..n {
        let _ = write!(out, ",x_{i}");
    }
    for j in 0..m {
        let _ = write!(out, ",u_{j}");
    }
    out.push('\n');
    for (k, t) in traj.times().iter().enumerate() {
        let _ = write!(out, "{t}");
        for v in traj.states()[k].iter() {
            let _ = write!(out, ",{v}");
        }
        if k < traj.controls().len() {
            for v in traj.controls()[k].iter() {
                let _ = write!(out, ",{v}");
            }
        } else {
            for _ in 0..m {
                out.push(',');
            }
        }
        out.push('\n');
    }
    out
}

pub fn cost_history_csv(history: &[f64]) -> String {
    let mut out = String::from("iteration,cost\n");
    for (i, c) in history.iter().enumerate() {
        let _ = writeln!(out, "{i},{c}");
    }
    out
}

/// Parsed trajectory CSV: column names plus data rows (empty cells are
/// NaN, as in the terminal control slots).
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn read_csv(path: &Path) -> Result<CsvTable, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| HarnessError::Data(format!("{}: empty file", path.display())))?;
    let columns: Vec<String> = header.split(',').map(str::to_owned).collect();
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let cells: Vec<f64> = line
            .split(',')
            .map(|c| {
                if c.is_empty() {
                    Ok(f64::NAN)
                } else {
                    c.parse::<f64>().map_err(|e| {
                        HarnessError::Data(format!(
                            "{}:{}: bad number {c:?}: {e}",
                            path.display(),
                            lineno + 2
                        ))
                    })
                }
            })
            .collect::<Result<_, _>>()?;
        if cells.len() != columns.len() {
            return Err(HarnessError::Data(format!(
                "{}:{}: expected {} cells, found {}",
                path.display(),
                lineno + 2,
                columns.len(),
                cells.len()
            )));
        }
        rows.push(cells);
    }
    Ok(CsvTable { columns, rows })
}

/// Rebuild a [`Trajectory`] from an exported CSV (used to cross-check
/// reported costs against the files).
pub fn trajectory_from_csv(table: &CsvTable) -> Result<Trajectory, HarnessError> {
    let n = table.columns.iter().filter(|c| c.starts_with("x_")).count();
    let m = table.columns.iter().filter(|c| c.starts_with("u_")).count();
    if table.rows.len() < 2 {
        return Err(HarnessError::Data("trajectory needs at least two rows".into()));
    }
    let times: Vec<f64> = table.rows.iter().map(|r| r[0]).collect();
    let states: Vec<DVector<f64>> = table
        .rows
        .iter()
        .map(|r| DVector::from_row_slice(&r[1..1 + n]))
        .collect();
    let controls: Vec<DVector<f64>> = table.rows[..table.rows.len() - 1]
        .iter()
        .map(|r| DVector::from_row_slice(&r[1 + n..1 + n + m]))
        .collect();
    let dt = times[1] - times[0];
    Trajectory::new(times, states, controls, dt)
        .map_err(|e| HarnessError::Data(format!("invalid trajectory file: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn sample() -> Trajectory {
        let times = vec![0.0, 0.5, 1.0];
        let states = vec![
            DVector::from_vec(vec![0.0, 1.0]),
            DVector::from_vec(vec![0.25, 1.5]),
            DVector::from_vec(vec![1.0, 2.0]),
        ];
        let controls = vec![DVector::from_vec(vec![0.1]), DVector::from_vec(vec![-0.2])];
        Trajectory::new(times, states, controls, 0.5).unwrap()
    }

    #[test]
    fn trajectory_header_and_final_row() {
        let csv = trajectory_csv(&sample());
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,x_0,x_1,u_0");
        assert_eq!(lines.next().unwrap(), "0,0,1,0.1");
        assert_eq!(lines.next().unwrap(), "0.5,0.25,1.5,-0.2");
        assert_eq!(lines.next().unwrap(), "1,1,2,");
        assert!(lines.next().is_none());
    }

    #[test]
    fn csv_round_trip() {
        let traj = sample();
        let dir = std::env::temp_dir().join("trajopt-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("traj.csv");
        std::fs::write(&path, trajectory_csv(&traj)).unwrap();
        let table = read_csv(&path).unwrap();
        let back = trajectory_from_csv(&table).unwrap();
        assert_eq!(back, traj);
    }

    #[test]
    fn cost_history_format() {
        let csv = cost_history_csv(&[3.5, 2.0, 1.25]);
        assert_eq!(csv, "iteration,cost\n0,3.5\n1,2\n2,1.25\n");
    }
}
