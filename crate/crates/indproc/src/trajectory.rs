//! Trajectory CSV: one row per (path, time) with columns `t`, the state
//! components and `path_index`.

use std::io::Write;

use indproc_core::models::Trajectory;

use crate::error::Result;
use crate::report::fmt_f64;

pub fn write_trajectories<W: Write>(out: W, paths: &[Trajectory]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = paths.first() {
        let mut header = vec!["t".to_string()];
        header.extend(first.component_names.iter().map(|s| s.to_string()));
        header.push("path_index".into());
        w.write_record(&header)?;
    }
    for tr in paths {
        for (step, &t) in tr.grid.iter().enumerate() {
            let mut rec = vec![fmt_f64(t)];
            rec.extend(tr.at(step).iter().map(|&x| fmt_f64(x)));
            rec.push(tr.seed.path_index.to_string());
            w.write_record(&rec)?;
        }
    }
    w.flush()
        .map_err(|e| crate::error::CliError::io("<trajectory output>", e))
}
