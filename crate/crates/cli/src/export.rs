//! CSV export of the metrics rows.

use std::io::Write;

use swarmsim_core::Trace;

use crate::trace_io::fmt_f64;

pub const CSV_HEADER: [&str; 7] = [
    "tick",
    "com_x",
    "com_y",
    "angular_momentum",
    "scatter",
    "radial_variance",
    "mean_radius",
];

/// One row per record, values formatted exactly as in the trace `M` rows.
pub fn write_metrics_csv<W: Write>(trace: &Trace, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in &trace.records {
        let m = &rec.metrics;
        w.write_record([
            rec.tick.to_string(),
            fmt_f64(m.center_of_mass.x),
            fmt_f64(m.center_of_mass.y),
            fmt_f64(m.angular_momentum),
            fmt_f64(m.scatter),
            fmt_f64(m.radial_variance),
            fmt_f64(m.mean_radius),
        ])?;
    }
    w.flush()?;
    Ok(())
}
