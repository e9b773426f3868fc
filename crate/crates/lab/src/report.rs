//! CSV report for the exact bound checks.

use std::io::Write;

use pgmax_core::bounds::AppendixReport;

pub const BOUNDS_HEADER: [&str; 7] = ["item", "p", "n", "value_num", "value_den", "approx", "pass"];

/// One row per evaluated item, in list order.
pub fn write_bounds_csv<W: Write>(report: &AppendixReport, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(BOUNDS_HEADER)?;
    for item in &report.items {
        out.write_record([
            item.id.as_str().to_string(),
            item.p.to_string(),
            item.n.to_string(),
            item.value.numer().to_string(),
            item.value.denom().to_string(),
            item.approx(),
            item.passes().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
