//! CSV and text output for the command-line front end, plus the invariant
//! suite behind `verify`.

mod sequence;
mod sweep;
mod table;
mod verify;

pub use sequence::{sequence_summary, write_sequence_csv, SEQUENCE_HEADER};
pub use sweep::{
    auto_method, discount_grid, sweep, write_sweep_csv, Scale, SweepRow, SWEEP_HEADER,
};
pub use table::limits_table;
pub use verify::{run_checks, CheckOutcome, VerifyOptions, VerifySummary};

/// 17 significant digits, enough to round-trip binary64.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 0.7071067811865476, 1e300, 0.0] {
            assert_eq!(num(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
        assert_eq!(num(0.5), "5.0000000000000000e-1");
    }
}
