//! Minimum and final |g(t)| over [0, 60] for several feedback and noise strengths.

use qdot_feedback::locus::amplitude_table;
use qdot_feedback::{amplitude_comparison, FeedbackParams, PhysicalParams, SweepParameter};

fn main() -> qdot_feedback::Result<()> {
    let dot = PhysicalParams::default();
    let r: Vec<f64> = [0.0, 0.1, 0.2, 0.3].iter().map(|f| f * dot.omega_s).collect();
    println!("{:>6} {:>12} {:>12}", "r", "min |g|", "|g(60)|");
    for row in amplitude_comparison(&dot, &r, 0.0, 60.0, 1e-3)? {
        println!("{:>6.2} {:>12.6} {:>12.6}", row.value, row.min_abs, row.final_abs);
    }

    let eta = [0.4, 0.8, 1.2, 1.6];
    let rows = amplitude_table(SweepParameter::Eta, &eta, &dot, &FeedbackParams::open_loop(), 60.0, 1e-3)?;
    println!("\n{:>6} {:>12} {:>12}", "eta", "min |g0|", "|g0(60)|");
    for row in rows {
        println!("{:>6.2} {:>12.6e} {:>12.6e}", row.value, row.min_abs, row.final_abs);
    }
    Ok(())
}
