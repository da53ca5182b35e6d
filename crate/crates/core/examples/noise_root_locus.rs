//! Root locus over the noise strength η without feedback. The slowest pole
//! leaves the imaginary axis as soon as η > 0 and never returns.

use qdot_feedback::{sweep_poles, FeedbackParams, PhysicalParams, SweepParameter, SweepSpec};

fn main() -> qdot_feedback::Result<()> {
    let trace = sweep_poles(&SweepSpec {
        parameter: SweepParameter::Eta,
        start: 0.0,
        stop: 1.6,
        steps: 321,
        physical: PhysicalParams::default(),
        feedback: FeedbackParams::open_loop(),
    })?;
    println!("{:>6} {:>24} {:>24} {:>24} {:>10}", "eta", "branch 1", "branch 2", "branch 3", "m");
    for i in (0..trace.len()).step_by(20) {
        let p = trace.poles[i];
        println!(
            "{:>6.2} {:>24.5} {:>24.5} {:>24.5} {:>10.5}",
            trace.values[i], p[0], p[1], p[2], trace.metric[i]
        );
    }
    Ok(())
}
