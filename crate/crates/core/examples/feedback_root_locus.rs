//! Root locus over the feedback strength r at η = 0.4, θ = 0.

use qdot_feedback::{sweep_poles, FeedbackParams, PhysicalParams, SweepParameter, SweepSpec};

fn main() -> qdot_feedback::Result<()> {
    let dot = PhysicalParams::default();
    let trace = sweep_poles(&SweepSpec {
        parameter: SweepParameter::R,
        start: 0.0,
        stop: 0.3 * dot.omega_s,
        steps: 301,
        physical: dot,
        feedback: FeedbackParams::open_loop(),
    })?;
    println!("{:>6} {:>24} {:>24} {:>24} {:>10}", "r", "branch 1", "branch 2", "branch 3", "m");
    for i in (0..trace.len()).step_by(30) {
        let p = trace.poles[i];
        println!(
            "{:>6.2} {:>24.5} {:>24.5} {:>24.5} {:>10.5}",
            trace.values[i], p[0], p[1], p[2], trace.metric[i]
        );
    }
    println!("continuous: {}", trace.is_branch_continuous());
    Ok(())
}
