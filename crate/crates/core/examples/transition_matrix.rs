//! Propagator of a junction-coupled source/drain mode pair and its unitarity.

use qdot_feedback::kernel::mode_eigenfrequencies;
use qdot_feedback::{transition_matrix, FeedbackParams, PhysicalParams};

fn main() -> qdot_feedback::Result<()> {
    let dot = PhysicalParams::default();
    let fb = FeedbackParams::new(1.0, 0.5)?;
    let omega = dot.omega_s;
    let (lp, lm) = mode_eigenfrequencies(omega, &dot, &fb);
    println!("lambda+ = {lp:.6}, lambda- = {lm:.6}");

    for t in [0.0, 0.5, 1.0, 3.0] {
        let phi = transition_matrix(omega, t, &dot, &fb)?;
        println!("t = {t}:");
        for row in phi.0 {
            println!("  [{:>22.6} {:>22.6}]", row[0], row[1]);
        }
        let [e1, e2] = phi.eigenvalues();
        println!(
            "  |Phi^+ Phi - I| = {:.2e}, eigenphases {:.6} {:.6}",
            phi.unitarity_defect(),
            e1.arg(),
            e2.arg()
        );
    }
    Ok(())
}
