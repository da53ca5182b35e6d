//! Poles and residues of G(s) with and without feedback, and the closed-form
//! amplitude g(t) they give.

use qdot_feedback::{
    asymptotic_poles, closed_form_poles, cubic_coefficients, FeedbackParams, GreensAnalytic,
    PhysicalParams,
};

fn show(label: &str, g: &GreensAnalytic) {
    println!("{label}");
    for (i, m) in g.modes.iter().enumerate() {
        println!("  p{} = {:>26.8}   q{} = {:>26.8}", i + 1, m.pole, i + 1, m.residue);
    }
    println!("  sum q = {:.3e}", g.residue_sum());
}

fn main() -> qdot_feedback::Result<()> {
    let dot = PhysicalParams::default();
    let open = GreensAnalytic::new(&dot, &FeedbackParams::open_loop())?;
    show("open loop (r = 0):", &open);

    let fb = FeedbackParams::new(0.3 * dot.omega_s, 0.0)?;
    let closed = GreensAnalytic::new(&dot, &fb)?;
    show("closed loop (r = 0.3 omega_S):", &closed);

    println!("\n{:>6} {:>12} {:>12}", "t", "|g0(t)|", "|g(t)|");
    for t in [0.0, 5.0, 10.0, 20.0, 40.0, 60.0] {
        println!("{t:>6.1} {:>12.6} {:>12.6}", open.evaluate(t).norm(), closed.evaluate(t).norm());
    }

    // The Cardano form agrees with the numeric roots up to relabelling.
    let c = cubic_coefficients(&dot, &fb);
    for branch in 0..3 {
        let p = closed_form_poles(&c, branch);
        println!("closed form, branch {branch}: {:.6} {:.6} {:.6}", p[0], p[1], p[2]);
    }

    let limit = asymptotic_poles(&dot);
    for mult in [1.0, 10.0, 100.0] {
        let g = GreensAnalytic::new(&dot, &FeedbackParams::new(mult * dot.omega_s, 0.0)?)?;
        println!(
            "r = {mult:>5} omega_S: |p1 - (-i omega_S)| = {:.3e}, Re p2 = {:.6}, Re p3 = {:.6}",
            (g.modes[0].pole - limit[0]).norm(),
            g.modes[1].pole.re,
            g.modes[2].pole.re
        );
    }
    Ok(())
}
