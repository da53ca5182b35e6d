//! Open- and closed-loop memory kernels for the reference dot, in time and
//! in the Laplace domain.

use num_complex::Complex64;
use qdot_feedback::{
    closed_loop_kernel, effective_splitting, mixing_angle, open_loop_kernel, split_spectra,
    FeedbackParams, PhysicalParams,
};

fn main() -> qdot_feedback::Result<()> {
    let dot = PhysicalParams::default();
    let fb = FeedbackParams::new(0.2 * dot.omega_s, 0.0)?;

    let open = open_loop_kernel(&dot);
    let closed = closed_loop_kernel(&dot, &fb);
    println!(
        "alpha = {:.6} rad, gamma = {:.6} ueV",
        mixing_angle(&fb, &dot),
        effective_splitting(&fb, &dot)
    );
    for (name, k) in [("open", &open), ("closed", &closed)] {
        println!("{name}-loop terms:");
        for t in &k.terms {
            println!("  c = {:.6}  p = {:.6}", t.amplitude, t.rate);
        }
        println!("  sum c = {:.6} (eta*h = {:.6})", k.total_amplitude(), dot.coupling());
    }

    println!("\n{:>6} {:>24} {:>24}", "t", "|M0(t)|", "|M(t)|");
    for t in [0.0, 1.0, 2.0, 5.0, 10.0] {
        println!(
            "{t:>6.1} {:>24.6e} {:>24.6e}",
            open.at_time(t)?.norm(),
            closed.at_time(t)?.norm()
        );
    }

    println!("\nLaplace domain on Im s = -omega_S:");
    for sigma in [0.03, 0.3, 3.0] {
        let s = Complex64::new(sigma, -dot.omega_s);
        println!("  s = {s:.2}: M0 = {:.6}, M = {:.6}", open.laplace(s)?, closed.laplace(s)?);
    }

    let (jp, jm) = split_spectra(dot.omega_s, &dot, &fb)?;
    println!("\nJ+(omega_S) = {jp:.6}, J-(omega_S) = {jm:.6}");
    Ok(())
}
