//! Cross-checks the closed-form g(t) against the quadrature and auxiliary-ODE
//! solvers, and measures their convergence orders.

use qdot_feedback::volterra::convergence_study;
use qdot_feedback::{
    closed_loop_kernel, compare_solutions, solve_exponential_ode, solve_quadrature,
    FeedbackParams, GreensAnalytic, PhysicalParams, Scheme, TimeSeries,
};

fn main() -> qdot_feedback::Result<()> {
    let dot = PhysicalParams::default();
    let fb = FeedbackParams::new(0.3 * dot.omega_s, 0.0)?;
    let kernel = closed_loop_kernel(&dot, &fb);
    let g = GreensAnalytic::new(&dot, &fb)?;
    let (dt, t_final) = (1e-3, 60.0);

    let q = solve_quadrature(&kernel, dot.omega_s, dt, t_final)?;
    let o = solve_exponential_ode(&kernel, dot.omega_s, dt, t_final)?;
    let a = TimeSeries::from_fn(dt, q.len() - 1, |t| g.evaluate(t));
    for (name, x, y) in [("quadrature vs analytic", &q, &a), ("ode vs analytic", &o, &a), ("quadrature vs ode", &q, &o)] {
        let r = compare_solutions(x, Scheme::Quadrature, y, Scheme::Analytic)?;
        println!("{name:>24}: max {:.3e}, L2 {:.3e}", r.max_deviation, r.l2_deviation);
    }

    let exact = |t: f64| g.evaluate(t);
    for scheme in [Scheme::Quadrature, Scheme::ExponentialOde] {
        println!("{scheme:?}:");
        for r in convergence_study(scheme, &kernel, dot.omega_s, 0.016, 4, 10.0, exact)? {
            match r.order {
                Some(p) => println!("  dt = {:.4}: error {:.3e}, order {p:.3}", r.dt, r.max_deviation),
                None => println!("  dt = {:.4}: error {:.3e}", r.dt, r.max_deviation),
            }
        }
    }
    Ok(())
}
