//! Wave-vector offset between source and drain modes across a biased junction,
//! in natural units.

use qdot_feedback::junction_offset;

fn main() -> qdot_feedback::Result<()> {
    let (mass, charge, k0) = (1.0, 1.0, 2.0);
    for (u_b, u_c) in [(0.0, 0.0), (0.05, 0.0), (0.0, 0.05), (0.5, 0.0)] {
        let j = junction_offset(mass, charge, k0, u_b, u_c, 1.0)?;
        println!(
            "U_B = {u_b:<5} U_C = {u_c:<5} l = {:>+9.5}  kinetic/bias = {:>8.2}  valid = {}",
            j.offset,
            j.kinetic_to_bias,
            j.is_valid()
        );
    }
    Ok(())
}
