//! Three points with distinct x lie on one parabola `y = u2 x^2 + u1 x + u0`,
//! and so does the reflection `(x4, -y4)` of their sum.

use ecsum::curve::mordell17;
use ecsum::sum3::{parabola_coeffs, sum3_symmetric};

fn main() -> ecsum::Result<()> {
    let (curve, pts) = mordell17();
    for w in pts.windows(3) {
        let par = parabola_coeffs(&w[0], &w[1], &w[2])?;
        let p4 = sum3_symmetric(&curve, &w[0], &w[1], &w[2])?;
        let (x4, y4) = p4.coords().expect("affine");
        println!("{} {} {}", w[0], w[1], w[2]);
        println!("  y = ({})x^2 + ({})x + ({})", par.u2, par.u1, par.u0);
        println!(
            "  P4 = {p4}, parabola at x4 = {} = -y4: {}",
            par.eval(x4),
            par.residual(x4, &-y4).is_zero()
        );
    }
    Ok(())
}
