//! Total curvature over growing annuli: −8π for the figure eight and −4π for
//! the catenoid in the limit.

use std::f64::consts::{PI, TAU};

use minannuli::families::{catenoid_cover, figure_eight};
use minannuli::measures::total_curvature;
use minannuli::{AnnulusWindow, C64};

fn main() -> minannuli::Result<()> {
    let fe = figure_eight(C64::new(1.0, 0.0), C64::new(1.0, 0.0), true)?;
    let (cat, _) = catenoid_cover(1, TAU, 0.0)?;
    for s in [1.0f64, 2.0, 4.0, 7.0] {
        let w = AnnulusWindow::new((-s).exp(), s.exp())?;
        println!(
            "|ln r| < {s}: figure eight {:+.6}·π, catenoid {:+.6}·π",
            total_curvature(&fe, &w, 2048)? / PI,
            total_curvature(&cat, &w, 2048)? / PI
        );
    }
    Ok(())
}
