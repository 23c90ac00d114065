//! The figure-eight family: convexity band 2L ≤ L'' ≤ 4L, the three-term
//! identity, Gauss-map winding and the planar type of its level curves.

use std::f64::consts::{PI, TAU};

use minannuli::families::{figure_eight, thin_slab};
use minannuli::measures::{circle_length_closed, circle_length_dd, convexity_report, trace_level};
use minannuli::C64;

fn main() -> minannuli::Result<()> {
    let data = figure_eight(C64::new(1.0, 0.0), C64::new(1.0, 0.0), true)?;
    let w = data.window();
    println!(
        "window ({:.4}, {:.4}), symmetric {}",
        w.r_inner(),
        w.r_outer(),
        data.symmetry_check()
    );
    println!("flux {:?}", data.flux()?);

    let report = convexity_report(&data, &w.log_grid(41))?;
    for c in [2.0, 4.0] {
        let d = report.defect(c).expect("reported constant");
        println!("(L'' − {c}L)/L ∈ [{:+.3e}, {:+.3e}]", d.min_relative, d.max_relative);
    }
    let c0 = TAU * (data.g_minus().coeff(0).norm_sqr() + data.g_plus().coeff(0).norm_sqr()).sqrt();
    for r in [w.r_inner() * 1.1, 1.0, w.r_outer() / 1.1] {
        let l = circle_length_closed(&data, r)?;
        let l2 = circle_length_dd(&data, r)?;
        println!(
            "r = {r:.4}: L'' − 4L + (|c₋|²+|c₊|²)/π = {:+.2e}",
            l2 - 4.0 * l + c0 * c0 / PI
        );
    }
    println!("gauss winding {}", data.gauss_winding(1.0)?);

    let slab = thin_slab(&data)?;
    for h in slab.grid(5) {
        let c = trace_level(&data, h, 4096)?;
        println!(
            "h = {h:+.4}: length {:.6}, crossings {}, rotation index {}",
            c.length, c.self_intersections, c.rotation_index
        );
    }
    Ok(())
}
