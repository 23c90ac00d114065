//! The perturbed double cover: the defect L'' − 4L, Gauss-map winding and the
//! comparison with the matched double catenoid.

use std::f64::consts::PI;

use minannuli::experiments::{compare_areas, compare_lengths, Expectation, RunConfig};
use minannuli::families::{perturbed_two_cover, thin_slab};
use minannuli::measures::{circle_length_closed, circle_length_dd, CatenoidParams};
use minannuli::C64;

fn main() -> minannuli::Result<()> {
    let config = RunConfig::default();
    for eps in [0.0, 0.02, 0.05] {
        let data = perturbed_two_cover(C64::new(1.0, 0.0), C64::new(eps, 0.0), true)?;
        let w = data.window();
        let r = w.geometric_mean();
        let defect = circle_length_dd(&data, r)? - 4.0 * circle_length_closed(&data, r)?;
        let e = data.g_minus().coeff(0).norm_sqr() + data.g_plus().coeff(0).norm_sqr();
        println!("ε₁ = {eps}: window ({:.4}, {:.4})", w.r_inner(), w.r_outer());
        println!("  L'' − 4L = {defect:.6e}  (−4π(|ε₁|²+|ε₂|²) = {:.6e})", -4.0 * PI * e);
        println!("  gauss winding {}", data.gauss_winding(r)?);

        let slab = thin_slab(&data)?;
        let cat = CatenoidParams::new(data.flux()?.f3, slab.center(), 2)?;
        let grid = slab.grid(9);
        let lengths = compare_lengths(&data, &cat, &slab, &grid, Expectation::SigmaBelow, &config)?;
        let areas = compare_areas(&data, &cat, &slab, Expectation::SigmaBelow, &config)?;
        for (name, v) in lengths.verdicts.iter().chain(&areas.verdicts) {
            println!(
                "  {:<5} {name:<32} margin {:+.3e}",
                if v.pass { "ok" } else { "FAIL" },
                v.margin
            );
        }
    }
    Ok(())
}
