//! Slab areas of the figure eight against the marginally stable catenoid
//! spanning the slab and the matched double catenoid, over several slab
//! thicknesses.

use minannuli::families::{attained_range, figure_eight};
use minannuli::measures::{catenoid_slab_area, coth_fixed_point, marginally_stable_waist, slab_area, CatenoidParams};
use minannuli::C64;

fn main() -> minannuli::Result<()> {
    let data = figure_eight(C64::new(1.0, 0.0), C64::new(1.0, 0.0), true)?;
    let f3 = data.flux()?.f3;
    let range = attained_range(&data, 1024)?;
    println!("coth u = u at u* = {:.10}", coth_fixed_point());
    println!("{:>8} {:>14} {:>14} {:>14}", "factor", "Σ", "waist", "C₂");
    for factor in [0.05, 0.1, 0.25, 0.5] {
        let slab = range.scaled(factor)?;
        let sigma = slab_area(&data, &slab, 4096)?;
        let waist = catenoid_slab_area(&marginally_stable_waist(&slab)?, &slab);
        let c2 = catenoid_slab_area(&CatenoidParams::new(f3, slab.center(), 2)?, &slab);
        println!("{factor:>8} {sigma:>14.8} {waist:>14.8} {c2:>14.8}");
    }
    Ok(())
}
