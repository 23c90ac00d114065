//! k-fold catenoid covers: the length law L'' = k²L, level lengths and slab
//! areas against their closed forms.

use std::f64::consts::TAU;

use minannuli::families::{catenoid_cover, thin_slab};
use minannuli::measures::{
    catenoid_level_length, catenoid_slab_area, circle_length, circle_length_dd, slab_area, trace_level,
};

fn main() -> minannuli::Result<()> {
    for k in 1..=3 {
        let (data, params) = catenoid_cover(k, TAU, 0.0)?;
        let r = data.window().geometric_mean() * 1.3;
        let l = circle_length(&data, r, 4096)?;
        let l2 = circle_length_dd(&data, r)?;
        let slab = thin_slab(&data)?;
        let h = slab.h_plus() * 0.5;
        let traced = trace_level(&data, h, 4096)?;
        println!("k = {k}");
        println!("  L''/L at r = {r:.4}: {:.12}", l2 / l);
        println!(
            "  level h = {h:.4}: traced {:.12}, closed form {:.12}, multiplicity {}",
            traced.length,
            catenoid_level_length(&params, h),
            traced.multiplicity
        );
        println!(
            "  area in [{:.4}, {:.4}]: {:.12} vs {:.12}",
            slab.h_minus(),
            slab.h_plus(),
            slab_area(&data, &slab, 4096)?,
            catenoid_slab_area(&params, &slab)
        );
    }
    Ok(())
}
