//! Traces figure-eight level curves and writes them as CSV and SVG.
//!
//! Usage: `cargo run --example level_curves [OUT_DIR]` (default: the system
//! temporary directory).

use std::path::PathBuf;

use minannuli::families::{figure_eight, thin_slab};
use minannuli::measures::{length_profile, trace_level};
use minannuli::svg::render_svg;
use minannuli::C64;

fn main() -> minannuli::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let data = figure_eight(C64::new(1.0, 0.0), C64::new(0.8, 0.3), true)?;
    let slab = thin_slab(&data)?;
    let curves = slab
        .grid(5)
        .into_iter()
        .map(|h| trace_level(&data, h, 2048))
        .collect::<minannuli::Result<Vec<_>>>()?;
    for (i, c) in curves.iter().enumerate() {
        let path = out.join(format!("level_{i}.csv"));
        minannuli::write_atomic(&path, c.to_csv().as_bytes())?;
        println!(
            "h = {:+.5}: {} nodes, height error {:.1e}, crossings {} -> {}",
            c.h,
            c.nodes.len(),
            c.max_height_error(),
            c.self_intersections,
            path.display()
        );
    }
    let svg = out.join("levels.svg");
    render_svg(&curves, Some(&length_profile(&data, 101)), &svg)?;
    println!("plot -> {}", svg.display());
    Ok(())
}
