//! Minimal annuli in a horizontal slab, built from finite Laurent-polynomial
//! Weierstrass data.
//!
//! The crate is organised bottom-up:
//!
//! - [`laurent`]: exact calculus for finite Laurent polynomials (arithmetic,
//!   circle integrals, Aberth–Ehrlich roots, winding numbers).
//! - [`weierstrass`]: the surface data model `(G₋, G₊, parity)` and everything
//!   derived from it (period problem, flux, height, immersion, metric).
//! - [`measures`]: circle lengths and their log-derivative laws, traced level
//!   curves, slab-clipped areas, total curvature and catenoid comparison
//!   solutions.
//! - [`families`]: constructors for catenoid covers, the perturbed double
//!   cover and the figure-eight family.
//! - [`experiments`]: named scenarios producing machine-checkable reports.
//! - [`cli`]: the command-line front end used by the `minannuli` binary.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod families;
pub mod laurent;
pub mod measures;
pub mod quadrature;
pub mod svg;
pub mod weierstrass;

pub use error::{Error, Result};
pub use laurent::{AnnulusWindow, LaurentPoly, LogTermAntiderivative, C64};
pub use weierstrass::{FluxVector, Parity, Slab, WeierstrassData};

/// Writes `bytes` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &std::path::Path, bytes: &[u8]) -> Result<()> {
    use std::io::Write;
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => std::path::Path::new("."),
    };
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    let res = std::fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes).and_then(|_| f.sync_all()))
        .and_then(|_| std::fs::rename(&tmp, path));
    if let Err(e) = res {
        let _ = std::fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}
