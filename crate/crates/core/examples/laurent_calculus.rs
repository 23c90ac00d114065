//! Arithmetic, circle integrals, roots and winding numbers of a Laurent
//! polynomial.

use minannuli::{LaurentPoly, C64};

fn main() -> minannuli::Result<()> {
    // p(z) = z⁻² + (0.5 + i)z⁻¹ + 3 − z + 0.25z²
    let p = LaurentPoly::from_terms([
        (-2, C64::new(1.0, 0.0)),
        (-1, C64::new(0.5, 1.0)),
        (0, C64::new(3.0, 0.0)),
        (1, C64::new(-1.0, 0.0)),
        (2, C64::new(0.25, 0.0)),
    ])?;
    println!("p(1 + i)         = {}", p.eval(C64::new(1.0, 1.0))?);
    println!("p'               = {:?}", p.derivative().terms().collect::<Vec<_>>());
    let prim = p.antiderivative();
    println!("∫p dz log term   = {}", prim.log_coefficient);
    println!("mean on |z| = 2  = {}", p.circle_mean(2.0)?);
    println!("L² on |z| = 2    = {:.12}", p.circle_l2(2.0)?);

    let q = &p * &p.reflect();
    println!("p·p(1/z) spans z^{}..z^{}", q.lowest(), q.highest());

    let mut roots = p.roots()?;
    roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    for z in &roots {
        println!(
            "root {z:.6}  |z| = {:.6}  |p(z)| = {:.1e}",
            z.norm(),
            p.eval(*z)?.norm()
        );
    }
    for r in [0.2, 1.0, 5.0] {
        match p.winding_on_circle(r) {
            Ok(k) => println!("winding on |z| = {r}: {k} (numeric {:.9})", p.winding_numeric(r, 2048)?),
            Err(e) => println!("winding on |z| = {r}: {e}"),
        }
    }
    Ok(())
}
