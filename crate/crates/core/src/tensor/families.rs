use std::sync::Arc;

use super::{ad_power, bracket, TensorAlgebra, TensorElement, TensorError};
use crate::gfp::Prime;

/// A candidate free generating set inside a tensor algebra.
#[derive(Clone, Debug)]
pub struct FreeFamily {
    pub name: String,
    pub algebra: Arc<TensorAlgebra>,
    pub gens: Vec<TensorElement>,
}

/// The generating families whose free subalgebras describe the loop
/// homology of the fibre stages for the pinch map with cells in dimensions
/// `n+1` and `n+k+1`, with `|x| = n`, `|y| = n+k+1`, `|z| = 2n+k+1`:
///
/// * `{x, [x,y]}` and `{x, [x,y], [[x,y],y]}` in `T(x, y)`;
/// * `{ad^m(y)(x) : m ≤ 3}` in `T(x, y)`;
/// * `{ad^m(z)(x) : m ≤ 2}` in `T(x, z)`.
pub fn loop_homology_families(n: u32, k: u32, p: Prime) -> Result<Vec<FreeFamily>, TensorError> {
    let xy_alg = TensorAlgebra::new(p, [("x", n), ("y", n + k + 1)])?;
    let x = xy_alg.generator("x")?;
    let y = xy_alg.generator("y")?;
    let xy = bracket(&x, &y)?;
    let xyy = bracket(&xy, &y)?;
    let ad_y = (0..=3).map(|m| ad_power(&x, &y, m)).collect::<Result<Vec<_>, _>>()?;

    let xz_alg = TensorAlgebra::new(p, [("x", n), ("z", 2 * n + k + 1)])?;
    let x2 = xz_alg.generator("x")?;
    let z = xz_alg.generator("z")?;
    let ad_z = (0..=2).map(|m| ad_power(&x2, &z, m)).collect::<Result<Vec<_>, _>>()?;

    Ok(vec![
        FreeFamily { name: "{x, [x,y]}".into(), algebra: xy_alg.clone(), gens: vec![x.clone(), xy.clone()] },
        FreeFamily { name: "{x, [x,y], [[x,y],y]}".into(), algebra: xy_alg.clone(), gens: vec![x, xy, xyy] },
        FreeFamily { name: "{ad^m(y)(x) : m ≤ 3}".into(), algebra: xy_alg, gens: ad_y },
        FreeFamily { name: "{ad^m(z)(x) : m ≤ 2}".into(), algebra: xz_alg, gens: ad_z },
    ])
}
