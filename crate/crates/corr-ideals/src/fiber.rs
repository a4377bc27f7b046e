//! Fiber extraction: substitute a point for the first block of variables,
//! and the generic-finiteness certificate over a function field.

use corr_algebra::TowerElem;

use crate::error::IdealError;
use crate::groebner::{buchberger, is_zero_dimensional};
use crate::ring::{MultiPoly, PolyRing};
use crate::TermOrder;

/// Substitute coordinates (in an extension L of the coefficient field) for
/// the variables listed in `block`, re-presenting the generators over L in
/// the remaining variables.
pub fn fiber_ideal(
    gens: &[MultiPoly],
    block: &[usize],
    point: &[TowerElem],
    target: &PolyRing,
) -> Vec<MultiPoly> {
    assert_eq!(block.len(), point.len());
    let assignments: Vec<(usize, TowerElem)> =
        block.iter().copied().zip(point.iter().cloned()).collect();
    gens.iter()
        .map(|g| g.substitute(&assignments, target))
        .filter(|g| !g.is_zero())
        .collect()
}

/// Certify generic finiteness of the projection onto the first `split`
/// variables: pass to the function field of that block (the variables
/// become tower transcendentals) and test zero-dimensionality of the
/// remaining ideal. Optional closed test points probe quasi-finiteness on
/// strata.
pub fn finite_over_first_block(
    gens: &[MultiPoly],
    split: usize,
    test_points: &[Vec<TowerElem>],
) -> Result<bool, IdealError> {
    let Some(first) = gens.first() else {
        return Ok(false);
    };
    let ring = first.ring().clone();
    let base = ring.tower().clone();
    let vars = ring.vars();
    let mut kx = base.clone();
    for v in vars.iter().take(split) {
        kx = kx.extend_transcendental(v)?;
    }
    let generic: Vec<TowerElem> =
        (base.num_steps()..kx.num_steps()).map(|i| kx.generator(i)).collect();
    let target = PolyRing::new(&kx, &vars[split..]);
    let block: Vec<usize> = (0..split).collect();
    let fib = fiber_ideal(gens, &block, &generic, &target);
    if fib.is_empty() {
        // The fiber over the generic point is all of affine space.
        return Ok(target.num_vars() == 0);
    }
    let gb = buchberger(&fib, TermOrder::DegRevLex)?;
    if !is_zero_dimensional(&gb, TermOrder::DegRevLex) {
        return Ok(false);
    }
    // Probe user-supplied closed points of the base block.
    for pt in test_points {
        assert_eq!(pt.len(), split);
        let l = pt.first().map(|e| e.tower().clone()).unwrap_or_else(|| base.clone());
        let t = PolyRing::new(&l, &vars[split..]);
        let fib = fiber_ideal(gens, &block, pt, &t);
        if fib.is_empty() {
            if t.num_vars() > 0 {
                return Ok(false);
            }
            continue;
        }
        let gb = buchberger(&fib, TermOrder::DegRevLex)?;
        if !is_zero_dimensional(&gb, TermOrder::DegRevLex) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use corr_algebra::FieldTower;

    #[test]
    fn double_cover_is_finite() {
        // V(y^2 - x) over the x-line.
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let f = r.var(1).pow(2).sub(&r.var(0));
        assert!(finite_over_first_block(&[f], 1, &[]).unwrap());
    }

    #[test]
    fn vertical_line_is_not_finite() {
        // V(x) in the (x, y)-plane over the x-line: the fiber over x = 0 is
        // a line; generically the fiber is empty but the certificate fails
        // at the supplied test point.
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let f = r.var(0);
        // Generic fiber: substituting a transcendental x makes the ideal
        // <x> = <1>, zero-dimensional (empty); the test point x = 0
        // exposes the vertical line.
        assert!(!finite_over_first_block(&[f], 1, &[vec![q.from_i64(0)]]).unwrap());
    }

    #[test]
    fn graph_is_finite() {
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let f = r.var(1).sub(&r.var(0).pow(3));
        let pts = vec![vec![q.from_i64(0)], vec![q.from_i64(2)]];
        assert!(finite_over_first_block(&[f], 1, &pts).unwrap());
    }

    #[test]
    fn fiber_of_parabola() {
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let f = r.var(1).pow(2).sub(&r.var(0));
        let t = PolyRing::new(&q, &["y"]);
        let fib = fiber_ideal(&[f], &[0], &[q.from_i64(2)], &t);
        assert_eq!(fib.len(), 1);
        assert_eq!(fib[0].render(), "y^2 + -2");
    }
}
