//! Factorization over an algebraic extension by norm/resultant reduction
//! to the base: shift by a multiple of the generator until the norm is
//! squarefree, factor the norm one level down, and pull factors back by
//! gcd.

use crate::elems::small_elements;
use crate::error::AlgebraError;
use crate::tower::{FieldTower, TowerElem};
use crate::upoly::UniPoly;

/// Norm of `g` from L = K(gen) down to K: `Res_x(min_poly(x), g_hat(x, y))`
/// where `g_hat` writes the coefficients of `g` as polynomials in the
/// generator. Computed by evaluating y and interpolating, which keeps every
/// resultant univariate over K.
fn norm_poly(g: &UniPoly, parent: &FieldTower) -> Result<UniPoly, AlgebraError> {
    let l = g.tower().clone();
    let k_steps = l.num_steps();
    let mp = l.step_min_poly(k_steps - 1).unwrap();
    let deg_step = l.step_degree(k_steps - 1).unwrap();
    // g_hat as polynomials in y, indexed by the x-power:
    // coefficient of x^i is sum_j coords(g_j)[i] y^j.
    let mut xcoeffs: Vec<UniPoly> = vec![UniPoly::zero(parent); deg_step];
    for (j, cj) in g.coeffs().iter().enumerate() {
        for (i, c) in cj.top_alg_coords().into_iter().enumerate() {
            if !c.is_zero() {
                xcoeffs[i] = xcoeffs[i].add(&UniPoly::monomial(c, j));
            }
        }
    }
    let top_x = match xcoeffs.iter().rposition(|c| !c.is_zero()) {
        Some(i) => i,
        None => return Ok(UniPoly::zero(parent)),
    };
    let lc_x = xcoeffs[top_x].clone();
    // Degree bound of the norm in y.
    let m = mp.degree().unwrap() * g.degree().unwrap_or(0);
    // Evaluation points where the x-degree does not drop.
    let mut points: Vec<(TowerElem, TowerElem)> = vec![];
    for c in small_elements(parent, 8 * (m + 2) + 16) {
        if points.len() > m {
            break;
        }
        if lc_x.eval(&c).is_zero() {
            continue;
        }
        let gc = UniPoly::from_coeffs(parent, xcoeffs.iter().map(|p| p.eval(&c)).collect());
        let r = mp.resultant(&gc)?;
        points.push((c, r));
    }
    assert!(points.len() > m, "not enough evaluation points for the norm");
    Ok(interpolate(parent, &points))
}

/// Lagrange interpolation through distinct points.
fn interpolate(tower: &FieldTower, points: &[(TowerElem, TowerElem)]) -> UniPoly {
    let mut acc = UniPoly::zero(tower);
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one(tower);
        let mut denom = tower.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::from_coeffs(tower, vec![xj.neg(), tower.one()]));
            denom = denom.mul(&xi.sub(xj));
        }
        acc = acc.add(&basis.mul_elem(&yi.div(&denom).expect("distinct points")));
    }
    acc
}

/// Monic squarefree separable input over a tower with a separable algebraic
/// top step; returns monic irreducible factors.
pub(crate) fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>, AlgebraError> {
    let l = f.tower().clone();
    let parent = l.prefix(l.num_steps() - 1);
    let gen = l.generator(l.num_steps() - 1);
    let shift_budget = 8 * (f.degree().unwrap() + 2) * (l.step_degree(l.num_steps() - 1).unwrap() + 2);
    for s in small_elements(&parent, shift_budget) {
        // g(y) = f(y - s*gen)
        let s_l = s.promote(&l)?;
        let shift = UniPoly::from_coeffs(&l, vec![s_l.mul(&gen).neg(), l.one()]);
        let g = f.compose(&shift);
        let norm = norm_poly(&g, &parent)?;
        if norm.is_zero() {
            continue;
        }
        let dn = norm.derivative();
        if dn.is_zero() || norm.gcd(&dn)?.degree() != Some(0) {
            continue;
        }
        let fac = super::factor_monic(&norm.make_monic().1)?;
        if fac.len() == 1 {
            return Ok(vec![f.clone()]);
        }
        let mut out = vec![];
        let unshift = UniPoly::from_coeffs(&l, vec![s_l.mul(&gen), l.one()]);
        let mut check = UniPoly::one(&l);
        for (nf, e) in &fac {
            debug_assert_eq!(*e, 1, "squarefree norm must factor without multiplicity");
            let nf_l = nf.promote(&l)?;
            let h = g.gcd(&nf_l)?;
            if h.degree().unwrap_or(0) == 0 {
                continue;
            }
            let piece = h.compose(&unshift);
            check = check.mul(&piece);
            out.push(piece);
        }
        assert_eq!(check, *f, "factor pullback must reassemble the input");
        return Ok(out);
    }
    Err(AlgebraError::UnsupportedTower(
        "no shift made the norm squarefree".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor;
    use crate::tower::IrreducibilityPolicy;

    fn q_sqrt2() -> FieldTower {
        let q = FieldTower::rationals();
        let mp = UniPoly::from_i64_coeffs(&q, &[-2, 0, 1]);
        q.extend_algebraic("r2", &mp, IrreducibilityPolicy::Check).unwrap()
    }

    #[test]
    fn splits_t2_minus_2_over_q_sqrt2() {
        // t^2 - 2 = (t - r2)(t + r2): verify both roots by substitution.
        let l = q_sqrt2();
        let f = UniPoly::from_i64_coeffs(&l, &[-2, 0, 1]);
        let r2 = l.generator(0);
        assert!(f.eval(&r2).is_zero());
        assert!(f.eval(&r2.neg()).is_zero());
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn irreducible_stays_irreducible() {
        // t^2 - 3 stays irreducible over Q(sqrt 2).
        let l = q_sqrt2();
        let f = UniPoly::from_i64_coeffs(&l, &[-3, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
    }

    #[test]
    fn gaussian_rationals() {
        // Over Q(i): t^2 + 1 splits, t^2 + t + 1 does not.
        let q = FieldTower::rationals();
        let mp = UniPoly::from_i64_coeffs(&q, &[1, 0, 1]);
        let l = q.extend_algebraic("i", &mp, IrreducibilityPolicy::Check).unwrap();
        let f = UniPoly::from_i64_coeffs(&l, &[1, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        let g = UniPoly::from_i64_coeffs(&l, &[1, 1, 1]);
        assert_eq!(factor(&g).unwrap().factors.len(), 1);
    }

    #[test]
    fn nested_tower_factors() {
        // Over Q(sqrt2)(sqrt3): t^2 - 6 splits as (t - sqrt2 sqrt3)(t + ...).
        let l = q_sqrt2();
        let mp = UniPoly::from_i64_coeffs(&l, &[-3, 0, 1]);
        let m = l.extend_algebraic("r3", &mp, IrreducibilityPolicy::Check).unwrap();
        let f = UniPoly::from_i64_coeffs(&m, &[-6, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), f);
        let root = m.generator(0).mul(&m.generator(1));
        assert!(f.eval(&root).is_zero());
    }
}
