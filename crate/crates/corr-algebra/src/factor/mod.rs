//! Complete univariate factorization over field towers.
//!
//! Dispatch by tower shape: distinct-degree plus equal-degree splitting
//! over finite fields, lifting from a good prime over the rationals, a
//! norm/resultant reduction to the base over algebraic extensions, and
//! place evaluation with Hensel lifting over function-field steps.
//! Inseparable polynomials are deflated through `y -> y^p`, with the
//! p-th-power dichotomy deciding each deflated factor.

mod finite;
mod function_field;
mod insep;
mod rational;
mod trager;

use crate::error::AlgebraError;
use crate::frobenius::pth_root;
use crate::tower::TowerElem;
use crate::upoly::UniPoly;

/// `unit * prod factors[i].0 ^ factors[i].1` reproduces the input exactly;
/// the factors are monic irreducible, sorted canonically.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub unit: TowerElem,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    /// Re-multiply, for verification.
    pub fn product(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e as usize));
        }
        acc
    }
}

/// Factor a univariate polynomial over its tower. Constants yield an empty
/// factor list.
pub fn factor(f: &UniPoly) -> Result<Factorization, AlgebraError> {
    if f.is_zero() {
        return Ok(Factorization { unit: f.tower().zero(), factors: vec![] });
    }
    let (unit, monic) = f.make_monic();
    let mut factors = factor_monic(&monic)?;
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.render("t").cmp(&b.render("t")))
    });
    Ok(Factorization { unit, factors })
}

/// True when `f` is irreducible over its tower.
pub fn is_irreducible(f: &UniPoly) -> Result<bool, AlgebraError> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let fac = factor(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

fn merge(into: &mut Vec<(UniPoly, u32)>, f: UniPoly, e: u32) {
    for (g, k) in into.iter_mut() {
        if *g == f {
            *k += e;
            return;
        }
    }
    into.push((f, e));
}

pub(crate) fn factor_monic(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>, AlgebraError> {
    let deg = f.degree().expect("nonzero input");
    if deg == 0 {
        return Ok(vec![]);
    }
    if deg == 1 {
        return Ok(vec![(f.clone(), 1)]);
    }
    let p = f.tower().characteristic() as usize;
    let df = f.derivative();
    if p > 0 && df.is_zero() {
        // f = g(y^p): factor the deflation, then decide each factor by the
        // p-th-power dichotomy.
        let g = f.deflate(p).expect("zero derivative implies p-divisible exponents");
        let sub = factor_monic(&g)?;
        let mut out = vec![];
        for (h, m) in sub {
            let (irr, mult) = inflate_irreducible(&h, p)?;
            merge(&mut out, irr, mult * m);
        }
        return Ok(out);
    }
    let c = f.gcd(&df)?;
    if c.degree().unwrap_or(0) == 0 {
        return factor_squarefree_separable(f);
    }
    // f/gcd(f, f') is the product of the distinct separable factors.
    let sep = f.div_exact(&c);
    let hs = factor_squarefree_separable(&sep)?;
    let mut out = vec![];
    let mut residual = f.clone();
    for (h, _) in hs {
        let mut e = 0u32;
        while h.divides(&residual) {
            residual = residual.div_exact(&h);
            e += 1;
        }
        debug_assert!(e >= 1);
        merge(&mut out, h, e);
    }
    if residual.degree().unwrap_or(0) > 0 {
        for (h, e) in factor_monic(&residual)? {
            merge(&mut out, h, e);
        }
    }
    Ok(out)
}

/// For irreducible `h`, decide whether `h(y^p)` is irreducible or the p-th
/// power of the coefficient-root polynomial.
fn inflate_irreducible(h: &UniPoly, p: usize) -> Result<(UniPoly, u32), AlgebraError> {
    let mut roots = Vec::with_capacity(h.coeffs().len());
    for c in h.coeffs() {
        match pth_root(c) {
            Some(r) => roots.push(r),
            None => return Ok((h.inflate(p), 1)),
        }
    }
    Ok((UniPoly::from_coeffs(h.tower(), roots), p as u32))
}

/// Factor a monic squarefree polynomial with nonzero derivative.
fn factor_squarefree_separable(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>, AlgebraError> {
    let tower = f.tower();
    if f.degree().unwrap() == 1 {
        return Ok(vec![(f.clone(), 1)]);
    }
    let steps = tower.num_steps();
    let fs = if steps == 0 {
        match tower.characteristic() {
            0 => rational::factor_squarefree(f)?,
            _ => finite::factor_squarefree(f)?,
        }
    } else if tower.is_step_transcendental(steps - 1) {
        function_field::factor_squarefree_separable(f)?
    } else if tower.num_transcendentals() == 0 && tower.characteristic() > 0 {
        // The tower is a finite field.
        finite::factor_squarefree(f)?
    } else {
        let top_min_poly = tower.step_min_poly(steps - 1).unwrap();
        if top_min_poly.derivative().is_zero() {
            insep::factor_squarefree(f)?
        } else {
            trager::factor_squarefree(f)?
        }
    };
    Ok(fs.into_iter().map(|g| (g, 1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{FieldTower, IrreducibilityPolicy};

    #[test]
    fn factor_reassembles_with_multiplicity() {
        let q = FieldTower::rationals();
        // 6 (t-1)^2 (t^2+1)
        let f = UniPoly::from_i64_coeffs(&q, &[-1, 1])
            .pow(2)
            .mul(&UniPoly::from_i64_coeffs(&q, &[1, 0, 1]))
            .mul_elem(&q.from_i64(6));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.product(), f);
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.unit, q.from_i64(6));
    }

    #[test]
    fn constants_have_empty_factor_list() {
        let q = FieldTower::rationals();
        let fac = factor(&UniPoly::from_i64_coeffs(&q, &[5])).unwrap();
        assert!(fac.factors.is_empty());
        assert_eq!(fac.unit, q.from_i64(5));
    }

    #[test]
    fn inseparable_tower_polynomial() {
        // y^p - s over F_p(s) is irreducible; y^p - s^p splits as (y - s)^p.
        for p in [2u64, 3] {
            let k = FieldTower::prime(p).unwrap().extend_transcendental("s").unwrap();
            let s = k.generator(0);
            let f = UniPoly::monomial(k.one(), p as usize)
                .sub(&UniPoly::constant(s.clone()));
            assert!(is_irreducible(&f).unwrap());
            let g = UniPoly::monomial(k.one(), p as usize)
                .sub(&UniPoly::constant(s.pow(p as i64).unwrap()));
            let fac = factor(&g).unwrap();
            assert_eq!(fac.factors.len(), 1);
            assert_eq!(fac.factors[0].1, p as u32);
            assert_eq!(
                fac.factors[0].0,
                UniPoly::from_coeffs(&k, vec![s.neg(), k.one()])
            );
        }
    }

    #[test]
    fn splits_over_inseparable_extension() {
        // Over L = F_3(s)(g), g^3 = s: the polynomial y^3 - s = (y - g)^3.
        let k = FieldTower::prime(3).unwrap().extend_transcendental("s").unwrap();
        let s = k.generator(0);
        let mp = UniPoly::from_coeffs(&k, vec![s.neg(), k.zero(), k.zero(), k.one()]);
        let l = k.extend_algebraic("g", &mp, IrreducibilityPolicy::Check).unwrap();
        let g = l.generator(1);
        let f = UniPoly::monomial(l.one(), 3).sub(&UniPoly::constant(s.promote(&l).unwrap()));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 3);
        assert_eq!(fac.factors[0].0, UniPoly::from_coeffs(&l, vec![g.neg(), l.one()]));
    }
}
