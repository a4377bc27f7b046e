//! Factorization over purely inseparable towers `F_p(s^(1/p^E))`: such a
//! tower is isomorphic to a rational function field by sending the top
//! generator to a fresh variable, so factor there and map back.

use crate::error::AlgebraError;
use crate::tower::{FieldTower, TowerElem};
use crate::upoly::UniPoly;

struct InsepIso {
    source: FieldTower,
    target: FieldTower,
    /// Image of each source step generator in the target.
    images: Vec<TowerElem>,
}

impl InsepIso {
    /// Recognize the shape [F_p; transcendental; steps t^(p^e) - (previous
    /// generator)] and build the isomorphism onto F_p(x).
    fn detect(tower: &FieldTower) -> Result<InsepIso, AlgebraError> {
        let p = tower.characteristic();
        let unsupported =
            |msg: &str| AlgebraError::UnsupportedTower(format!("inseparable tower: {msg}"));
        if p == 0 {
            return Err(unsupported("characteristic zero"));
        }
        let k = tower.num_steps();
        if k == 0 || !tower.is_step_transcendental(0) || tower.num_transcendentals() != 1 {
            return Err(unsupported("expected exactly one transcendental below the chain"));
        }
        // Each algebraic step must be t^(p^e) - (generator below).
        let mut exps = vec![0u32];
        for i in 1..k {
            let mp = tower.step_min_poly(i).unwrap();
            let d = mp.degree().unwrap();
            let mut e = 0u32;
            let mut n = d;
            while n > 1 && n % p as usize == 0 {
                n /= p as usize;
                e += 1;
            }
            if n != 1 || e == 0 {
                return Err(unsupported("step degree is not a power of p"));
            }
            for j in 1..d {
                if !mp.coeff(j).is_zero() {
                    return Err(unsupported("step is not of the form t^q - a"));
                }
            }
            let prefix = tower.prefix(i);
            let below = prefix.generator(i - 1);
            if mp.coeff(0).neg() != below {
                return Err(unsupported("step constant is not the previous generator"));
            }
            exps.push(exps.last().unwrap() + e);
        }
        let total = *exps.last().unwrap();
        let target = FieldTower::new(tower.base()).extend_transcendental("~x").unwrap();
        let x = target.generator(0);
        let images = (0..k)
            .map(|i| {
                let e = total - exps[i];
                x.pow((p as i64).pow(e)).unwrap()
            })
            .collect();
        Ok(InsepIso { source: tower.clone(), target, images })
    }

    fn forward(&self, e: &TowerElem) -> TowerElem {
        self.fwd_level(e, self.source.num_steps())
    }

    fn fwd_level(&self, e: &TowerElem, level: usize) -> TowerElem {
        if level == 0 {
            return TowerElem::from_scalar(&self.target, e.to_scalar().unwrap());
        }
        let img = &self.images[level - 1];
        if self.source.is_step_transcendental(level - 1) {
            let (num, den) = e.top_frac_parts();
            let ev = |poly: &UniPoly| -> TowerElem {
                let mut acc = self.target.zero();
                for c in poly.coeffs().iter().rev() {
                    let ct = TowerElem::from_scalar(&self.target, c.to_scalar().unwrap());
                    acc = acc.mul(img).add(&ct);
                }
                acc
            };
            return ev(&num).div(&ev(&den)).expect("denominator maps to nonzero");
        }
        let coords = e.top_alg_coords();
        let mut acc = self.target.zero();
        for c in coords.iter().rev() {
            acc = acc.mul(img).add(&self.fwd_level(c, level - 1));
        }
        acc
    }

    fn backward(&self, e: &TowerElem) -> TowerElem {
        let top = self.source.generator(self.source.num_steps() - 1);
        let (num, den) = e.top_frac_parts();
        let ev = |poly: &UniPoly| -> TowerElem {
            let mut acc = self.source.zero();
            for c in poly.coeffs().iter().rev() {
                let cs = TowerElem::from_scalar(&self.source, c.to_scalar().unwrap());
                acc = acc.mul(&top).add(&cs);
            }
            acc
        };
        ev(&num).div(&ev(&den)).expect("denominator maps to nonzero")
    }
}

/// Monic squarefree input over a purely inseparable tower.
pub(crate) fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>, AlgebraError> {
    let iso = InsepIso::detect(f.tower())?;
    let ft = f.map_coeffs(&iso.target, |c| iso.forward(c));
    let sub = super::factor_monic(&ft)?;
    let mut out = vec![];
    for (g, e) in sub {
        assert_eq!(e, 1, "squarefree input stays squarefree under isomorphism");
        out.push(g.map_coeffs(&iso.source, |c| iso.backward(c)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{factor, is_irreducible};
    use crate::tower::IrreducibilityPolicy;

    fn insep_tower(p: u64) -> FieldTower {
        let k = FieldTower::prime(p).unwrap().extend_transcendental("s").unwrap();
        let s = k.generator(0);
        let mut mp_coeffs = vec![s.neg()];
        for _ in 0..p {
            mp_coeffs.push(k.zero());
        }
        *mp_coeffs.last_mut().unwrap() = k.one();
        k.extend_algebraic("g", &UniPoly::from_coeffs(&k, mp_coeffs), IrreducibilityPolicy::Check)
            .unwrap()
    }

    #[test]
    fn iso_roundtrip() {
        let l = insep_tower(3);
        let iso = InsepIso::detect(&l).unwrap();
        let g = l.generator(1);
        let s = l.generator(0);
        for e in [g.clone(), s.clone(), g.add(&s).mul(&g), s.inv().unwrap().add(&g)] {
            let fwd = iso.forward(&e);
            assert_eq!(iso.backward(&fwd), e);
        }
        // s maps to x^3.
        let x = iso.target.generator(0);
        assert_eq!(iso.forward(&s), x.pow(3).unwrap());
    }

    #[test]
    fn separable_polynomial_over_inseparable_base() {
        // Over L = F_3(s^(1/3)): z^2 - g splits iff g is a square there;
        // g = x under the iso, and x is not a square, so irreducible.
        let l = insep_tower(3);
        let g = l.generator(1);
        let f = UniPoly::from_coeffs(&l, vec![g.neg(), l.zero(), l.one()]);
        assert!(is_irreducible(&f).unwrap());
        // z^2 - g^2 splits.
        let h = UniPoly::from_coeffs(&l, vec![g.mul(&g).neg(), l.zero(), l.one()]);
        let fac = factor(&h).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), h);
    }

    #[test]
    fn second_inseparable_layer() {
        // Adjoin h with h^2 = g over F_2(s^(1/2)): the degree-4 tower over
        // F_2(s). Then z^2 - s splits as (z - g)^2 once g is present.
        let l = insep_tower(2);
        let g = l.generator(1);
        let mp = UniPoly::from_coeffs(&l, vec![g.neg(), l.zero(), l.one()]);
        let m = l.extend_algebraic("h", &mp, IrreducibilityPolicy::Check).unwrap();
        let s = m.generator(0);
        let f = UniPoly::from_coeffs(&m, vec![s.neg(), m.zero(), m.one()]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 2);
        assert_eq!(
            fac.factors[0].0,
            UniPoly::from_coeffs(&m, vec![m.generator(1).neg(), m.one()])
        );
    }
}
