//! Distinct-degree and equal-degree factorization over finite fields
//! (any tower that is a finite extension of F_p).

use num::bigint::BigUint;
use num::traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::tower::{FieldTower, TowerElem};
use crate::upoly::UniPoly;

fn field_size(tower: &FieldTower) -> BigUint {
    let p = BigUint::from(tower.characteristic());
    let mut deg = 1usize;
    for i in 0..tower.num_steps() {
        deg *= tower.step_degree(i).expect("finite tower");
    }
    p.pow(deg as u32)
}

fn pow_mod(base: &UniPoly, e: &BigUint, modulus: &UniPoly) -> Result<UniPoly, AlgebraError> {
    let tower = base.tower();
    let mut acc = UniPoly::one(tower);
    let mut b = base.rem(modulus)?;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = acc.mul(&b).rem(modulus)?;
        }
        if i + 1 < bits {
            b = b.mul(&b).rem(modulus)?;
        }
    }
    Ok(acc)
}

fn random_elem(tower: &FieldTower, rng: &mut impl Rng) -> TowerElem {
    let p = tower.characteristic();
    let k = tower.num_steps();
    if k == 0 {
        return tower.from_i64(rng.gen_range(0..p) as i64);
    }
    let parent = tower.prefix(k - 1);
    let d = tower.step_degree(k - 1).expect("finite tower");
    let g = tower.generator(k - 1);
    let mut acc = tower.zero();
    let mut gp = tower.one();
    for i in 0..d {
        let c = random_elem(&parent, rng).promote(tower).unwrap();
        acc = acc.add(&c.mul(&gp));
        if i + 1 < d {
            gp = gp.mul(&g);
        }
    }
    acc
}

fn random_poly(tower: &FieldTower, deg_below: usize, rng: &mut impl Rng) -> UniPoly {
    let coeffs = (0..deg_below).map(|_| random_elem(tower, rng)).collect();
    UniPoly::from_coeffs(tower, coeffs)
}

/// Monic squarefree input; returns the monic irreducible factors.
pub(crate) fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>, AlgebraError> {
    let tower = f.tower().clone();
    let q = field_size(&tower);
    let x = UniPoly::var(&tower);
    let mut out = vec![];
    // Distinct-degree split.
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            out.push((rest.clone(), rest.degree().unwrap()));
            break;
        }
        h = pow_mod(&h, &q, &rest)?;
        let g = h.sub(&x).gcd(&rest)?;
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            rest = rest.div_exact(&g);
            h = h.rem(&rest)?;
        }
    }
    // Equal-degree split of each part.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let mut factors = vec![];
    for (part, d) in out {
        edf(&part, d, &q, &mut factors, &mut rng)?;
    }
    Ok(factors)
}

fn edf(
    g: &UniPoly,
    d: usize,
    q: &BigUint,
    out: &mut Vec<UniPoly>,
    rng: &mut ChaCha8Rng,
) -> Result<(), AlgebraError> {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.clone());
        return Ok(());
    }
    let tower = g.tower().clone();
    let p = tower.characteristic();
    loop {
        let a = random_poly(&tower, n, rng);
        if a.degree().is_none() {
            continue;
        }
        let split = if p == 2 {
            // Absolute trace over F_2: a + a^2 + a^4 + ..., one term per
            // F_2-dimension of the degree-d residue field.
            let mut t = a.rem(g)?;
            let mut term = t.clone();
            let total = trace_len(q, d);
            for _ in 1..total {
                term = term.mul(&term).rem(g)?;
                t = t.add(&term);
            }
            t
        } else {
            // a^((q^d - 1)/2) - 1
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = pow_mod(&a, &e, g)?;
            b.sub(&UniPoly::one(&tower))
        };
        let h = split.gcd(g)?;
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < n {
            edf(&h, d, q, out, rng)?;
            edf(&g.div_exact(&h), d, q, out, rng)?;
            return Ok(());
        }
    }
}

/// log2 of q^d, i.e. the F_2-dimension of the degree-d residue fields.
fn trace_len(q: &BigUint, d: usize) -> usize {
    ((q.bits() - 1) as usize) * d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor;
    use crate::tower::IrreducibilityPolicy;

    #[test]
    fn roots_in_f5() {
        // t^2 + 1 = (t + 2)(t + 3) over F_5; oracle: brute-force roots.
        let f5 = FieldTower::prime(5).unwrap();
        let f = UniPoly::from_i64_coeffs(&f5, &[1, 0, 1]);
        let mut roots = vec![];
        for c in 0..5 {
            if f.eval(&f5.from_i64(c)).is_zero() {
                roots.push(c);
            }
        }
        assert_eq!(roots, vec![2, 3]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), f);
        for (g, e) in &fac.factors {
            assert_eq!(*e, 1);
            assert_eq!(g.degree(), Some(1));
            assert!(f.eval(&g.coeff(0).neg()).is_zero());
        }
    }

    #[test]
    fn irreducible_detected_by_exhaustion() {
        // t^2 + t + 1 has no roots in F_5 and is irreducible there.
        let f5 = FieldTower::prime(5).unwrap();
        let f = UniPoly::from_i64_coeffs(&f5, &[1, 1, 1]);
        for c in 0..5 {
            assert!(!f.eval(&f5.from_i64(c)).is_zero());
        }
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
    }

    #[test]
    fn char2_splitting() {
        // t^2 + t = t(t+1) over F_2, and a degree-3 irreducible stays put.
        let f2 = FieldTower::prime(2).unwrap();
        let f = UniPoly::from_i64_coeffs(&f2, &[0, 1, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        let g = UniPoly::from_i64_coeffs(&f2, &[1, 1, 0, 1]); // t^3 + t + 1
        assert_eq!(factor(&g).unwrap().factors.len(), 1);
    }

    #[test]
    fn factor_over_extension_field() {
        // Over F_4 = F_2(w): t^2 + t + 1 = (t + w)(t + w^2).
        let f2 = FieldTower::prime(2).unwrap();
        let mp = UniPoly::from_i64_coeffs(&f2, &[1, 1, 1]);
        let f4 = f2.extend_algebraic("w", &mp, IrreducibilityPolicy::Check).unwrap();
        let f = UniPoly::from_i64_coeffs(&f4, &[1, 1, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn deep_finite_field_splits_completely() {
        // F_9 = F_3(w), w^2 + 1 = 0: t^4 - 1 splits into linear factors
        // over F_9 wherever its roots lie in F_9 (all 4th roots of unity do:
        // |F_9^*| = 8).
        let f3 = FieldTower::prime(3).unwrap();
        let mp = UniPoly::from_i64_coeffs(&f3, &[1, 0, 1]);
        let f9 = f3.extend_algebraic("w", &mp, IrreducibilityPolicy::Check).unwrap();
        let f = UniPoly::from_i64_coeffs(&f9, &[-1, 0, 0, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 4);
        assert!(fac.factors.iter().all(|(g, _)| g.degree() == Some(1)));
        assert_eq!(fac.product(), f);
    }
}
