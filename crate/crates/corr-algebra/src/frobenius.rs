//! Frobenius inverses: p-th roots of tower elements in characteristic p.
//!
//! Supported level shapes: prime fields, transcendental steps (exponent
//! grouping), separable algebraic steps (the powers of `gen^p` form an
//! invertible change of basis), and purely inseparable steps with minimal
//! polynomial `t^(p^e) - a`. Anything else returns `None`, which callers
//! treat as "no root found in this field".

use crate::linalg::Matrix;
use crate::tower::{elem_from_alg_coords, elem_from_frac_parts, FieldTower, TowerElem};
use crate::upoly::UniPoly;

fn is_power_of(mut n: usize, p: usize) -> Option<u32> {
    let mut e = 0;
    while n > 1 {
        if n % p != 0 {
            return None;
        }
        n /= p;
        e += 1;
    }
    Some(e)
}

/// For the top algebraic step, detect the purely inseparable shape
/// `t^(p^e) - a` and return `a`.
fn inseparable_step_constant(tower: &FieldTower) -> Option<TowerElem> {
    let k = tower.num_steps();
    let mp = tower.step_min_poly(k - 1)?;
    let d = mp.degree()?;
    let p = tower.characteristic() as usize;
    is_power_of(d, p)?;
    for i in 1..d {
        if !mp.coeff(i).is_zero() {
            return None;
        }
    }
    Some(mp.coeff(0).neg())
}

/// The unique p-th root of `a`, when one exists in `a`'s own tower.
pub fn pth_root(a: &TowerElem) -> Option<TowerElem> {
    let tower = a.tower().clone();
    let p = tower.characteristic() as usize;
    debug_assert!(p >= 2, "pth_root in characteristic zero");
    if a.is_zero() {
        return Some(a.clone());
    }
    let k = tower.num_steps();
    if k == 0 {
        // x^p = x in F_p.
        return Some(a.clone());
    }
    if tower.is_step_transcendental(k - 1) {
        let (num, den) = a.top_frac_parts();
        // a = (num * den^(p-1)) / den^p, and the root of den^p is den.
        let big = num.mul(&den.pow(p - 1));
        let mut root_coeffs = vec![den.tower().zero(); big.degree().unwrap() / p + 1];
        for (i, c) in big.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i % p != 0 {
                return None;
            }
            root_coeffs[i / p] = pth_root(c)?;
        }
        let root_num = UniPoly::from_coeffs(den.tower(), root_coeffs);
        return elem_from_frac_parts(&tower, &root_num, &den).ok();
    }
    let n = tower.step_degree(k - 1).unwrap();
    let mp = tower.step_min_poly(k - 1).unwrap();
    let parent = tower.prefix(k - 1);
    if !mp.derivative().is_zero() {
        // Separable step: solve sum_i w_i * (gen^p)^i = a over the parent,
        // then take roots of the unique solution.
        let gp = tower.generator(k - 1).pow(p as i64).unwrap();
        let mut m = Matrix::zero(&parent, n, n);
        let mut pw = tower.one();
        for j in 0..n {
            for (i, c) in pw.top_alg_coords().into_iter().enumerate() {
                m.set(i, j, c);
            }
            if j + 1 < n {
                pw = pw.mul(&gp);
            }
        }
        let rhs = a.top_alg_coords();
        let w = m.solve(&rhs)?;
        let mut xs = Vec::with_capacity(n);
        for wi in &w {
            xs.push(pth_root(wi)?);
        }
        return Some(elem_from_alg_coords(&tower, &xs));
    }
    // Purely inseparable step t^q - a0 with q = p^e.
    let a0 = inseparable_step_constant(&tower)?;
    let q = n;
    let qp = q / p;
    let coords = a.top_alg_coords();
    for (j, c) in coords.iter().enumerate() {
        if j % p != 0 && !c.is_zero() {
            return None;
        }
    }
    let mut xs = vec![parent.zero(); q];
    for m in 0..qp {
        let c = &coords[p * m];
        if c.is_zero() {
            continue;
        }
        let vs = frobenius_decompose(c, &a0)?;
        for (l, v) in vs.into_iter().enumerate() {
            xs[m + l * qp] = v;
        }
    }
    Some(elem_from_alg_coords(&tower, &xs))
}

/// Writes `c = sum_l v_l^p * a^l` for `l < p`, returning the roots `v_l`;
/// `c` and `a` share a tower where `a` is not a p-th power.
pub fn frobenius_decompose(c: &TowerElem, a: &TowerElem) -> Option<Vec<TowerElem>> {
    let tower = c.tower().clone();
    let p = tower.characteristic() as usize;
    let k = tower.num_steps();
    if c.is_zero() {
        return Some(vec![tower.zero(); p]);
    }
    if k == 0 {
        // Over F_p every element is a p-th power; the step t^p - a would
        // have been reducible, so valid towers never reach this.
        return None;
    }
    let parent = tower.prefix(k - 1);
    let gen = tower.generator(k - 1);
    if tower.is_step_transcendental(k - 1) {
        let (num, den) = c.top_frac_parts();
        let big = num.mul(&den.pow(p - 1));
        if a == &gen {
            // Group exponents by residue mod p: coefficient of s^(pj + l)
            // contributes a root at degree j of v_l's numerator.
            let mut nums: Vec<Vec<TowerElem>> =
                vec![vec![parent.zero(); big.degree().unwrap() / p + 1]; p];
            for (i, cf) in big.coeffs().iter().enumerate() {
                if cf.is_zero() {
                    continue;
                }
                nums[i % p][i / p] = pth_root(cf)?;
            }
            let mut out = Vec::with_capacity(p);
            for nl in nums {
                let np = UniPoly::from_coeffs(&parent, nl);
                out.push(elem_from_frac_parts(&tower, &np, &den).ok()?);
            }
            return Some(out);
        }
        if let Some(ap) = a.try_restrict(&parent) {
            // a is constant in the top variable: decompose each coefficient
            // one level down.
            let mut nums: Vec<Vec<TowerElem>> =
                vec![vec![parent.zero(); big.degree().unwrap() / p + 1]; p];
            for (i, cf) in big.coeffs().iter().enumerate() {
                if cf.is_zero() {
                    continue;
                }
                if i % p != 0 {
                    return None;
                }
                let sub = frobenius_decompose(cf, &ap)?;
                for (l, v) in sub.into_iter().enumerate() {
                    nums[l][i / p] = v;
                }
            }
            let mut out = Vec::with_capacity(p);
            for nl in nums {
                let np = UniPoly::from_coeffs(&parent, nl);
                out.push(elem_from_frac_parts(&tower, &np, &den).ok()?);
            }
            return Some(out);
        }
        return None;
    }
    // Algebraic top step.
    let n = tower.step_degree(k - 1).unwrap();
    let mp = tower.step_min_poly(k - 1).unwrap();
    let separable = !mp.derivative().is_zero();
    if a == &gen {
        if separable {
            return None;
        }
        // v_l^p = sum_m c_{pm+l} gen^{pm}: assemble and take p-th roots.
        let coords = c.top_alg_coords();
        let mut out = Vec::with_capacity(p);
        for l in 0..p {
            let mut wl = tower.zero();
            let mut m = 0;
            while p * m + l < n {
                let cf = &coords[p * m + l];
                if !cf.is_zero() {
                    let gpow = gen.pow((p * m) as i64).unwrap();
                    wl = wl.add(&cf.promote(&tower).unwrap().mul(&gpow));
                }
                m += 1;
            }
            out.push(pth_root(&wl)?);
        }
        return Some(out);
    }
    let ap = a.try_restrict(&parent)?;
    if separable {
        // Solve M z = coords(c) where M's columns are the coordinates of
        // (gen^p)^i, then decompose each z_i one level down by powers of a.
        let gp = gen.pow(p as i64).unwrap();
        let mut m = Matrix::zero(&parent, n, n);
        let mut pw = tower.one();
        for j in 0..n {
            for (i, cf) in pw.top_alg_coords().into_iter().enumerate() {
                m.set(i, j, cf);
            }
            if j + 1 < n {
                pw = pw.mul(&gp);
            }
        }
        let z = m.solve(&c.top_alg_coords())?;
        let mut per_component = Vec::with_capacity(n);
        for zi in &z {
            per_component.push(frobenius_decompose(zi, &ap)?);
        }
        let mut out = Vec::with_capacity(p);
        for l in 0..p {
            let coords: Vec<TowerElem> =
                per_component.iter().map(|vs| vs[l].clone()).collect();
            out.push(elem_from_alg_coords(&tower, &coords));
        }
        return Some(out);
    }
    // Inseparable step with a living below: would need a double
    // decomposition; not required by any supported tower shape.
    None
}

/// Given a polynomial expected to be `(t - c)^k`, extract `c`; verifies the
/// expansion and returns `None` on mismatch.
pub fn unique_root_of_power(mu: &UniPoly) -> Option<TowerElem> {
    let tower = mu.tower().clone();
    let k = mu.degree()?;
    if k == 0 {
        return None;
    }
    let p = tower.characteristic() as usize;
    let mut nu = mu.clone();
    let mut frobenius_layers = 0u32;
    if p >= 2 {
        while nu.degree().unwrap() % p == 0 {
            match nu.deflate(p) {
                Some(d) => {
                    nu = d;
                    frobenius_layers += 1;
                }
                None => break,
            }
        }
    }
    let m = nu.degree().unwrap();
    if p >= 2 && m % p == 0 {
        return None;
    }
    // nu = (u - C)^m with m invertible: C = -coeff(m-1)/m.
    let minv = tower.from_i64(m as i64).inv().ok()?;
    let cap = nu.coeff(m - 1).neg().mul(&minv);
    let mut c = cap;
    for _ in 0..frobenius_layers {
        c = pth_root(&c)?;
    }
    let lin = UniPoly::from_coeffs(&tower, vec![c.neg(), tower.one()]);
    if lin.pow(k) == *mu {
        Some(c)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::IrreducibilityPolicy;

    #[test]
    fn roots_in_rational_function_field() {
        let k = FieldTower::prime(3).unwrap().extend_transcendental("s").unwrap();
        let s = k.generator(0);
        let cube = s.pow(3).unwrap();
        assert_eq!(pth_root(&cube).unwrap(), s);
        assert!(pth_root(&s).is_none());
        // (s+1)^3 / s^3 has root (s+1)/s.
        let v = s.add(&k.one()).pow(3).unwrap().div(&cube).unwrap();
        assert_eq!(pth_root(&v).unwrap(), s.add(&k.one()).div(&s).unwrap());
    }

    #[test]
    fn roots_in_finite_field() {
        // F_4: the square root of w is w^2 (since (w^2)^2 = w^4 = w).
        let f2 = FieldTower::prime(2).unwrap();
        let mp = UniPoly::from_i64_coeffs(&f2, &[1, 1, 1]);
        let f4 = f2.extend_algebraic("w", &mp, IrreducibilityPolicy::Check).unwrap();
        let w = f4.generator(0);
        let r = pth_root(&w).unwrap();
        assert_eq!(r.mul(&r), w);
    }

    #[test]
    fn roots_across_inseparable_step() {
        // K = F_2(s), L = K[g]/(g^2 - s): the square root of s is g, and
        // s + 1 has root g + 1.
        let k = FieldTower::prime(2).unwrap().extend_transcendental("s").unwrap();
        let s = k.generator(0);
        let mp = UniPoly::from_coeffs(&k, vec![s.neg(), k.zero(), k.one()]);
        let l = k.extend_algebraic("g", &mp, IrreducibilityPolicy::Check).unwrap();
        let g = l.generator(1);
        let s_up = s.promote(&l).unwrap();
        assert_eq!(pth_root(&s_up).unwrap(), g);
        assert_eq!(pth_root(&s_up.add(&l.one())).unwrap(), g.add(&l.one()));
        // g itself has no square root in L.
        assert!(pth_root(&g).is_none());
    }

    #[test]
    fn unique_root_extraction() {
        let q = FieldTower::rationals();
        // (t - 3)^4
        let lin = UniPoly::from_i64_coeffs(&q, &[-3, 1]);
        assert_eq!(unique_root_of_power(&lin.pow(4)).unwrap(), q.from_i64(3));
        // char 2: (t - c)^2 = t^2 + c^2
        let k = FieldTower::prime(2).unwrap().extend_transcendental("s").unwrap();
        let s = k.generator(0);
        let lin = UniPoly::from_coeffs(&k, vec![s.neg(), k.one()]);
        assert_eq!(unique_root_of_power(&lin.pow(2)).unwrap(), s);
        // Not a pure power: t^2 - 3t + 2 = (t-1)(t-2).
        let f = UniPoly::from_i64_coeffs(&q, &[2, -3, 1]);
        assert!(unique_root_of_power(&f).is_none());
    }
}
