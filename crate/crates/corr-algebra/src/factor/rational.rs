//! Factorization over Q: reduce modulo a good prime, Hensel-lift the
//! modular factors, and recombine against a coefficient bound.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::scalar::Scalar;
use crate::tower::{FieldTower, TowerElem};
use crate::upoly::UniPoly;

// ----- integer polynomials -----

type ZPoly = Vec<BigInt>;

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor_ref(m)).collect())
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// Symmetric representative in (-m/2, m/2].
fn zsymm(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor_ref(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial in Z/m[y].
fn zdivrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    assert!(b.last().unwrap().is_one(), "divisor must be monic");
    let mut r = zmod(a, m);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap().clone();
        q[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let v = (&r[k + i] - &c * bc).mod_floor_ref(m);
            r[k + i] = v;
        }
        r = ztrim(r);
    }
    (zmod(&q, m), r)
}

/// Exact division in Z[y]; `None` when not divisible.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    let mut r = ztrim(a.to_vec());
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(b.len()) + 1];
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let (c, rem) = (r.last().unwrap() / lb, r.last().unwrap() % lb);
        if !rem.is_zero() {
            return None;
        }
        q[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let v = &r[k + i] - &c * bc;
            r[k + i] = v;
        }
        r = ztrim(r);
    }
    if r.is_empty() {
        Some(ztrim(q))
    } else {
        None
    }
}

fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = num::integer::gcd(g, c.abs());
    }
    g
}

// ----- conversions -----

fn to_zpoly(f: &UniPoly) -> ZPoly {
    // Clear denominators and strip content.
    let mut den = BigInt::one();
    let rats: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c.to_scalar() {
            Some(Scalar::Rat(r)) => r,
            _ => panic!("rational base expected"),
        })
        .collect();
    for r in &rats {
        den = num::integer::lcm(den, r.denom().clone());
    }
    let ints: ZPoly = rats.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let c = content(&ints);
    if c.is_zero() || c.is_one() {
        return ztrim(ints);
    }
    ztrim(ints.iter().map(|v| v / &c).collect())
}

fn zpoly_to_fp(f: &[BigInt], fp: &FieldTower) -> UniPoly {
    let base = fp.base();
    let coeffs = f
        .iter()
        .map(|c| TowerElem::from_scalar(fp, base.from_bigint(c)))
        .collect();
    UniPoly::from_coeffs(fp, coeffs)
}

fn fp_to_zpoly(f: &UniPoly, p: u64) -> ZPoly {
    f.coeffs()
        .iter()
        .map(|c| match c.to_scalar() {
            Some(Scalar::Fp(v)) => BigInt::from(v),
            _ => panic!("prime field expected"),
        })
        .map(|v| {
            // symmetric representative
            if v.clone() * 2 > BigInt::from(p) {
                v - BigInt::from(p)
            } else {
                v
            }
        })
        .collect()
}

// ----- Hensel lifting -----

/// One quadratic Hensel step: from a factorization and Bezout pair mod m to
/// mod m^2. All of f, g, h are monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic_mod(&zmul(s, &e), h, &m2);
    // g* = g + t e + q g,  h* = h + r
    let g_star = zmod(&zadd(&zadd(&zmul(t, &e), &zmul(&q, g)), g), &m2);
    let h_star = zmod(&zadd(h, &r), &m2);
    // Lift the Bezout identity.
    let b = zmod(&zsub(&zadd(&zmul(s, &g_star), &zmul(t, &h_star)), &[BigInt::one()]), &m2);
    let (c, d) = zdivrem_monic_mod(&zmul(s, &b), &h_star, &m2);
    let s_star = zmod(&zsub(s, &d), &m2);
    let tb = zmul(t, &b);
    let cg = zmul(&c, &g_star);
    let t_star = zmod(&zsub(&zsub(t, &tb), &cg), &m2);
    (g_star, h_star, s_star, t_star)
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

/// Lift the modular factorization of monic `f` from mod p to mod p^(2^j) >=
/// bound, recursively splitting the factor list in halves.
fn hensel_multilift(
    f: &ZPoly,
    factors: &[UniPoly],
    fp: &FieldTower,
    p: u64,
    bound: &BigInt,
) -> Result<Vec<ZPoly>, AlgebraError> {
    if factors.len() == 1 {
        // f is the lift of the single factor.
        let mut m = BigInt::from(p);
        while &m < bound {
            m = &m * &m;
        }
        return Ok(vec![zmod(f, &m)]);
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let mut gm = UniPoly::one(fp);
    for x in left {
        gm = gm.mul(x);
    }
    let mut hm = UniPoly::one(fp);
    for x in right {
        hm = hm.mul(x);
    }
    let (one, s_fp, t_fp) = gm.exgcd(&hm)?;
    assert_eq!(one.degree(), Some(0), "modular factors must be coprime");
    let mut g = zmod(&fp_to_zpoly(&gm, p), &BigInt::from(p));
    let mut h = zmod(&fp_to_zpoly(&hm, p), &BigInt::from(p));
    let mut s = zmod(&fp_to_zpoly(&s_fp, p), &BigInt::from(p));
    let mut t = zmod(&fp_to_zpoly(&t_fp, p), &BigInt::from(p));
    // Make the lifted images monic representatives.
    let mut m = BigInt::from(p);
    while &m < bound {
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    let mut out = hensel_multilift(&g, left, fp, p, bound)?;
    out.extend(hensel_multilift(&h, right, fp, p, bound)?);
    Ok(out)
}

/// Monic squarefree separable input over Q; returns monic irreducible
/// factors.
pub(crate) fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>, AlgebraError> {
    let q = f.tower().clone();
    let fz = to_zpoly(f);
    let n = fz.len() - 1;
    let l = fz.last().unwrap().clone();
    // Monicize: G(z) = l^(n-1) F(z/l).
    let gz: ZPoly = {
        let mut out = Vec::with_capacity(n + 1);
        for (i, c) in fz.iter().enumerate() {
            // coefficient of z^i is c * l^(n-1-i)
            out.push(if i == n { BigInt::one() } else { c * l.pow((n - 1 - i) as u32) });
        }
        ztrim(out)
    };
    // Good prime: G mod p squarefree.
    let primes: &[u64] = &[
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
        191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281,
    ];
    let mut chosen = None;
    for &p in primes {
        let fp = FieldTower::prime(p)?;
        let gp = zpoly_to_fp(&gz, &fp);
        if gp.degree() != Some(n) {
            continue;
        }
        let d = gp.derivative();
        if d.is_zero() {
            continue;
        }
        if gp.gcd(&d)?.degree() == Some(0) {
            chosen = Some((p, fp, gp));
            break;
        }
    }
    let (p, fp, gp) = chosen.expect("a squarefree reduction exists for squarefree input");
    let modular = super::finite::factor_squarefree(&gp)?;
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // Coefficient bound for monic factors of G (Mignotte-style, safe):
    // 2^n * (1 + sum |coeffs|).
    let norm1: BigInt = gz.iter().map(|c| c.abs()).sum::<BigInt>() + BigInt::one();
    let bound: BigInt = (BigInt::one() << n) * norm1 * BigInt::from(2);
    let lifted = hensel_multilift(&gz, &modular, &fp, p, &bound)?;
    let mut modulus = BigInt::from(p);
    while modulus < bound {
        modulus = &modulus * &modulus;
    }
    // Recombine subsets.
    let mut remaining: Vec<ZPoly> = lifted;
    let mut g_current = gz.clone();
    let mut found: Vec<ZPoly> = vec![];
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut advanced = false;
        let indices: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&indices, size) {
            let mut cand = vec![BigInt::one()];
            for &i in &combo {
                cand = zmod(&zmul(&cand, &remaining[i]), &modulus);
            }
            let cand = zsymm(&cand, &modulus);
            if let Some(rest) = zdiv_exact(&g_current, &cand) {
                found.push(cand);
                g_current = rest;
                let mut keep = vec![];
                for (i, fpoly) in remaining.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(fpoly);
                    }
                }
                remaining = keep;
                advanced = true;
                break;
            }
        }
        if !advanced {
            size += 1;
        }
    }
    if g_current.len() > 1 {
        found.push(g_current);
    }
    // Map monic factors of G back to monic rational factors of f:
    // h_f(y) = h(l y) / l^(deg h).
    let mut out = vec![];
    for h in found {
        let dh = h.len() - 1;
        let coeffs: Vec<TowerElem> = h
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let num = c * l.pow(i as u32);
                let den = l.pow(dh as u32);
                TowerElem::from_scalar(
                    &q,
                    Scalar::Rat(BigRational::new(num, den.clone())),
                )
            })
            .collect();
        out.push(UniPoly::from_coeffs(&q, coeffs));
    }
    Ok(out)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor;

    #[test]
    fn quadratics_over_q() {
        let q = FieldTower::rationals();
        // t^2 - 2 irreducible (rational root test: ±1, ±2 fail).
        let f = UniPoly::from_i64_coeffs(&q, &[-2, 0, 1]);
        for c in [1i64, -1, 2, -2] {
            assert!(!f.eval(&q.from_i64(c)).is_zero());
        }
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        // t^2 - 1 = (t-1)(t+1).
        let g = UniPoly::from_i64_coeffs(&q, &[-1, 0, 1]);
        let fac = factor(&g).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), g);
    }

    #[test]
    fn cyclotomic_like_product() {
        let q = FieldTower::rationals();
        // (t^2+1)(t^2+t+1)(t-5)
        let f = UniPoly::from_i64_coeffs(&q, &[1, 0, 1])
            .mul(&UniPoly::from_i64_coeffs(&q, &[1, 1, 1]))
            .mul(&UniPoly::from_i64_coeffs(&q, &[-5, 1]));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn non_monic_rational_coefficients() {
        let q = FieldTower::rationals();
        // (2t + 1)(3t - 1) with a rational unit in front.
        let f = UniPoly::from_i64_coeffs(&q, &[1, 2])
            .mul(&UniPoly::from_i64_coeffs(&q, &[-1, 3]));
        let half = q.from_i64(1).div(&q.from_i64(2)).unwrap();
        let f = f.mul_elem(&half);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), f);
        for (g, _) in &fac.factors {
            assert!(g.is_monic());
        }
    }

    #[test]
    fn degree_six_with_recombination() {
        let q = FieldTower::rationals();
        // (t^2 - 2)(t^2 - 3)(t^2 - 6): mod small primes these often split
        // differently, forcing genuine recombination.
        let f = UniPoly::from_i64_coeffs(&q, &[-2, 0, 1])
            .mul(&UniPoly::from_i64_coeffs(&q, &[-3, 0, 1]))
            .mul(&UniPoly::from_i64_coeffs(&q, &[-6, 0, 1]));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.product(), f);
    }
}
